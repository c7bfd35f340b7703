// Copyright 2026 The scanbim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "oracles.hpp"
#include "scanbim/columns.hpp"
#include "scanbim/error.hpp"

#include <doctest.h>

#include <random>

using namespace scanbim;

namespace {

std::vector<Point3> plane_patch(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0, 1);
  std::vector<Point3> out;
  for (std::size_t i = 0; i < n; ++i) out.emplace_back(u(rng), 0.0, 3 * u(rng));
  return out;
}

}  // namespace

TEST_CASE("column clustering") {
  std::mt19937_64 rng(1);
  auto pts = oracle::cylinder_shell(Point3(0, 0, 0), 0.25, 3, 1500, rng);
  const auto b = oracle::box_shell(Point3(4, 0, 1.5), 0.4, 0.4, 3, 0, 1500, rng);
  pts.insert(pts.end(), b.begin(), b.end());
  CHECK(cluster_columns(pts, 0.2, 5, 100).size() == 2);

  std::vector<Point3> speck;
  for (int i = 0; i < 30; ++i) speck.emplace_back(0.01 * i, 0, 0);
  CHECK(cluster_columns(speck, 0.2, 5, 100).empty());
  CHECK(cluster_columns(std::vector<Point3>{}, 0.2, 5, 100).empty());
}

TEST_CASE("shape classification") {
  std::mt19937_64 rng(2);
  const auto cyl = oracle::cylinder_shell(Point3::Zero(), 0.3, 3, 3000, rng);
  CHECK(classify_shape(cyl, 30, 0.5) == ColumnShape::Round);
  const auto box = oracle::box_shell(Point3(0, 0, 1.5), 0.4, 0.4, 3, 0, 2500, rng);
  CHECK(classify_shape(box, 30, 0.5) == ColumnShape::Rectangular);
  std::vector<Point3> flat;
  for (int i = 0; i < 40; ++i)
    for (int j = 0; j < 40; ++j) flat.emplace_back(0.02 * i, 0.02 * j, 0.0);
  CHECK(curvature_statistics(flat, 30).mean == doctest::Approx(0.0));
  CHECK(classify_shape(flat, 30, 0.5) == ColumnShape::Rectangular);
}

TEST_CASE("shape classification does not depend on density") {
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    std::mt19937_64 rng(seed);
    for (std::size_t n : {1500u, 3000u}) {
      CHECK(classify_shape(oracle::cylinder_shell(Point3::Zero(), 0.3, 3, n, rng), 30, 0.5) == ColumnShape::Round);
      CHECK(classify_shape(oracle::box_shell(Point3::Zero(), 0.4, 0.5, 3, 0.3, n, rng), 30, 0.5) ==
            ColumnShape::Rectangular);
    }
  }
}

TEST_CASE("curvature statistics are the sample mean and population deviation") {
  std::mt19937_64 rng(3);
  const auto pts = oracle::cylinder_shell(Point3::Zero(), 0.3, 1, 400, rng);
  double mean = 0, var = 0;
  std::vector<double> c;
  for (std::size_t i = 0; i < pts.size(); ++i) c.push_back(oracle::curvature(pts, i, 20));
  for (double v : c) mean += v;
  mean /= static_cast<double>(c.size());
  for (double v : c) var += (v - mean) * (v - mean);
  const auto stats = curvature_statistics(pts, 20);
  CHECK(stats.mean == doctest::Approx(mean).epsilon(1e-9));
  CHECK(stats.stddev == doctest::Approx(std::sqrt(var / static_cast<double>(c.size()))).epsilon(1e-9));
}

TEST_CASE("circle through three points") {
  Circle c;
  REQUIRE(circle_through(Vec2(1, 0), Vec2(0, 1), Vec2(-1, 0), c));
  CHECK(c.center.norm() < 1e-12);
  CHECK(c.radius == doctest::Approx(1.0));
  CHECK_FALSE(circle_through(Vec2(0, 0), Vec2(1, 1), Vec2(2, 2), c));
}

TEST_CASE("cylinder fit on a clean shell") {
  std::mt19937_64 rng(4);
  const Point3 base(1.5, -2.0, 0.0);
  const auto pts = oracle::cylinder_shell(base, 0.30, 3, 3000, rng);
  const Cylinder c = fit_cylinder_ransac(pts, 0.02, 500, 9);
  CHECK(c.radius >= 0.297);
  CHECK(c.radius <= 0.303);
  CHECK((c.base_center.head<2>() - base.head<2>()).norm() < 0.005);
  CHECK(c.height == doctest::Approx(3.0).epsilon(0.01));
}

TEST_CASE("cylinder fit tolerates uniform noise") {
  std::mt19937_64 rng(5);
  auto pts = oracle::cylinder_shell(Point3::Zero(), 0.30, 3, 2400, rng);
  std::uniform_real_distribution<double> u(-0.6, 0.6), uz(0, 3);
  for (int i = 0; i < 600; ++i) pts.emplace_back(u(rng), u(rng), uz(rng));
  const Cylinder c = fit_cylinder_ransac(pts, 0.02, 500, 3);
  CHECK(std::abs(c.radius - 0.30) / 0.30 < 0.02);
}

TEST_CASE("cylinder fit fails on a flat cluster") {
  std::mt19937_64 rng(6);
  const auto flat = plane_patch(1000, rng);
  // Nearly collinear in XY: circles either explode in radius or miss half the points.
  std::vector<Point3> noisy = flat;
  std::normal_distribution<double> g(0, 0.05);
  for (auto& p : noisy) p.y() += g(rng);
  try {
    fit_cylinder_ransac(noisy, 0.02, 500, 1);
    FAIL("expected FitFailed");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::FitFailed);
  }
}

TEST_CASE("cylinder fit is reproducible and the refit does not worsen the residual") {
  std::mt19937_64 rng(7);
  auto pts = oracle::cylinder_shell(Point3(0.2, 0.1, 0), 0.4, 2, 1500, rng);
  std::normal_distribution<double> g(0, 0.004);
  for (auto& p : pts) p += Point3(g(rng), g(rng), 0);
  const auto a = fit_cylinder_ransac_detailed(pts, 0.02, 300, 11);
  const auto b = fit_cylinder_ransac_detailed(pts, 0.02, 300, 11);
  CHECK(a.cylinder == b.cylinder);
  CHECK(a.rms_after_refit <= a.rms_before_refit);
}

TEST_CASE("rectangular column boxes") {
  std::mt19937_64 rng(8);
  const auto box = oracle::box_shell(Point3(1, 1, 1.5), 0.6, 0.4, 3, 0, 3000, rng);
  const Hobb h = fit_rect_column(box);
  CHECK(std::abs(h.length - 0.6) < 0.005);
  CHECK(std::abs(h.width - 0.4) < 0.005);

  const auto rot = oracle::box_shell(Point3(1, 1, 1.5), 0.6, 0.4, 3, deg_to_rad(30), 3000, rng);
  const Hobb r = fit_rect_column(rot);
  CHECK(rad_to_deg(angle_distance(r.yaw, deg_to_rad(30), kPi)) < 1.0);

  try {
    fit_rect_column(std::vector<Point3>{{0, 0, 0}, {1, 1, 1}});
    FAIL("expected DegenerateInput");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DegenerateInput);
  }
}

TEST_CASE("column stage builds one element per cluster") {
  std::mt19937_64 rng(9);
  auto pts = oracle::cylinder_shell(Point3(0, 0, 0), 0.25, 3, 2500, rng);
  const auto b = oracle::box_shell(Point3(4, 0, 1.5), 0.5, 0.4, 3, 0, 2500, rng);
  pts.insert(pts.end(), b.begin(), b.end());
  const auto cols = reconstruct_columns(pts, {}, 1);
  REQUIRE(cols.size() == 2);
  CHECK(cols[0].shape() == ColumnShape::Round);
  CHECK(cols[1].shape() == ColumnShape::Rectangular);
  CHECK(std::get<Cylinder>(cols[0].geometry).radius == doctest::Approx(0.25).epsilon(0.02));
  CHECK(reconstruct_columns(pts, {}, 1) == cols);
}
