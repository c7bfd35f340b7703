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
#include "scanbim/error.hpp"
#include "scanbim/local_geometry.hpp"
#include "scanbim/plane_fit.hpp"
#include "scanbim/storeys.hpp"
#include "scanbim/synth.hpp"
#include "scanbim/walls.hpp"

#include <doctest.h>

#include <numeric>
#include <random>
#include <set>

using namespace scanbim;

namespace {

LabeledPointCloud walls_only(const LabeledPointCloud& cloud) {
  LabeledPointCloud out;
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    if (cloud.labels[i] != Label::Wall) continue;
    out.points.push_back(cloud.points[i]);
    out.labels.push_back(Label::Wall);
  }
  return out;
}

double fraction_of(const std::vector<Index>& group, const std::set<Index>& members) {
  std::size_t hit = 0;
  for (auto i : group) hit += members.count(i);
  return members.empty() ? 0.0 : static_cast<double>(hit) / static_cast<double>(members.size());
}

Plane plane_from(const std::vector<Point3>& pts, std::size_t begin, std::size_t end) {
  std::vector<Index> idx(end - begin);
  std::iota(idx.begin(), idx.end(), static_cast<Index>(begin));
  Plane p = fit_plane_svd(pts, idx);
  p.inlier_indices = idx;
  return p;
}

}  // namespace

TEST_CASE("single storey slabs are found") {
  SceneSpec spec = room_layout(5, 4, 0.2, 2.7);
  spec.density = 200;
  const auto scene = generate(spec);
  const auto storeys = detect_storeys(scene.cloud, {});
  REQUIRE(storeys.size() == 1);
  CHECK(storeys[0].floor_z >= -0.05);
  CHECK(storeys[0].floor_z <= 0.05);
  CHECK(storeys[0].ceiling_z >= 2.65);
  CHECK(storeys[0].ceiling_z <= 2.75);
}

TEST_CASE("two storeys with slab pairs at 0, 2.7, 3.0, 5.7") {
  SceneSpec spec = grid_layout({0, 5}, {0, 4}, 2, 0.2, 2.7);
  spec.slab_thickness = 0.3;
  spec.density = 200;
  const auto scene = generate(spec);
  const auto storeys = detect_storeys(scene.cloud, {});
  REQUIRE(storeys.size() == 2);
  CHECK(std::abs(storeys[0].floor_z - 0.0) < 0.1);
  CHECK(std::abs(storeys[0].ceiling_z - 2.7) < 0.1);
  CHECK(std::abs(storeys[1].floor_z - 3.0) < 0.1);
  CHECK(std::abs(storeys[1].ceiling_z - 5.7) < 0.1);

  const auto assign = assign_storeys(scene.cloud.points, storeys);
  REQUIRE(assign.size() == scene.cloud.size());
  for (int s : assign) CHECK((s == 0 || s == 1));
  for (std::size_t i = 0; i < assign.size(); ++i) {
    if (scene.cloud.points[i].z() < 2.8) CHECK(assign[i] == 0);
    if (scene.cloud.points[i].z() > 2.9) CHECK(assign[i] == 1);
  }
}

TEST_CASE("uniform vertical density has no storey") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0, 3);
  LabeledPointCloud cloud;
  for (int i = 0; i < 20000; ++i) {
    cloud.points.emplace_back(u(rng), u(rng), u(rng));
    cloud.labels.push_back(Label::Wall);
  }
  CHECK_THROWS_AS(detect_storeys(cloud, {}), Error);
  try {
    detect_storeys(cloud, {});
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NoStoreyFound);
  }
}

TEST_CASE("light uniform noise keeps the peak count") {
  SceneSpec spec = grid_layout({0, 5}, {0, 4}, 2, 0.2, 2.7);
  spec.density = 200;
  auto scene = generate(spec);
  const auto before = vertical_density_peaks(scene.cloud.points, 0.1, 0.05);
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> ux(0, 5), uz(0, 5.7);
  const std::size_t extra = scene.cloud.size() * 4 / 100;
  for (std::size_t i = 0; i < extra; ++i) scene.cloud.points.emplace_back(ux(rng), ux(rng) * 0.8, uz(rng));
  CHECK(vertical_density_peaks(scene.cloud.points, 0.1, 0.05).size() == before.size());
}

TEST_CASE("manhattan frame of axis-aligned and rotated rooms") {
  for (double deg : {0.0, 15.0, 105.0}) {
    SceneSpec spec = room_layout(5, 4, 0.2, 2.7);
    spec.density = 200;
    rotate_scene(spec, deg_to_rad(deg), Vec2(2.5, 2));
    const auto walls = walls_only(generate(spec).cloud);
    const auto normals = estimate_normals(walls.points, 16);
    CAPTURE(deg);
    const double angle = estimate_manhattan_frame(normals);
    CHECK(rad_to_deg(angle_distance(angle, deg_to_rad(std::fmod(deg, 90.0)), kPi / 2)) < 0.5);
    CHECK(angle >= 0.0);
    CHECK(angle < kPi / 2);
  }
}

TEST_CASE("direction split of perpendicular walls") {
  SceneSpec spec;
  spec.density = 300;
  spec.walls.push_back({0, Vec2(0, 0), Vec2(5, 0), 0.2, 0});
  spec.walls.push_back({0, Vec2(7, 1), Vec2(7, 6), 0.2, 0});
  const auto scene = generate(spec);
  std::vector<Point3> pts;
  std::set<Index> wall0, wall1;
  for (std::size_t i = 0; i < scene.cloud.size(); ++i) {
    if (scene.cloud.labels[i] != Label::Wall) continue;
    if (scene.provenance[i] == 0) wall0.insert(static_cast<Index>(pts.size()));
    if (scene.provenance[i] == 1) wall1.insert(static_cast<Index>(pts.size()));
    pts.push_back(scene.cloud.points[i]);
  }
  const auto normals = estimate_normals(pts, 16);
  const auto split = split_by_direction(normals, 0.0);
  CHECK(fraction_of(split.along_x, wall0) >= 0.95);
  CHECK(fraction_of(split.along_y, wall1) >= 0.95);

  // One wall alone.
  std::vector<Point3> single;
  for (auto i : wall0) single.push_back(pts[i]);
  const auto s1 = split_by_direction(estimate_normals(single, 16), 0.0);
  CHECK(static_cast<double>(s1.along_x.size()) >= 0.95 * static_cast<double>(single.size()));
  CHECK(static_cast<double>(s1.along_y.size()) < 0.05 * static_cast<double>(single.size()));

  const std::vector<Eigen::Vector3d> up(100, Eigen::Vector3d::UnitZ());
  const auto s2 = split_by_direction(up, 0.0);
  CHECK(s2.along_x.empty());
  CHECK(s2.along_y.empty());
}

TEST_CASE("per-axis wall clustering") {
  std::mt19937_64 rng(5);
  auto a = oracle::two_face_wall(Vec2(1, 0), 6, 2.5, 0.2, 0.0, 1500, rng, Vec2(0, 0));
  const auto b = oracle::two_face_wall(Vec2(1, 0), 6, 2.5, 0.2, 0.0, 1500, rng, Vec2(0, 2.4));
  a.insert(a.end(), b.begin(), b.end());
  CHECK(cluster_walls_per_axis(a, 0.3, 10).size() == 2);

  auto gap = oracle::two_face_wall(Vec2(1, 0), 6, 2.5, 0.2, 0.0, 3000, rng);
  std::erase_if(gap, [](const Point3& p) { return std::abs(p.x()) < 0.05; });
  CHECK(cluster_walls_per_axis(gap, 0.3, 10).size() == 1);
  CHECK(cluster_walls_per_axis(std::vector<Point3>{}, 0.3, 10).empty());
}

TEST_CASE("hysac separates the two faces of a wall") {
  std::mt19937_64 rng(17);
  const auto pts = oracle::two_face_wall(Vec2(1, 0), 4, 2.5, 0.24, 0.005, 500, rng);
  HysacConfig cfg;
  std::mt19937_64 hr(1);
  const auto planes = hysac_planes(pts, cfg, Vec2(0, 1), hr);
  REQUIRE(planes.size() == 2);
  std::set<Index> seen;
  for (const auto& p : planes) {
    CHECK(p.normal.norm() == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(std::acos(std::min(1.0, std::abs(p.normal.y()))) < deg_to_rad(1.0));
    // Majority face decides which face this plane is.
    std::size_t lo = 0, hi = 0;
    for (auto i : p.inlier_indices) (i < 500 ? lo : hi)++;
    CHECK(std::max(lo, hi) >= 450);
    for (auto i : p.inlier_indices) {
      CHECK(p.distance(pts[i]) <= cfg.distance_threshold);
      CHECK(seen.insert(i).second);
    }
    CHECK(p.inlier_indices.size() >= cfg.min_points);
  }
}

TEST_CASE("hysac with too few points returns nothing") {
  std::mt19937_64 rng(3);
  const auto pts = oracle::two_face_wall(Vec2(1, 0), 2, 2, 0.2, 0, 25, rng);
  std::mt19937_64 hr(1);
  CHECK(hysac_planes(pts, {}, Vec2(0, 1), hr).empty());
}

TEST_CASE("hysac ignores volumetric noise around a single face") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(0, 1);
  std::vector<Point3> pts;
  for (int i = 0; i < 1000; ++i) pts.emplace_back(4 * u(rng), 0.0, 2.5 * u(rng));
  for (int i = 0; i < 50; ++i) pts.emplace_back(4 * u(rng), 1.0 * u(rng) - 0.5, 2.5 * u(rng));
  std::mt19937_64 hr(2);
  const auto planes = hysac_planes(pts, {}, Vec2(0, 1), hr);
  REQUIRE(planes.size() == 1);
  std::size_t face = 0;
  for (auto i : planes[0].inlier_indices) face += i < 1000;
  CHECK(static_cast<double>(face) >= 0.99 * static_cast<double>(planes[0].inlier_indices.size()));
}

TEST_CASE("hysac is reproducible under a fixed seed") {
  std::mt19937_64 rng(29);
  const auto pts = oracle::two_face_wall(Vec2(0.6, 0.8), 5, 2.5, 0.3, 0.01, 800, rng);
  for (auto strategy : {SeedStrategy::Histogram, SeedStrategy::Uniform}) {
    std::mt19937_64 a(77), b(77);
    const auto pa = hysac_planes(pts, {}, Vec2(-0.8, 0.6), a, strategy);
    const auto pb = hysac_planes(pts, {}, Vec2(-0.8, 0.6), b, strategy);
    REQUIRE(pa.size() == pb.size());
    for (std::size_t i = 0; i < pa.size(); ++i) {
      CHECK(pa[i].normal == pb[i].normal);
      CHECK(pa[i].offset == pb[i].offset);
      CHECK(pa[i].inlier_indices == pb[i].inlier_indices);
    }
  }
}

TEST_CASE("a loose single plane lands between the faces that hysac splits") {
  std::mt19937_64 rng(41);
  const auto pts = oracle::two_face_wall(Vec2(1, 0), 4, 2.5, 0.24, 0.005, 500, rng);
  const Plane mid = fit_plane_svd(pts);
  const double mid_y = -mid.offset / mid.normal.y();
  CHECK(std::abs(mid_y) < 0.02);
  std::mt19937_64 hr(3);
  const auto planes = hysac_planes(pts, {}, Vec2(0, 1), hr);
  REQUIRE(planes.size() == 2);
  const double y0 = -planes[0].offset / planes[0].normal.y();
  const double y1 = -planes[1].offset / planes[1].normal.y();
  CHECK(std::min(y0, y1) < mid_y);
  CHECK(std::max(y0, y1) > mid_y);
}

TEST_CASE("wall assembly pairs parallel faces") {
  std::mt19937_64 rng(7);
  const auto pts = oracle::two_face_wall(Vec2(1, 0), 4, 2.5, 0.24, 0.0, 400, rng);
  const std::vector<Plane> two{plane_from(pts, 0, 400), plane_from(pts, 400, 800)};
  const auto walls = assemble_wall_instances(two, pts, {});
  REQUIRE(walls.size() == 1);
  CHECK(walls[0].box.width >= 0.22);
  CHECK(walls[0].box.width <= 0.26);
  CHECK(walls[0].source_planes.size() == 2);

  const std::vector<Plane> one{plane_from(pts, 0, 400)};
  const auto single = assemble_wall_instances(one, pts, {});
  REQUIRE(single.size() == 1);
  CHECK(single[0].box.width == doctest::Approx(0.2));
}

TEST_CASE("three parallel faces make a pair and a single") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0, 1);
  std::vector<Point3> pts;
  for (double y : {0.0, 0.24, 1.5})
    for (int i = 0; i < 300; ++i) pts.emplace_back(4 * u(rng), y, 2.5 * u(rng));
  const std::vector<Plane> planes{plane_from(pts, 0, 300), plane_from(pts, 300, 600), plane_from(pts, 600, 900)};
  WallAssemblyParams params;
  params.max_thickness = 0.5;
  const auto walls = assemble_wall_instances(planes, pts, params);
  REQUIRE(walls.size() == 2);
  std::multiset<std::size_t> faces;
  for (const auto& w : walls) {
    faces.insert(w.source_planes.size());
    CHECK(w.box.width <= params.max_thickness + 1e-12);
  }
  CHECK(faces == std::multiset<std::size_t>{1, 2});
}

TEST_CASE("hysac config validation") {
  HysacConfig cfg;
  cfg.n_seeds = 2;
  CHECK_THROWS_AS(cfg.validate(), Error);
  cfg = {};
  cfg.min_points = 5;
  CHECK_THROWS_AS(cfg.validate(), Error);
  cfg = {};
  cfg.n_bins = 1;
  CHECK_THROWS_AS(cfg.validate(), Error);
  CHECK_NOTHROW(HysacConfig{}.validate());
}
