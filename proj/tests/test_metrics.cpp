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
#include "scanbim/metrics.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>

using namespace scanbim;

namespace {

Hobb box(const Point3& c, double l, double w, double h, double yaw = 0.0) {
  Hobb b;
  b.center = c;
  b.length = l;
  b.width = w;
  b.height = h;
  b.yaw = yaw;
  return b;
}

bool in_cylinder(const Cylinder& c, const Point3& p) {
  const double dx = p.x() - c.base_center.x(), dy = p.y() - c.base_center.y();
  return dx * dx + dy * dy <= c.radius * c.radius && p.z() >= c.base_center.z() &&
         p.z() <= c.base_center.z() + c.height;
}

bool in_element(const Element& e, const Point3& p) {
  if (const auto* b = std::get_if<Hobb>(&e)) return oracle::in_box(*b, p);
  return in_cylinder(std::get<Cylinder>(e), p);
}

/// Voxel centres inside any element, by enumerating a whole block.
std::vector<VoxelIndex> enumerate_voxels(const std::vector<Element>& elements, double size, const Point3& origin,
                                         int dim) {
  std::vector<VoxelIndex> out;
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      for (int k = 0; k < dim; ++k) {
        const Point3 c = origin + size * Point3(i + 0.5, j + 0.5, k + 0.5);
        for (const auto& e : elements) {
          if (in_element(e, c)) {
            out.push_back({i, j, k});
            break;
          }
        }
      }
  return out;
}

Hobb random_box(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0, 1);
  return box(Point3(1 + u(rng), 1 + u(rng), 1 + 0.5 * u(rng)), 0.3 + u(rng), 0.1 + 0.4 * u(rng), 0.5 + u(rng),
             kPi * u(rng));
}

}  // namespace

TEST_CASE("3D IoU closed forms") {
  const Hobb a = box(Point3(0.5, 0.5, 0.5), 1, 1, 1);
  CHECK(iou_3d(a, a) == 1.0);
  const Hobb b = box(Point3(1.0, 0.5, 0.5), 1, 1, 1);
  CHECK(iou_3d(a, b) == doctest::Approx(1.0 / 3.0));
  CHECK(iou_3d(a, box(Point3(5, 5, 5), 1, 1, 1)) == 0.0);
  const Cylinder c{Point3(0, 0, 0), 0.5, 2};
  CHECK(iou_3d(c, c) == 1.0);
  CHECK(iou_3d(a, c) == 0.0);
  CHECK(element_volume(c) == doctest::Approx(kPi * 0.25 * 2));
}

TEST_CASE("3D IoU of yawed boxes matches Monte Carlo") {
  const Hobb a = box(Point3(0, 0, 1), 2, 1, 2, 0);
  const Hobb b = box(Point3(0.3, 0.2, 1.3), 2, 1, 2, deg_to_rad(30));
  const double mc = oracle::monte_carlo_iou([&](const Point3& p) { return oracle::in_box(a, p); },
                                            [&](const Point3& p) { return oracle::in_box(b, p); }, Point3(-1.5, -1.5, 0),
                                            Point3(1.5, 1.5, 2.5), 1000000, 1);
  CHECK(std::abs(iou_3d(a, b) - mc) < 0.005);
}

TEST_CASE("3D IoU of offset cylinders matches Monte Carlo") {
  const Cylinder a{Point3(0, 0, 0), 0.5, 2};
  const Cylinder b{Point3(0.4, 0.2, 0.5), 0.4, 2};
  const double mc = oracle::monte_carlo_iou([&](const Point3& p) { return in_cylinder(a, p); },
                                            [&](const Point3& p) { return in_cylinder(b, p); }, Point3(-0.6, -0.6, 0),
                                            Point3(1.0, 0.7, 2.6), 1000000, 2);
  CHECK(std::abs(iou_3d(a, b) - mc) < 0.005);
}

TEST_CASE("3D IoU is symmetric and bounded") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 500; ++i) {
    const Hobb a = random_box(rng), b = random_box(rng);
    const double ab = iou_3d(a, b);
    CHECK(ab == doctest::Approx(iou_3d(b, a)).epsilon(1e-12));
    CHECK(ab >= 0.0);
    CHECK(ab <= 1.0);
    if (!(a == b)) CHECK(ab < 1.0);
  }
}

TEST_CASE("instance matching") {
  const std::vector<Element> walls{box(Point3(2, 0, 1), 4, 0.2, 2), box(Point3(0, 3, 1), 6, 0.2, 2)};
  const auto same = match_instances(walls, walls);
  CHECK(same.mean_iou == 1.0);
  CHECK(same.matches.size() == 2);
  CHECK(same.unmatched_gt.empty());

  const std::vector<Element> gt{box(Point3(2, 0, 1), 4, 0.2, 2)};
  const std::vector<Element> frags{box(Point3(1, 0, 1), 2, 0.2, 2), box(Point3(3, 0, 1), 2, 0.2, 2)};
  const auto m = match_instances(frags, gt);
  REQUIRE(m.matches.size() == 1);
  CHECK(m.matches[0].iou == doctest::Approx(0.5));
  CHECK(m.unmatched_pred.size() == 1);
  CHECK(m.mean_iou == doctest::Approx(0.25));
  CHECK(viou(frags, gt, 0.05) > m.mean_iou);

  CHECK(match_instances({}, gt).mean_iou == 0.0);
  CHECK(match_instances({}, {}).mean_iou == 0.0);
}

TEST_CASE("voxelization of a unit cube") {
  const std::vector<Element> cube{box(Point3(0.5, 0.5, 0.5), 1, 1, 1)};
  CHECK(voxelize(cube, 0.05, Point3::Zero()).size() == 8000);
  CHECK(voxelize({}, 0.05, Point3::Zero()).size() == 0);
}

TEST_CASE("voxelization is the union of element occupancies") {
  const Hobb a = box(Point3(0.5, 0.5, 0.5), 1, 0.4, 1, 0.3);
  const Hobb b = box(Point3(0.8, 0.6, 0.5), 0.8, 0.5, 0.8, 1.1);
  const auto ga = voxelize(std::vector<Element>{a}, 0.05, Point3::Zero());
  const auto gb = voxelize(std::vector<Element>{b}, 0.05, Point3::Zero());
  std::vector<VoxelIndex> u;
  std::set_union(ga.occupied.begin(), ga.occupied.end(), gb.occupied.begin(), gb.occupied.end(), std::back_inserter(u));
  CHECK(voxelize(std::vector<Element>{a, b}, 0.05, Point3::Zero()).occupied == u);
}

TEST_CASE("voxelization matches block enumeration") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0, 1);
  for (int trial = 0; trial < 6; ++trial) {
    std::vector<Element> elems{random_box(rng), random_box(rng),
                               Cylinder{Point3(1 + u(rng), 1 + u(rng), 0.5), 0.1 + 0.3 * u(rng), 0.5 + u(rng)}};
    const double size = 0.05;
    const int dim = 64;
    const auto got = voxelize(elems, size, Point3::Zero());
    CHECK(got.occupied == enumerate_voxels(elems, size, Point3::Zero(), dim));
    CHECK(got.occupied == reference::voxelize(elems, size, Point3::Zero(), {dim, dim, dim}).occupied);
  }
}

TEST_CASE("voxel IoU closed forms") {
  const std::vector<Element> a{box(Point3(0.5, 0.5, 0.5), 1, 1, 1)};
  const std::vector<Element> b{box(Point3(1.0, 0.5, 0.5), 1, 1, 1)};
  CHECK(viou(a, a, 0.05) == 1.0);
  CHECK(std::abs(viou(a, b, 0.05) - 1.0 / 3.0) < 0.02);
  CHECK(viou({}, {}, 0.05) == 1.0);
  CHECK(viou(a, {}, 0.05) == 0.0);
}

TEST_CASE("voxel IoU ignores element order and splits") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0, 1);
  for (int trial = 0; trial < 50; ++trial) {
    const Hobb whole = random_box(rng);
    const double cut = -whole.length / 2 + whole.length * (0.2 + 0.6 * u(rng));
    // Two abutting halves along the length axis.
    const double l0 = cut + whole.length / 2, l1 = whole.length / 2 - cut;
    const Vec2 d = whole.direction();
    Hobb h0 = whole, h1 = whole;
    h0.length = l0;
    h1.length = l1;
    h0.center.head<2>() += (cut - l0 / 2) * d;
    h1.center.head<2>() += (cut + l1 / 2) * d;
    const Hobb other = random_box(rng);
    const std::vector<Element> gt{other};
    const double full = viou(std::vector<Element>{whole}, gt, 0.05);
    CHECK(viou(std::vector<Element>{h0, h1}, gt, 0.05) == doctest::Approx(full).epsilon(0.02));
    CHECK(viou(std::vector<Element>{whole, other}, gt, 0.05) == viou(std::vector<Element>{other, whole}, gt, 0.05));
  }
}

TEST_CASE("shrinking a spurious prediction never lowers voxel IoU") {
  const std::vector<Element> gt{box(Point3(1, 1, 1), 2, 0.2, 2)};
  double last = -1;
  for (double l : {2.0, 1.5, 1.0, 0.5, 0.1}) {
    const std::vector<Element> pred{box(Point3(1, 1, 1), 2, 0.2, 2), box(Point3(6, 6, 1), l, 0.2, 2)};
    const double v = viou(pred, gt, 0.05);
    CHECK(v >= last);
    last = v;
  }
}

TEST_CASE("model evaluation against itself") {
  BimModel m;
  m.storeys.push_back({0, 3, 0});
  WallInstance w;
  w.id = 0;
  w.box = box(Point3(2, 0, 1.5), 4, 0.2, 3);
  m.walls.push_back(w);
  m.doors.push_back({1, 0, box(Point3(2, 0, 1), 0.9, 0.2, 2)});
  m.columns.push_back({2, 0, Cylinder{Point3(1, 2, 0), 0.25, 3}});
  const auto r = evaluate_models(m, m);
  CHECK(r.voxel_size == 0.05);
  REQUIRE(r.classes.size() == 3);
  for (const auto& c : r.classes) {
    CHECK(c.present);
    CHECK(c.mean_iou == 1.0);
    CHECK(c.viou == 1.0);
  }
  CHECK(r.mean_iou == 1.0);
  CHECK(r.mean_viou == 1.0);
  CHECK(format_report(r).find("wall") != std::string::npos);
}
