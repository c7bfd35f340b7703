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

#include "scanbim/topology.hpp"

#include "scanbim/error.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <tuple>

namespace scanbim {

void TopologyConfig::validate() const {
  if (!(intersection_radius > 0.0) || !(merge_distance > 0.0) || !(collinear_angle_tol > 0.0) ||
      !(collinear_lateral_tol > 0.0) || !(perpendicular_tol > 0.0) || max_iterations < 1) {
    throw Error(ErrorKind::InvalidConfig, "topology configuration out of range");
  }
}

namespace {

constexpr double kMoveEpsilon = 1e-9;

double cross2(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

double distance_to_segment(const Vec2& p, const Vec2& a, const Vec2& b) {
  const Vec2 ab = b - a;
  const double len2 = ab.squaredNorm();
  const double t = len2 > 0.0 ? std::clamp((p - a).dot(ab) / len2, 0.0, 1.0) : 0.0;
  return (p - (a + t * ab)).norm();
}

std::vector<std::size_t> order_by_id(const std::vector<WallInstance>& walls) {
  std::vector<std::size_t> order(walls.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return walls[a].id < walls[b].id; });
  return order;
}

/// Moves the endpoint of `wall` nearest the centerline crossing with `other`.
void close_corner(WallInstance& wall, const WallInstance& other, const TopologyConfig& cfg) {
  const Vec2 d = wall.box.direction();
  const Vec2 od = other.box.direction();
  const double denom = cross2(d, od);
  if (std::abs(denom) < 1e-12) return;
  const Vec2 c = wall.box.center.head<2>();
  const Vec2 oc = other.box.center.head<2>();
  const double t = cross2(oc - c, od) / denom;
  const Vec2 x = c + t * d;
  const auto ob = other.box.baseline();
  if (distance_to_segment(x, ob[0], ob[1]) > cfg.intersection_radius) return;

  const double half = 0.5 * wall.box.length;
  double lo = -half;
  double hi = half;
  const double d_lo = std::abs(t - lo);
  const double d_hi = std::abs(t - hi);
  if (std::min(d_lo, d_hi) > cfg.intersection_radius) return;
  const double reach = 0.5 * other.box.width;
  if (d_hi <= d_lo) {
    const double target = t + reach;
    if (std::abs(target - hi) <= kMoveEpsilon || target <= lo) return;
    hi = target;
  } else {
    const double target = t - reach;
    if (std::abs(target - lo) <= kMoveEpsilon || target >= hi) return;
    lo = target;
  }
  wall.box.set_baseline_span(lo, hi);
}

}  // namespace

std::vector<WallInstance> correct_intersections(std::vector<WallInstance> walls, const TopologyConfig& cfg) {
  const auto order = order_by_id(walls);
  for (std::size_t a = 0; a < order.size(); ++a) {
    for (std::size_t b = a + 1; b < order.size(); ++b) {
      WallInstance& wa = walls[order[a]];
      WallInstance& wb = walls[order[b]];
      if (angle_distance(wa.box.yaw, wb.box.yaw + 0.5 * kPi, kPi) > cfg.perpendicular_tol) continue;
      close_corner(wa, wb, cfg);
      close_corner(wb, wa, cfg);
    }
  }
  return walls;
}

std::vector<WallInstance> merge_collinear(std::vector<WallInstance> walls, const TopologyConfig& cfg) {
  for (;;) {
    struct Candidate {
      double gap;
      ElementId id_a, id_b;
      std::size_t ref, other;
    };
    bool found = false;
    Candidate best{};
    for (std::size_t i = 0; i < walls.size(); ++i) {
      for (std::size_t j = i + 1; j < walls.size(); ++j) {
        const Hobb& bi = walls[i].box;
        const Hobb& bj = walls[j].box;
        if (angle_distance(bi.yaw, bj.yaw, kPi) > cfg.collinear_angle_tol) continue;
        const bool i_ref = bi.length > bj.length || (bi.length == bj.length && walls[i].id <= walls[j].id);
        const std::size_t r = i_ref ? i : j;
        const std::size_t o = i_ref ? j : i;
        const Hobb& ref = walls[r].box;
        const Hobb& oth = walls[o].box;
        const Vec2 rel = (oth.center - ref.center).head<2>();
        if (std::abs(ref.lateral().dot(rel)) > cfg.collinear_lateral_tol) continue;
        const auto ends = oth.baseline();
        const double e0 = ref.direction().dot(ends[0] - ref.center.head<2>());
        const double e1 = ref.direction().dot(ends[1] - ref.center.head<2>());
        const double o_lo = std::min(e0, e1);
        const double o_hi = std::max(e0, e1);
        const double half = 0.5 * ref.length;
        const double gap = std::max(o_lo - half, -half - o_hi);
        if (gap > cfg.merge_distance) continue;
        const Candidate cand{gap, std::min(walls[i].id, walls[j].id), std::max(walls[i].id, walls[j].id), r, o};
        if (!found || std::tie(cand.gap, cand.id_a, cand.id_b) < std::tie(best.gap, best.id_a, best.id_b)) {
          best = cand;
          found = true;
        }
      }
    }
    if (!found) break;

    WallInstance& ref = walls[best.ref];
    const WallInstance& oth = walls[best.other];
    const auto ends = oth.box.baseline();
    const Vec2 dir = ref.box.direction();
    const Vec2 c = ref.box.center.head<2>();
    const double half = 0.5 * ref.box.length;
    const double e0 = dir.dot(ends[0] - c);
    const double e1 = dir.dot(ends[1] - c);
    const double lo = std::min({-half, e0, e1});
    const double hi = std::max({half, e0, e1});

    WallInstance merged = ref;
    merged.id = best.id_a;
    merged.box.set_baseline_span(lo, hi);
    const double base = 0.5 * (ref.box.z_min() + oth.box.z_min());
    const double height = 0.5 * (ref.box.height + oth.box.height);
    merged.box.height = height;
    merged.box.center.z() = base + 0.5 * height;
    merged.box.width = std::max(ref.box.width, oth.box.width);
    merged.source_planes.insert(merged.source_planes.end(), oth.source_planes.begin(), oth.source_planes.end());

    const std::size_t keep = std::min(best.ref, best.other);
    const std::size_t drop = std::max(best.ref, best.other);
    walls[keep] = std::move(merged);
    walls.erase(walls.begin() + static_cast<std::ptrdiff_t>(drop));
  }
  return walls;
}

std::vector<WallInstance> remove_redundant(const std::vector<WallInstance>& walls) {
  constexpr double kTol = 1e-3;
  std::vector<WallInstance> out;
  for (std::size_t i = 0; i < walls.size(); ++i) {
    const auto corners = walls[i].box.corners();
    bool redundant = false;
    for (std::size_t j = 0; j < walls.size() && !redundant; ++j) {
      if (i == j) continue;
      const double vi = walls[i].box.volume();
      const double vj = walls[j].box.volume();
      const bool larger = vj > vi || (vj == vi && walls[j].id < walls[i].id) || (vj == vi && walls[j].id == walls[i].id && j < i);
      if (!larger) continue;
      redundant = std::all_of(corners.begin(), corners.end(), [&](const Point3& p) { return walls[j].box.contains(p, kTol); });
    }
    if (!redundant) out.push_back(walls[i]);
  }
  return out;
}

bool same_walls(const std::vector<WallInstance>& a, const std::vector<WallInstance>& b, double tol) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const Hobb& x = a[i].box;
    const Hobb& y = b[i].box;
    if (a[i].id != b[i].id || (x.center - y.center).cwiseAbs().maxCoeff() > tol || std::abs(x.length - y.length) > tol ||
        std::abs(x.width - y.width) > tol || std::abs(x.height - y.height) > tol ||
        angle_distance(x.yaw, y.yaw, kPi) > tol) {
      return false;
    }
  }
  return true;
}

TopologyResult refine_topology(const std::vector<WallInstance>& walls, const TopologyConfig& cfg) {
  cfg.validate();
  TopologyResult result;
  std::vector<WallInstance> current = walls;
  for (int it = 1; it <= cfg.max_iterations; ++it) {
    auto next = remove_redundant(correct_intersections(merge_collinear(current, cfg), cfg));
    result.iterations = it;
    if (same_walls(next, current)) {
      result.walls = std::move(current);
      result.converged = true;
      return result;
    }
    current = std::move(next);
  }
  result.walls = std::move(current);
  result.converged = false;
  return result;
}

}  // namespace scanbim
