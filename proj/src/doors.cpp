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

#include "scanbim/doors.hpp"

#include "scanbim/dbscan.hpp"
#include "scanbim/error.hpp"
#include "scanbim/kdtree.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <memory>

namespace scanbim {

DoorCandidates find_door_candidates(std::span<const Point3> door_points, const std::vector<WallInstance>& walls,
                                    double margin) {
  DoorCandidates out;
  for (std::size_t i = 0; i < door_points.size(); ++i) {
    const WallInstance* owner = nullptr;
    for (const auto& w : walls) {
      if (!w.box.contains(door_points[i], margin)) continue;
      if (!owner || w.box.volume() < owner->box.volume() ||
          (w.box.volume() == owner->box.volume() && w.id < owner->id)) {
        owner = &w;
      }
    }
    if (owner) {
      out.assigned[owner->id].push_back(static_cast<Index>(i));
    } else {
      out.unassigned.push_back(static_cast<Index>(i));
    }
  }
  return out;
}

std::map<ElementId, std::vector<Index>> expand_door_cluster(std::span<const Point3> door_points,
                                                            const DoorCandidates& candidates, double expansion_radius,
                                                            double link_distance) {
  constexpr ElementId kNone = std::numeric_limits<ElementId>::max();
  std::vector<ElementId> owner(door_points.size(), kNone);
  std::map<ElementId, std::unique_ptr<KdTree>> seeds;
  std::deque<Index> queue;
  for (const auto& [id, members] : candidates.assigned) {
    std::vector<Point3> pts;
    for (Index i : members) {
      owner[i] = id;
      pts.push_back(door_points[i]);
      queue.push_back(i);
    }
    seeds.emplace(id, std::make_unique<KdTree>(pts));
  }

  std::vector<char> open(door_points.size(), 0);
  for (Index i : candidates.unassigned) open[i] = 1;
  const KdTree all(door_points);
  while (!queue.empty()) {
    const Index cur = queue.front();
    queue.pop_front();
    const ElementId id = owner[cur];
    for (Index nb : all.radius(door_points[cur], link_distance)) {
      if (!open[nb] || owner[nb] != kNone) continue;
      const KdTree& tree = *seeds.at(id);
      const Index nearest = tree.knn(door_points[nb], 1).front();
      if ((tree.point(nearest) - door_points[nb]).norm() > expansion_radius) continue;
      owner[nb] = id;
      queue.push_back(nb);
    }
  }

  std::map<ElementId, std::vector<Index>> out;
  for (std::size_t i = 0; i < owner.size(); ++i) {
    if (owner[i] != kNone) out[owner[i]].push_back(static_cast<Index>(i));
  }
  return out;
}

Hobb door_box_in_wall(std::span<const Point3> door_points, std::span<const Index> members, const WallInstance& wall) {
  const Vec2 dir = wall.box.direction();
  const Vec2 lat = wall.box.lateral();
  double a_lo = std::numeric_limits<double>::infinity(), a_hi = -a_lo;
  double l_lo = a_lo, l_hi = -a_lo;
  double z_lo = a_lo, z_hi = -a_lo;
  for (Index i : members) {
    const Vec2 p = door_points[i].head<2>();
    a_lo = std::min(a_lo, dir.dot(p));
    a_hi = std::max(a_hi, dir.dot(p));
    l_lo = std::min(l_lo, lat.dot(p));
    l_hi = std::max(l_hi, lat.dot(p));
    z_lo = std::min(z_lo, door_points[i].z());
    z_hi = std::max(z_hi, door_points[i].z());
  }
  Hobb box;
  box.yaw = wall.box.yaw;
  const Vec2 c = 0.5 * (a_lo + a_hi) * dir + 0.5 * (l_lo + l_hi) * lat;
  box.center = Point3(c.x(), c.y(), 0.5 * (z_lo + z_hi));
  box.length = a_hi - a_lo;
  box.width = l_hi - l_lo;
  box.height = z_hi - z_lo;
  return box;
}

Hobb project_into_wall(const Hobb& door, const WallInstance& wall) {
  const Hobb& w = wall.box;
  const Vec2 dir = w.direction();
  const double along = dir.dot((door.center - w.center).head<2>());
  const double half = 0.5 * door.length;
  const double wall_half = 0.5 * w.length;
  double lo = std::max(along - half, -wall_half);
  double hi = std::min(along + half, wall_half);
  if (hi < lo) lo = hi = std::clamp(along, -wall_half, wall_half);

  const double z_lo = std::max(door.z_min(), w.z_min());
  double z_hi = std::min(door.z_max(), w.z_max());
  if (z_hi < z_lo) z_hi = z_lo;

  Hobb out;
  out.yaw = w.yaw;
  const Vec2 c = w.center.head<2>() + 0.5 * (lo + hi) * dir;
  out.center = Point3(c.x(), c.y(), 0.5 * (z_lo + z_hi));
  out.length = hi - lo;
  out.width = w.width;
  out.height = z_hi - z_lo;
  return out;
}

std::vector<Hobb> split_oversized(const Hobb& door, double max_width, double spacing) {
  if (!(max_width > 0.0) || spacing < 0.0) throw Error(ErrorKind::InvalidSplit, "max width must be positive, spacing >= 0");
  if (door.length <= max_width) return {door};
  // The epsilon keeps exact multiples (3.6 / 1.2) from rounding up.
  const auto n = static_cast<std::size_t>(std::ceil(door.length / max_width - 1e-9));
  const double w = (door.length - static_cast<double>(n - 1) * spacing) / static_cast<double>(n);
  if (!(w > 0.0)) throw Error(ErrorKind::InvalidSplit, "spacing leaves no width for the split doors");
  std::vector<Hobb> out;
  const Vec2 dir = door.direction();
  const double start = -0.5 * door.length;
  for (std::size_t k = 0; k < n; ++k) {
    Hobb part = door;
    const double mid = start + static_cast<double>(k) * (w + spacing) + 0.5 * w;
    part.center.x() += mid * dir.x();
    part.center.y() += mid * dir.y();
    part.length = w;
    out.push_back(part);
  }
  return out;
}

std::vector<DoorInstance> reconstruct_doors(std::span<const Point3> door_points, const std::vector<WallInstance>& walls,
                                            const DoorParams& params) {
  std::vector<DoorInstance> doors;
  if (door_points.empty() || walls.empty()) return doors;
  const auto candidates = find_door_candidates(door_points, walls, params.wall_margin);
  const auto grown = expand_door_cluster(door_points, candidates, params.expansion_radius, params.link_distance);

  for (const auto& [wall_id, members] : grown) {
    const WallInstance* wall = nullptr;
    for (const auto& w : walls) {
      if (w.id == wall_id) wall = &w;
    }
    std::vector<Point3> pts;
    pts.reserve(members.size());
    for (Index i : members) pts.push_back(door_points[i]);
    // Separate doors in the same wall by connectivity.
    for (const auto& cluster : dbscan(pts, params.link_distance, 1, Label::Door)) {
      if (cluster.point_indices.size() < params.min_points) continue;
      const Hobb raw = door_box_in_wall(pts, cluster.point_indices, *wall);
      const Hobb aligned = project_into_wall(raw, *wall);
      if (!(aligned.length > 0.0) || !(aligned.height > 0.0)) continue;
      for (const Hobb& part : split_oversized(aligned, params.max_width, params.split_spacing)) {
        doors.push_back({0, wall_id, part});
      }
    }
  }
  return doors;
}

}  // namespace scanbim
