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

#pragma once

#include "scanbim/model.hpp"

#include <map>
#include <span>
#include <vector>

namespace scanbim {

struct DoorParams {
  double wall_margin = 0.05;
  double expansion_radius = 1.0;
  double link_distance = 0.15;
  double max_width = 1.4;
  double split_spacing = 0.1;
  std::size_t min_points = 50;
};

struct DoorCandidates {
  std::map<ElementId, std::vector<Index>> assigned;
  std::vector<Index> unassigned;
};

/// Assigns each door point to the wall box containing it (inflated by
/// `margin`). A point inside several boxes goes to the smallest wall by
/// volume, ties by id.
DoorCandidates find_door_candidates(std::span<const Point3> door_points, const std::vector<WallInstance>& walls,
                                    double margin = 0.0);

/// Grows each wall's door points through unassigned points. A point joins
/// when it is within `link_distance` of a point already in the cluster and
/// within `expansion_radius` of one of the wall's original in-box points.
/// Growth is breadth-first from all walls at once, walls in id order.
std::map<ElementId, std::vector<Index>> expand_door_cluster(std::span<const Point3> door_points,
                                                            const DoorCandidates& candidates, double expansion_radius,
                                                            double link_distance);

/// Box around door points in the wall frame: wall yaw, extent along the wall
/// and z range of the points.
Hobb door_box_in_wall(std::span<const Point3> door_points, std::span<const Index> members, const WallInstance& wall);

/// Aligns a door box with its wall: wall yaw, centred on the wall centerline,
/// depth equal to the wall width, baseline and z range clamped to the wall.
/// Door width along the wall is the box length.
Hobb project_into_wall(const Hobb& door, const WallInstance& wall);

/// Splits a door wider than `max_width` into n = ceil(width / max_width)
/// equal doors separated by `spacing` along the same baseline.
/// Throws InvalidSplit when the spacing leaves no room for the doors.
std::vector<Hobb> split_oversized(const Hobb& door, double max_width, double spacing);

/// Complete door stage for one storey. Door ids are left at 0.
std::vector<DoorInstance> reconstruct_doors(std::span<const Point3> door_points, const std::vector<WallInstance>& walls,
                                            const DoorParams& params);

}  // namespace scanbim
