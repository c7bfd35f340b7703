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

#include <vector>

namespace scanbim {

struct TopologyConfig {
  double intersection_radius = 0.3;
  double merge_distance = 0.15;
  double collinear_angle_tol = deg_to_rad(5.0);
  double collinear_lateral_tol = 0.05;
  double perpendicular_tol = deg_to_rad(10.0);
  int max_iterations = 10;

  void validate() const;
};

/// Closes corners between perpendicular walls. For each perpendicular pair
/// whose centerlines meet at X (with X within r of the other wall's
/// baseline), the endpoint nearest X, if within r, moves along its own
/// centerline to X plus half the other wall's width, outward.
std::vector<WallInstance> correct_intersections(std::vector<WallInstance> walls, const TopologyConfig& cfg);

/// Joins collinear walls whose facing endpoints are within merge_distance or
/// whose baselines overlap. Pairs are merged smallest gap first (ties by id),
/// re-evaluating after each merge. The longer wall fixes yaw and the
/// centerline; the merged wall spans both baselines, averages height and
/// base z, takes the larger width and the smaller id.
std::vector<WallInstance> merge_collinear(std::vector<WallInstance> walls, const TopologyConfig& cfg);

/// Drops walls whose 8 corners lie within 1 mm of another, larger wall.
std::vector<WallInstance> remove_redundant(const std::vector<WallInstance>& walls);

struct TopologyResult {
  std::vector<WallInstance> walls;
  int iterations = 0;
  bool converged = true;
};

/// Repeats merge -> intersection correction -> redundancy removal until the
/// wall set stops changing or max_iterations is reached (converged = false).
TopologyResult refine_topology(const std::vector<WallInstance>& walls, const TopologyConfig& cfg);

/// Element-wise comparison of wall sets with a geometric tolerance.
bool same_walls(const std::vector<WallInstance>& a, const std::vector<WallInstance>& b, double tol = 1e-9);

}  // namespace scanbim
