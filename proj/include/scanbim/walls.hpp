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
#include "scanbim/types.hpp"

#include <random>
#include <span>
#include <vector>

namespace scanbim {

struct HysacConfig {
  std::size_t n_bins = 30;
  std::size_t n_seeds = 10;
  std::size_t min_points = 100;
  double distance_threshold = 0.05;
  double min_inlier_ratio = 0.05;
  /// Plane hypotheses tried per extracted plane before giving up.
  std::size_t max_attempts = 10;

  void validate() const;
};

/// Where hypothesis seeds come from. Histogram is HYSAC; Uniform is the
/// plain RANSAC baseline.
enum class SeedStrategy { Histogram, Uniform };

struct WallAssemblyParams {
  double parallel_angle = deg_to_rad(10.0);
  double max_thickness = 0.5;
  double default_thickness = 0.2;
};

/// Dominant horizontal direction of the wall normals, folded into [0, pi/2).
/// Normals within `vertical_tol` of vertical are ignored.
///
/// Throws DegenerateInput for fewer than 100 normals or when no 3-degree
/// window of 1-degree direction bins reaches twice the mean window count.
double estimate_manhattan_frame(std::span<const Eigen::Vector3d> normals, double vertical_tol = deg_to_rad(20.0));

struct DirectionSplit {
  std::vector<Index> along_x;  // walls running along the frame x axis (normals ~ frame y)
  std::vector<Index> along_y;
};

DirectionSplit split_by_direction(std::span<const Eigen::Vector3d> normals, double frame_angle,
                                  double vertical_tol = deg_to_rad(20.0));

/// DBSCAN over one direction group; noise is dropped.
std::vector<Cluster> cluster_walls_per_axis(std::span<const Point3> points, double eps, std::size_t min_pts);

/// Iterative histogram-seeded plane extraction over one wall cluster.
///
/// `normal_axis` is the horizontal axis orthogonal to the wall surfaces.
/// Each round histograms the remaining points along it, draws `n_seeds`
/// points from the densest peak bin, fits a plane by SVD, collects inliers
/// within the distance threshold, refits on the inliers, and accepts the
/// plane when it has at least `min_points` inliers and the inlier ratio over
/// the remaining points reaches `min_inlier_ratio`. Accepted inliers leave
/// the pool. Stops when fewer than `min_points` remain or no hypothesis in
/// `max_attempts` is accepted. Inlier indices refer to `points`.
std::vector<Plane> hysac_planes(std::span<const Point3> points, const HysacConfig& config, const Vec2& normal_axis,
                                std::mt19937_64& rng, SeedStrategy strategy = SeedStrategy::Histogram);

/// Pairs parallel faces of one cluster into walls and boxes each wall.
/// `planes` inliers index into `points`.
std::vector<WallInstance> assemble_wall_instances(std::span<const Plane> planes, std::span<const Point3> points,
                                                  const WallAssemblyParams& params);

}  // namespace scanbim
