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

#include "scanbim/columns.hpp"
#include "scanbim/doors.hpp"
#include "scanbim/storeys.hpp"
#include "scanbim/topology.hpp"
#include "scanbim/walls.hpp"

#include <cstdint>
#include <filesystem>
#include <string>

namespace scanbim {

/// Every tunable of the reconstruction, mirroring the flat configuration file.
/// Field names match the file keys with '.' replaced by '_'; angles are in
/// degrees, lengths in metres.
struct PipelineConfig {
  double storey_bin_height_m = 0.1;
  double storey_peak_min_fraction = 0.05;
  double storey_min_height_m = 2.0;

  std::size_t wall_normal_k = 16;
  double wall_dbscan_eps_m = 0.35;
  std::size_t wall_dbscan_min_pts = 10;
  double wall_vertical_tol_deg = 20.0;
  double wall_parallel_angle_deg = 10.0;
  double wall_max_thickness_m = 0.5;
  double wall_default_thickness_m = 0.2;

  std::size_t hysac_n_bins = 30;
  std::size_t hysac_n_seeds = 10;
  std::size_t hysac_min_points = 100;
  double hysac_distance_threshold_m = 0.05;
  double hysac_min_inlier_ratio = 0.05;
  std::size_t hysac_max_attempts = 10;

  double topology_intersection_radius_m = 0.3;
  double topology_merge_distance_m = 0.15;
  double topology_collinear_angle_tol_deg = 5.0;
  double topology_collinear_lateral_tol_m = 0.05;
  double topology_perpendicular_tol_deg = 10.0;
  std::size_t topology_max_iterations = 10;

  double door_wall_margin_m = 0.05;
  double door_expansion_radius_m = 1.0;
  double door_link_distance_m = 0.15;
  double door_max_width_m = 1.4;
  double door_split_spacing_m = 0.1;
  std::size_t door_min_points = 50;

  double column_dbscan_eps_m = 0.2;
  std::size_t column_dbscan_min_pts = 5;
  std::size_t column_min_cluster_points = 100;
  std::size_t column_curvature_k = 30;
  double column_cv_threshold = 0.5;
  double column_ransac_threshold_m = 0.02;
  std::size_t column_ransac_iterations = 500;
  double column_max_radius_m = 2.0;

  double eval_voxel_size_m = 0.05;
  std::string io_label_remap;
  std::uint64_t seed = 42;

  bool operator==(const PipelineConfig&) const = default;

  /// Throws InvalidConfig on non-positive dimensions or counts.
  void validate() const;

  StoreyParams storey_params() const;
  HysacConfig hysac() const;
  WallAssemblyParams wall_assembly() const;
  TopologyConfig topology() const;
  DoorParams doors() const;
  ColumnParams columns() const;
};

/// Flat JSON object with sorted dotted keys ("hysac.n_bins", ...).
std::string config_to_json(const PipelineConfig& config);

/// Missing keys keep their defaults; unknown keys and wrong value types throw
/// InvalidConfig, malformed JSON throws ParseError. The result is validated.
PipelineConfig config_from_json(const std::string& text);

PipelineConfig load_config(const std::filesystem::path& path);

}  // namespace scanbim
