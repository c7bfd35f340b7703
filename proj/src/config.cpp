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

#include "scanbim/config.hpp"

#include "scanbim/error.hpp"
#include "scanbim/fileio.hpp"

#include <nlohmann/json.hpp>

#include <variant>

namespace scanbim {

namespace {

using Field = std::variant<double PipelineConfig::*, std::size_t PipelineConfig::*, std::string PipelineConfig::*>;

struct FieldSpec {
  const char* key;
  Field field;
};

using C = PipelineConfig;

const FieldSpec kFields[] = {
    {"column.curvature_k", &C::column_curvature_k},
    {"column.cv_threshold", &C::column_cv_threshold},
    {"column.dbscan_eps_m", &C::column_dbscan_eps_m},
    {"column.dbscan_min_pts", &C::column_dbscan_min_pts},
    {"column.max_radius_m", &C::column_max_radius_m},
    {"column.min_cluster_points", &C::column_min_cluster_points},
    {"column.ransac_iterations", &C::column_ransac_iterations},
    {"column.ransac_threshold_m", &C::column_ransac_threshold_m},
    {"door.expansion_radius_m", &C::door_expansion_radius_m},
    {"door.link_distance_m", &C::door_link_distance_m},
    {"door.max_width_m", &C::door_max_width_m},
    {"door.min_points", &C::door_min_points},
    {"door.split_spacing_m", &C::door_split_spacing_m},
    {"door.wall_margin_m", &C::door_wall_margin_m},
    {"eval.voxel_size_m", &C::eval_voxel_size_m},
    {"hysac.distance_threshold_m", &C::hysac_distance_threshold_m},
    {"hysac.max_attempts", &C::hysac_max_attempts},
    {"hysac.min_inlier_ratio", &C::hysac_min_inlier_ratio},
    {"hysac.min_points", &C::hysac_min_points},
    {"hysac.n_bins", &C::hysac_n_bins},
    {"hysac.n_seeds", &C::hysac_n_seeds},
    {"io.label_remap", &C::io_label_remap},
    {"storey.bin_height_m", &C::storey_bin_height_m},
    {"storey.min_height_m", &C::storey_min_height_m},
    {"storey.peak_min_fraction", &C::storey_peak_min_fraction},
    {"topology.collinear_angle_tol_deg", &C::topology_collinear_angle_tol_deg},
    {"topology.collinear_lateral_tol_m", &C::topology_collinear_lateral_tol_m},
    {"topology.intersection_radius_m", &C::topology_intersection_radius_m},
    {"topology.max_iterations", &C::topology_max_iterations},
    {"topology.merge_distance_m", &C::topology_merge_distance_m},
    {"topology.perpendicular_tol_deg", &C::topology_perpendicular_tol_deg},
    {"wall.dbscan_eps_m", &C::wall_dbscan_eps_m},
    {"wall.dbscan_min_pts", &C::wall_dbscan_min_pts},
    {"wall.default_thickness_m", &C::wall_default_thickness_m},
    {"wall.max_thickness_m", &C::wall_max_thickness_m},
    {"wall.normal_k", &C::wall_normal_k},
    {"wall.parallel_angle_deg", &C::wall_parallel_angle_deg},
    {"wall.vertical_tol_deg", &C::wall_vertical_tol_deg},
};

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorKind::InvalidConfig, what); }

}  // namespace

void PipelineConfig::validate() const {
  for (const auto& f : kFields) {
    const std::string key = f.key;
    if (const auto* d = std::get_if<double C::*>(&f.field)) {
      const double v = this->*(*d);
      if (!(v > 0.0) || !std::isfinite(v)) bad(key + " must be positive");
    } else if (const auto* n = std::get_if<std::size_t C::*>(&f.field)) {
      if (this->*(*n) == 0) bad(key + " must be positive");
    }
  }
  if (storey_peak_min_fraction >= 1.0) bad("storey.peak_min_fraction must be below 1");
  if (hysac_min_inlier_ratio > 1.0) bad("hysac.min_inlier_ratio must be at most 1");
  if (wall_normal_k < 3) bad("wall.normal_k must be at least 3");
  if (column_curvature_k < 4) bad("column.curvature_k must be at least 4");
  if (hysac_n_seeds < 3) bad("hysac.n_seeds must be at least 3");
  if (wall_default_thickness_m > wall_max_thickness_m) bad("wall.default_thickness_m exceeds wall.max_thickness_m");
  for (double deg : {wall_vertical_tol_deg, wall_parallel_angle_deg, topology_collinear_angle_tol_deg,
                     topology_perpendicular_tol_deg}) {
    if (deg >= 90.0) bad("angle tolerances must be below 90 degrees");
  }
}

StoreyParams PipelineConfig::storey_params() const {
  return {storey_bin_height_m, storey_peak_min_fraction, storey_min_height_m};
}

HysacConfig PipelineConfig::hysac() const {
  HysacConfig h;
  h.n_bins = hysac_n_bins;
  h.n_seeds = hysac_n_seeds;
  h.min_points = hysac_min_points;
  h.distance_threshold = hysac_distance_threshold_m;
  h.min_inlier_ratio = hysac_min_inlier_ratio;
  h.max_attempts = hysac_max_attempts;
  return h;
}

WallAssemblyParams PipelineConfig::wall_assembly() const {
  return {deg_to_rad(wall_parallel_angle_deg), wall_max_thickness_m, wall_default_thickness_m};
}

TopologyConfig PipelineConfig::topology() const {
  TopologyConfig t;
  t.intersection_radius = topology_intersection_radius_m;
  t.merge_distance = topology_merge_distance_m;
  t.collinear_angle_tol = deg_to_rad(topology_collinear_angle_tol_deg);
  t.collinear_lateral_tol = topology_collinear_lateral_tol_m;
  t.perpendicular_tol = deg_to_rad(topology_perpendicular_tol_deg);
  t.max_iterations = static_cast<int>(topology_max_iterations);
  return t;
}

DoorParams PipelineConfig::doors() const {
  return {door_wall_margin_m, door_expansion_radius_m, door_link_distance_m,
          door_max_width_m,   door_split_spacing_m,    door_min_points};
}

ColumnParams PipelineConfig::columns() const {
  ColumnParams c;
  c.dbscan_eps = column_dbscan_eps_m;
  c.dbscan_min_pts = column_dbscan_min_pts;
  c.min_cluster_points = column_min_cluster_points;
  c.curvature_k = column_curvature_k;
  c.cv_threshold = column_cv_threshold;
  c.ransac_threshold = column_ransac_threshold_m;
  c.ransac_iterations = column_ransac_iterations;
  c.max_radius = column_max_radius_m;
  return c;
}

std::string config_to_json(const PipelineConfig& config) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& f : kFields) {
    std::visit([&](auto member) { j[f.key] = config.*member; }, f.field);
  }
  j["seed"] = config.seed;
  return j.dump(2) + "\n";
}

PipelineConfig config_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::ParseError, std::string("config: ") + e.what());
  }
  if (!j.is_object()) bad("config must be a JSON object");
  PipelineConfig config;
  for (const auto& [key, value] : j.items()) {
    if (key == "seed") {
      if (!value.is_number_unsigned()) bad("seed must be a non-negative integer");
      config.seed = value.get<std::uint64_t>();
      continue;
    }
    const FieldSpec* spec = nullptr;
    for (const auto& f : kFields) {
      if (key == f.key) spec = &f;
    }
    if (!spec) bad("unknown config key: " + key);
    std::visit(
        [&](auto member) {
          using T = std::remove_reference_t<decltype(config.*member)>;
          if constexpr (std::is_same_v<T, std::string>) {
            if (!value.is_string()) bad(key + " must be a string");
          } else if constexpr (std::is_same_v<T, double>) {
            if (!value.is_number()) bad(key + " must be a number");
          } else {
            if (!value.is_number_unsigned()) bad(key + " must be a non-negative integer");
          }
          config.*member = value.get<T>();
        },
        spec->field);
  }
  config.validate();
  return config;
}

PipelineConfig load_config(const std::filesystem::path& path) { return config_from_json(read_file(path)); }

}  // namespace scanbim
