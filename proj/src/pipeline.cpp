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

#include "scanbim/pipeline.hpp"

#include "scanbim/columns.hpp"
#include "scanbim/doors.hpp"
#include "scanbim/error.hpp"
#include "scanbim/local_geometry.hpp"
#include "scanbim/storeys.hpp"
#include "scanbim/topology.hpp"
#include "scanbim/walls.hpp"

#include <omp.h>

#include <chrono>
#include <exception>
#include <random>

namespace scanbim {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

template <typename F>
auto staged(const std::string& stage, F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    throw Error(e.kind(), stage + ": " + e.message());
  }
}

struct StoreyOutput {
  std::vector<WallInstance> walls;
  std::vector<DoorInstance> doors;
  std::vector<ColumnInstance> columns;
  StoreyReport report;
  std::vector<StageTiming> timings;
};

enum Stage { kWallStage = 1, kColumnStage = 2 };

}  // namespace

std::uint64_t stream_seed(std::uint64_t seed, int storey, int stage) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(storey), static_cast<std::uint32_t>(stage)};
  std::uint32_t out[2];
  seq.generate(out, out + 2);
  return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

PipelineResult reconstruct(const LabeledPointCloud& cloud, const PipelineConfig& config, const RunOptions& options) {
  config.validate();
  if (cloud.labels.size() != cloud.points.size()) {
    throw Error(ErrorKind::DegenerateInput, "labels and points differ in length");
  }
  if (options.threads > 0) omp_set_num_threads(options.threads);

  PipelineResult result;
  BimModel& model = result.model;
  model.seed = config.seed;
  model.config_json = config_to_json(config);

  auto t0 = Clock::now();
  model.storeys = staged("storeys", [&] { return detect_storeys(cloud, config.storey_params()); });
  const std::vector<int> storey_of = assign_storeys(cloud.points, model.storeys);
  result.timings.push_back({"storeys", -1, seconds_since(t0)});

  // Wall normals and the Manhattan frame over the whole building.
  t0 = Clock::now();
  const std::vector<Index> wall_idx = cloud.indices_of(Label::Wall);
  const std::vector<Point3> wall_pts = cloud.gather(wall_idx);
  std::vector<Eigen::Vector3d> normals;
  if (!wall_pts.empty()) {
    normals = staged("wall normals", [&] { return estimate_normals(wall_pts, config.wall_normal_k); });
    result.manhattan_angle = staged("manhattan frame", [&] {
      return estimate_manhattan_frame(normals, deg_to_rad(config.wall_vertical_tol_deg));
    });
  }
  result.timings.push_back({"wall normals", -1, seconds_since(t0)});

  const int n_storeys = static_cast<int>(model.storeys.size());
  std::vector<std::vector<Index>> wall_of(n_storeys), door_of(n_storeys), column_of(n_storeys);
  for (std::size_t k = 0; k < wall_idx.size(); ++k) wall_of[storey_of[wall_idx[k]]].push_back(static_cast<Index>(k));
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    if (cloud.labels[i] == Label::Door) door_of[storey_of[i]].push_back(static_cast<Index>(i));
    if (cloud.labels[i] == Label::Column) column_of[storey_of[i]].push_back(static_cast<Index>(i));
  }

  const double frame = result.manhattan_angle;
  const Vec2 frame_x(std::cos(frame), std::sin(frame));
  const Vec2 frame_y(-std::sin(frame), std::cos(frame));
  const HysacConfig hysac = config.hysac();
  const WallAssemblyParams assembly = config.wall_assembly();
  const TopologyConfig topology = config.topology();
  const DoorParams door_params = config.doors();
  const ColumnParams column_params = config.columns();
  const SeedStrategy strategy = options.baseline ? SeedStrategy::Uniform : SeedStrategy::Histogram;

  std::vector<StoreyOutput> outputs(n_storeys);
  std::vector<std::exception_ptr> failures(n_storeys);

#pragma omp parallel for schedule(dynamic, 1)
  for (int s = 0; s < n_storeys; ++s) {
    try {
      StoreyOutput& out = outputs[s];
      const std::string where = " (storey " + std::to_string(s) + ")";
      out.report.storey = s;
      out.report.wall_points = wall_of[s].size();
      out.report.door_points = door_of[s].size();
      out.report.column_points = column_of[s].size();

      auto t = Clock::now();
      std::vector<Point3> pts;
      std::vector<Eigen::Vector3d> nrm;
      for (Index k : wall_of[s]) {
        pts.push_back(wall_pts[k]);
        nrm.push_back(normals[k]);
      }
      std::mt19937_64 rng(stream_seed(config.seed, s, kWallStage));
      const DirectionSplit split = split_by_direction(nrm, frame, deg_to_rad(config.wall_vertical_tol_deg));
      std::vector<WallInstance> walls;
      for (int axis = 0; axis < 2; ++axis) {
        const auto& group = axis == 0 ? split.along_x : split.along_y;
        const Vec2 normal_axis = axis == 0 ? frame_y : frame_x;
        std::vector<Point3> group_pts;
        group_pts.reserve(group.size());
        for (Index k : group) group_pts.push_back(pts[k]);
        if (group_pts.empty()) continue;
        const auto clusters = staged("wall clustering" + where, [&] {
          return cluster_walls_per_axis(group_pts, config.wall_dbscan_eps_m, config.wall_dbscan_min_pts);
        });
        for (const auto& cluster : clusters) {
          std::vector<Point3> cpts;
          cpts.reserve(cluster.point_indices.size());
          for (Index k : cluster.point_indices) cpts.push_back(group_pts[k]);
          const auto planes =
              staged("plane extraction" + where, [&] { return hysac_planes(cpts, hysac, normal_axis, rng, strategy); });
          out.report.planes += planes.size();
          auto assembled = staged("wall boxing" + where, [&] { return assemble_wall_instances(planes, cpts, assembly); });
          for (auto& w : assembled) walls.push_back(std::move(w));
        }
      }
      for (std::size_t i = 0; i < walls.size(); ++i) {
        walls[i].id = static_cast<ElementId>(i);
        walls[i].storey = s;
      }
      out.report.walls_before_refinement = walls.size();
      out.timings.push_back({"walls", s, seconds_since(t)});

      t = Clock::now();
      if (!options.baseline) {
        const TopologyResult refined = staged("topology" + where, [&] { return refine_topology(walls, topology); });
        walls = refined.walls;
        out.report.refinement_iterations = refined.iterations;
        out.report.refinement_converged = refined.converged;
      }
      out.timings.push_back({"topology", s, seconds_since(t)});

      t = Clock::now();
      const std::vector<Point3> door_pts = cloud.gather(door_of[s]);
      out.doors = staged("doors" + where, [&] { return reconstruct_doors(door_pts, walls, door_params); });
      out.timings.push_back({"doors", s, seconds_since(t)});

      t = Clock::now();
      const std::vector<Point3> column_pts = cloud.gather(column_of[s]);
      out.columns = staged("columns" + where, [&] {
        return reconstruct_columns(column_pts, column_params, stream_seed(config.seed, s, kColumnStage));
      });
      for (auto& c : out.columns) c.storey = s;
      out.timings.push_back({"columns", s, seconds_since(t)});
      out.walls = std::move(walls);
    } catch (...) {
      failures[s] = std::current_exception();
    }
  }
  for (const auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }

  // Global ids: walls, then doors, then columns, each in storey order.
  ElementId next = 0;
  std::vector<std::vector<ElementId>> wall_ids(n_storeys);
  for (int s = 0; s < n_storeys; ++s) {
    for (auto& w : outputs[s].walls) {
      ElementId local = w.id;
      if (wall_ids[s].size() <= local) wall_ids[s].resize(local + 1, 0);
      wall_ids[s][local] = next;
      w.id = next++;
      model.walls.push_back(w);
    }
  }
  for (int s = 0; s < n_storeys; ++s) {
    for (auto& d : outputs[s].doors) {
      d.parent_wall_id = wall_ids[s].at(d.parent_wall_id);
      d.id = next++;
      model.doors.push_back(d);
    }
  }
  for (int s = 0; s < n_storeys; ++s) {
    for (auto& c : outputs[s].columns) {
      c.id = next++;
      model.columns.push_back(c);
    }
  }
  for (auto& o : outputs) {
    result.storeys.push_back(o.report);
    for (auto& t : o.timings) result.timings.push_back(t);
  }
  model.validate();
  return result;
}

}  // namespace scanbim
