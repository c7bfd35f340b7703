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

#include "scanbim/config.hpp"
#include "scanbim/model.hpp"

#include <string>
#include <vector>

namespace scanbim {

struct RunOptions {
  /// Plain RANSAC seeding and no topology refinement.
  bool baseline = false;
  /// OpenMP thread count; 0 keeps the runtime default.
  int threads = 0;
};

struct StageTiming {
  std::string stage;
  int storey = -1;  // -1 for whole-cloud stages
  double seconds = 0.0;
};

struct StoreyReport {
  int storey = 0;
  std::size_t wall_points = 0;
  std::size_t door_points = 0;
  std::size_t column_points = 0;
  std::size_t planes = 0;
  std::size_t walls_before_refinement = 0;
  int refinement_iterations = 0;
  bool refinement_converged = true;
};

struct PipelineResult {
  BimModel model;
  double manhattan_angle = 0.0;  // radians in [0, pi/2)
  std::vector<StageTiming> timings;
  std::vector<StoreyReport> storeys;
};

/// Storeys, then per storey walls (normals, direction split, per-axis
/// DBSCAN, plane extraction, boxing), topology refinement, doors and
/// columns. Storeys run in parallel with a storey-specific RNG stream, so the
/// result does not depend on the thread count.
///
/// Errors keep their kind; the message names the failing stage.
PipelineResult reconstruct(const LabeledPointCloud& cloud, const PipelineConfig& config, const RunOptions& options = {});

/// Seed of the RNG stream used for one storey's stage.
std::uint64_t stream_seed(std::uint64_t seed, int storey, int stage);

}  // namespace scanbim
