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

#include "scanbim/error.hpp"
#include "scanbim/metrics.hpp"
#include "scanbim/pipeline.hpp"
#include "scanbim/point_cloud_io.hpp"

#include <filesystem>
#include <optional>
#include <string>

namespace scanbim {

/// Process exit code for a failure kind (10 + declaration order).
int exit_code(ErrorKind kind);

struct ReconstructRequest {
  std::filesystem::path cloud;
  std::optional<std::filesystem::path> config;
  std::filesystem::path out_dir;
  std::optional<std::uint64_t> seed;
  std::optional<CloudFormat> format;
  RunOptions options;
};

struct RunManifest {
  std::string cloud_path;
  std::string config_path;
  std::string model_path;
  std::string ifc_path;
  std::string manifest_path;
  std::uint64_t seed = 0;
  bool baseline = false;
  int threads = 0;
  std::size_t points = 0;
  std::size_t unknown_labels = 0;
  PipelineResult run;
};

std::string manifest_to_json(const RunManifest& manifest);

/// Reads the cloud, runs the pipeline and writes model.json, model.ifc and
/// manifest.json into out_dir. Nothing is written unless the whole run
/// succeeds.
RunManifest cmd_reconstruct(const ReconstructRequest& request);

/// Evaluates two model files; writes the JSON report when `report_path` is set.
EvalReport cmd_evaluate(const std::filesystem::path& pred, const std::filesystem::path& gt, double voxel_size,
                        const std::optional<std::filesystem::path>& report_path);

struct SynthRequest {
  std::filesystem::path spec;
  std::filesystem::path out_dir;
  std::optional<std::uint64_t> seed;
  CloudFormat format = CloudFormat::Ply;
};

struct SynthOutputs {
  std::filesystem::path cloud;
  std::filesystem::path ground_truth;
};

/// Generates the scene and writes cloud.ply (or cloud.xyz) and gt.json.
SynthOutputs cmd_synth(const SynthRequest& request);

/// Human-readable summary of a point cloud, model JSON or IFC file.
std::string cmd_info(const std::filesystem::path& path, std::optional<CloudFormat> format = std::nullopt);

}  // namespace scanbim
