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

// Command-line front end: reconstruct, evaluate, synth, info.

#include "scanbim/commands.hpp"

#include <CLI11.hpp>
#include <omp.h>

#include <iostream>

namespace {

std::optional<scanbim::CloudFormat> format_option(const std::string& name) {
  if (name.empty()) return std::nullopt;
  return scanbim::parse_cloud_format(name);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"scanbim: labelled point clouds to BIM models"};
  app.require_subcommand(1);

  std::string config_path, format_name, out_dir, report_path, cloud_path, pred_path, gt_path, spec_path, info_path;
  std::uint64_t seed = 0;
  int threads = 0;
  bool baseline = false;
  double voxel_size = 0.05;

  auto* rec = app.add_subcommand("reconstruct", "Reconstruct walls, doors and columns from a labelled cloud");
  rec->add_option("cloud", cloud_path, "Input point cloud (.ply or xyz-label)")->required();
  rec->add_option("-o,--out", out_dir, "Output directory")->required();
  rec->add_option("--config", config_path, "Pipeline configuration (JSON)");
  auto* rec_seed = rec->add_option("--seed", seed, "RNG seed (overrides the configuration)");
  rec->add_option("--format", format_name, "Input format: ply or xyz");
  rec->add_flag("--baseline", baseline, "Plain RANSAC seeding, no topology refinement");
  rec->add_option("--threads", threads, "OpenMP threads (0 = default)")->check(CLI::NonNegativeNumber);

  auto* ev = app.add_subcommand("evaluate", "Compare a predicted model with ground truth");
  ev->add_option("pred", pred_path, "Predicted model JSON")->required();
  ev->add_option("gt", gt_path, "Ground-truth model JSON")->required();
  ev->add_option("--voxel-size", voxel_size, "vIoU voxel size in metres")->check(CLI::PositiveNumber);
  ev->add_option("-o,--out", report_path, "Report JSON path");
  ev->add_option("--threads", threads, "OpenMP threads (0 = default)")->check(CLI::NonNegativeNumber);

  auto* syn = app.add_subcommand("synth", "Generate a synthetic labelled scene and its ground truth");
  syn->add_option("spec", spec_path, "Scene description JSON")->required();
  syn->add_option("-o,--out", out_dir, "Output directory")->required();
  auto* syn_seed = syn->add_option("--seed", seed, "RNG seed (overrides the scene file)");
  syn->add_option("--format", format_name, "Cloud format: ply or xyz");

  auto* info = app.add_subcommand("info", "Summarise a point cloud, model or IFC file");
  info->add_option("path", info_path, "File to inspect")->required();
  info->add_option("--format", format_name, "Treat the file as a point cloud of this format");

  CLI11_PARSE(app, argc, argv);

  const char* stage = "";
  try {
    if (*rec) {
      stage = "reconstruct";
      scanbim::ReconstructRequest req;
      req.cloud = cloud_path;
      if (!config_path.empty()) req.config = config_path;
      req.out_dir = out_dir;
      if (rec_seed->count() > 0) req.seed = seed;
      req.format = format_option(format_name);
      req.options.baseline = baseline;
      req.options.threads = threads;
      const auto m = scanbim::cmd_reconstruct(req);
      std::cout << "storeys " << m.run.model.storeys.size() << ", walls " << m.run.model.walls.size() << ", doors "
                << m.run.model.doors.size() << ", columns " << m.run.model.columns.size() << "\n"
                << "wrote " << m.model_path << ", " << m.ifc_path << ", " << m.manifest_path << "\n";
    } else if (*ev) {
      stage = "evaluate";
      if (threads > 0) omp_set_num_threads(threads);
      std::optional<std::filesystem::path> out;
      if (!report_path.empty()) out = report_path;
      const auto report = scanbim::cmd_evaluate(pred_path, gt_path, voxel_size, out);
      std::cout << scanbim::format_report(report);
    } else if (*syn) {
      stage = "synth";
      scanbim::SynthRequest req;
      req.spec = spec_path;
      req.out_dir = out_dir;
      if (syn_seed->count() > 0) req.seed = seed;
      req.format = format_option(format_name).value_or(scanbim::CloudFormat::Ply);
      const auto out = scanbim::cmd_synth(req);
      std::cout << "wrote " << out.cloud.string() << ", " << out.ground_truth.string() << "\n";
    } else if (*info) {
      stage = "info";
      std::cout << scanbim::cmd_info(info_path, format_option(format_name));
    }
  } catch (const scanbim::Error& e) {
    std::cerr << "scanbim " << stage << ": " << e.what() << "\n";
    return scanbim::exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "scanbim " << stage << ": " << e.what() << "\n";
    return 2;
  }
  return 0;
}
