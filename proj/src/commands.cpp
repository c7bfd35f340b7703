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

#include "scanbim/commands.hpp"

#include "scanbim/bim_json.hpp"
#include "scanbim/config.hpp"
#include "scanbim/fileio.hpp"
#include "scanbim/ifc_export.hpp"
#include "scanbim/synth.hpp"

#include <nlohmann/json.hpp>

#include <sstream>

namespace scanbim {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw Error(ErrorKind::IoError, "cannot create directory " + dir.string());
}

void require_file(const fs::path& path) {
  std::error_code ec;
  if (!fs::is_regular_file(path, ec)) throw Error(ErrorKind::IoError, "no such file: " + path.string());
}

}  // namespace

int exit_code(ErrorKind kind) { return 10 + static_cast<int>(kind); }

std::string manifest_to_json(const RunManifest& m) {
  json j;
  j["inputs"] = {{"cloud", m.cloud_path}, {"config", m.config_path}};
  j["outputs"] = {{"model", m.model_path}, {"ifc", m.ifc_path}, {"manifest", m.manifest_path}};
  j["seed"] = m.seed;
  j["baseline"] = m.baseline;
  j["seed_strategy"] = m.baseline ? "uniform" : "histogram";
  j["topology_refinement"] = !m.baseline;
  j["threads"] = m.threads;
  j["manhattan_angle_deg"] = rad_to_deg(m.run.manhattan_angle);
  j["counts"] = {{"points", m.points},
                 {"unknown_labels", m.unknown_labels},
                 {"storeys", m.run.model.storeys.size()},
                 {"walls", m.run.model.walls.size()},
                 {"doors", m.run.model.doors.size()},
                 {"columns", m.run.model.columns.size()}};
  j["timings"] = json::array();
  for (const auto& t : m.run.timings) {
    j["timings"].push_back({{"stage", t.stage}, {"storey", t.storey}, {"seconds", t.seconds}});
  }
  j["storeys"] = json::array();
  for (const auto& s : m.run.storeys) {
    j["storeys"].push_back({{"storey", s.storey},
                            {"wall_points", s.wall_points},
                            {"door_points", s.door_points},
                            {"column_points", s.column_points},
                            {"planes", s.planes},
                            {"walls_before_refinement", s.walls_before_refinement},
                            {"refinement_iterations", s.refinement_iterations},
                            {"refinement_converged", s.refinement_converged}});
  }
  return j.dump(2) + "\n";
}

RunManifest cmd_reconstruct(const ReconstructRequest& req) {
  require_file(req.cloud);
  PipelineConfig config;
  if (req.config) {
    require_file(*req.config);
    config = load_config(*req.config);
  }
  if (req.seed) config.seed = *req.seed;
  const LabelMap labels =
      config.io_label_remap.empty() ? LabelMap::standard() : LabelMap::with_overrides(config.io_label_remap);
  const CloudFormat format = req.format.value_or(cloud_format_from_path(req.cloud));
  CloudReadResult input = read_point_cloud(req.cloud, format, labels);

  RunManifest m;
  m.cloud_path = req.cloud.string();
  m.config_path = req.config ? req.config->string() : "";
  m.model_path = (req.out_dir / "model.json").string();
  m.ifc_path = (req.out_dir / "model.ifc").string();
  m.manifest_path = (req.out_dir / "manifest.json").string();
  m.seed = config.seed;
  m.baseline = req.options.baseline;
  m.threads = req.options.threads;
  m.points = input.cloud.size();
  m.unknown_labels = input.unknown_labels;
  m.run = reconstruct(input.cloud, config, req.options);

  const std::string model_text = model_to_json(m.run.model);
  const std::string ifc_text = model_to_ifc(m.run.model);
  const std::string manifest_text = manifest_to_json(m);
  ensure_dir(req.out_dir);
  write_file_atomic(m.model_path, model_text);
  write_file_atomic(m.ifc_path, ifc_text);
  write_file_atomic(m.manifest_path, manifest_text);
  return m;
}

EvalReport cmd_evaluate(const fs::path& pred, const fs::path& gt, double voxel_size,
                        const std::optional<fs::path>& report_path) {
  const BimModel p = read_bim_json(pred);
  const BimModel g = read_bim_json(gt);
  const EvalReport report = evaluate_models(p, g, voxel_size);
  if (report_path) {
    if (report_path->has_parent_path()) ensure_dir(report_path->parent_path());
    write_file_atomic(*report_path, report_to_json(report));
  }
  return report;
}

SynthOutputs cmd_synth(const SynthRequest& req) {
  require_file(req.spec);
  SceneSpec spec = load_scene(req.spec);
  if (req.seed) spec.seed = *req.seed;
  const SynthScene scene = generate(spec);
  SynthOutputs out;
  out.cloud = req.out_dir / (req.format == CloudFormat::Ply ? "cloud.ply" : "cloud.xyz");
  out.ground_truth = req.out_dir / "gt.json";
  const std::string cloud_text =
      req.format == CloudFormat::Ply ? serialize_ply(scene.cloud) : serialize_xyz_label(scene.cloud);
  const std::string gt_text = model_to_json(scene.ground_truth);
  ensure_dir(req.out_dir);
  write_file_atomic(out.cloud, cloud_text);
  write_file_atomic(out.ground_truth, gt_text);
  return out;
}

std::string cmd_info(const fs::path& path, std::optional<CloudFormat> format) {
  require_file(path);
  std::ostringstream out;
  std::string ext = path.extension().string();
  for (auto& c : ext) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (!format && ext == ".json") {
    const BimModel m = read_bim_json(path);
    out << "model " << path.string() << "\n";
    out << "  seed " << m.seed << "\n";
    out << "  storeys " << m.storeys.size() << "\n";
    for (const auto& s : m.storeys) out << "    " << s.index << ": z " << s.floor_z << " .. " << s.ceiling_z << "\n";
    out << "  walls " << m.walls.size() << "\n  doors " << m.doors.size() << "\n  columns " << m.columns.size() << "\n";
    return out.str();
  }
  if (!format && ext == ".ifc") {
    const SpfFile f = parse_spf(read_file(path));
    const IfcSpatialTree tree = recover_spatial_tree(f);
    out << "ifc " << path.string() << "\n";
    out << "  instances " << f.entities.size() << "\n";
    out << "  storeys " << tree.storeys.size() << "\n";
    for (const char* t : {"IFCWALL", "IFCDOOR", "IFCCOLUMN"}) out << "  " << t << " " << f.count(t) << "\n";
    const auto dangling = f.dangling_references();
    out << "  dangling references " << dangling.size() << "\n";
    return out.str();
  }
  const CloudReadResult r = read_point_cloud(path, format.value_or(cloud_format_from_path(path)));
  std::size_t counts[kLabelCount] = {};
  Point3 lo = Point3::Constant(std::numeric_limits<double>::infinity());
  Point3 hi = -lo;
  for (std::size_t i = 0; i < r.cloud.size(); ++i) {
    ++counts[static_cast<int>(r.cloud.labels[i])];
    lo = lo.cwiseMin(r.cloud.points[i]);
    hi = hi.cwiseMax(r.cloud.points[i]);
  }
  out << "point cloud " << path.string() << "\n";
  out << "  points " << r.cloud.size() << (r.cloud.has_colors() ? " (with colors)" : "") << "\n";
  for (int l = 0; l < kLabelCount; ++l) out << "  " << to_string(static_cast<Label>(l)) << " " << counts[l] << "\n";
  out << "  unknown labels " << r.unknown_labels << "\n";
  if (r.cloud.size() > 0) {
    out << "  bounds (" << lo.x() << ", " << lo.y() << ", " << lo.z() << ") .. (" << hi.x() << ", " << hi.y() << ", "
        << hi.z() << ")\n";
  }
  return out.str();
}

}  // namespace scanbim
