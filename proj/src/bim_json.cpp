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

#include "scanbim/bim_json.hpp"

#include "scanbim/error.hpp"
#include "scanbim/fileio.hpp"

#include <nlohmann/json.hpp>

namespace scanbim {

using nlohmann::json;

namespace {

json vec3(const Eigen::Vector3d& v) { return json::array({v.x(), v.y(), v.z()}); }

Eigen::Vector3d read_vec3(const json& j) {
  if (!j.is_array() || j.size() != 3) throw Error(ErrorKind::ParseError, "expected a 3-vector");
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

json box_json(const Hobb& b) {
  return {{"center", vec3(b.center)}, {"length", b.length}, {"width", b.width}, {"height", b.height}, {"yaw", b.yaw}};
}

Hobb read_box(const json& j) {
  Hobb b;
  b.center = read_vec3(j.at("center"));
  b.length = j.at("length").get<double>();
  b.width = j.at("width").get<double>();
  b.height = j.at("height").get<double>();
  b.yaw = j.at("yaw").get<double>();
  return b;
}

json cylinder_json(const Cylinder& c) {
  return {{"base_center", vec3(c.base_center)}, {"radius", c.radius}, {"height", c.height}};
}

Cylinder read_cylinder(const json& j) {
  Cylinder c;
  c.base_center = read_vec3(j.at("base_center"));
  c.radius = j.at("radius").get<double>();
  c.height = j.at("height").get<double>();
  return c;
}

}  // namespace

std::string model_to_json(const BimModel& model) {
  json j;
  j["schema"] = {{"name", kModelSchemaName}, {"version", kModelSchemaVersion}};
  j["seed"] = model.seed;
  j["config"] = model.config_json;
  j["storeys"] = json::array();
  for (const auto& s : model.storeys) {
    j["storeys"].push_back({{"index", s.index}, {"floor_z", s.floor_z}, {"ceiling_z", s.ceiling_z}});
  }
  j["walls"] = json::array();
  for (const auto& w : model.walls) {
    json planes = json::array();
    for (const auto& p : w.source_planes) {
      planes.push_back({{"normal", vec3(p.normal)}, {"offset", p.offset}, {"inlier_count", p.inlier_count}});
    }
    j["walls"].push_back({{"id", w.id}, {"storey", w.storey}, {"box", box_json(w.box)}, {"source_planes", planes}});
  }
  j["doors"] = json::array();
  for (const auto& d : model.doors) {
    j["doors"].push_back({{"id", d.id}, {"parent_wall_id", d.parent_wall_id}, {"box", box_json(d.box)}});
  }
  j["columns"] = json::array();
  for (const auto& c : model.columns) {
    json cj = {{"id", c.id}, {"storey", c.storey}};
    if (const auto* cyl = std::get_if<Cylinder>(&c.geometry)) {
      cj["shape"] = "round";
      cj["cylinder"] = cylinder_json(*cyl);
    } else {
      cj["shape"] = "rectangular";
      cj["box"] = box_json(std::get<Hobb>(c.geometry));
    }
    j["columns"].push_back(std::move(cj));
  }
  return j.dump(2) + "\n";
}

BimModel model_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::ParseError, std::string("model: ") + e.what());
  }
  BimModel model;
  try {
    const json& schema = j.at("schema");
    if (schema.at("name").get<std::string>() != kModelSchemaName ||
        schema.at("version").get<int>() != kModelSchemaVersion) {
      throw Error(ErrorKind::SchemaVersionMismatch,
                  "model schema " + schema.at("name").get<std::string>() + " v" +
                      std::to_string(schema.at("version").get<int>()) + " is not " + kModelSchemaName + " v" +
                      std::to_string(kModelSchemaVersion));
    }
    model.seed = j.at("seed").get<std::uint64_t>();
    model.config_json = j.at("config").get<std::string>();
    for (const auto& s : j.at("storeys")) {
      model.storeys.push_back({s.at("floor_z").get<double>(), s.at("ceiling_z").get<double>(), s.at("index").get<int>()});
    }
    for (const auto& w : j.at("walls")) {
      WallInstance wall;
      wall.id = w.at("id").get<ElementId>();
      wall.storey = w.at("storey").get<int>();
      wall.box = read_box(w.at("box"));
      for (const auto& p : w.at("source_planes")) {
        wall.source_planes.push_back(
            {read_vec3(p.at("normal")), p.at("offset").get<double>(), p.at("inlier_count").get<std::uint32_t>()});
      }
      model.walls.push_back(std::move(wall));
    }
    for (const auto& d : j.at("doors")) {
      model.doors.push_back({d.at("id").get<ElementId>(), d.at("parent_wall_id").get<ElementId>(), read_box(d.at("box"))});
    }
    for (const auto& c : j.at("columns")) {
      ColumnInstance col;
      col.id = c.at("id").get<ElementId>();
      col.storey = c.at("storey").get<int>();
      const std::string shape = c.at("shape").get<std::string>();
      if (shape == "round") {
        col.geometry = read_cylinder(c.at("cylinder"));
      } else if (shape == "rectangular") {
        col.geometry = read_box(c.at("box"));
      } else {
        throw Error(ErrorKind::ParseError, "unknown column shape " + shape);
      }
      model.columns.push_back(std::move(col));
    }
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ParseError, std::string("model: ") + e.what());
  }
  model.validate();
  return model;
}

void write_bim_json(const BimModel& model, const std::filesystem::path& path) {
  write_file_atomic(path, model_to_json(model));
}

BimModel read_bim_json(const std::filesystem::path& path) { return model_from_json(read_file(path)); }

std::string report_to_json(const EvalReport& report) {
  json j;
  j["voxel_size_m"] = report.voxel_size;
  j["classes"] = json::array();
  for (const auto& c : report.classes) {
    json matches = json::array();
    for (const auto& m : c.matching.matches) matches.push_back({{"pred", m.pred}, {"gt", m.gt}, {"iou", m.iou}});
    json row = {{"class", c.name},          {"pred_count", c.pred_count},
                {"gt_count", c.gt_count},   {"present", c.present},
                {"mean_iou", c.mean_iou},   {"viou", c.viou},
                {"matches", matches},       {"unmatched_pred", c.matching.unmatched_pred},
                {"unmatched_gt", c.matching.unmatched_gt}};
    j["classes"].push_back(std::move(row));
  }
  j["mean"] = {{"mean_iou", report.mean_iou}, {"viou", report.mean_viou}};
  return j.dump(2) + "\n";
}

}  // namespace scanbim
