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

#include "scanbim/model.hpp"

#include "scanbim/error.hpp"

#include <set>

namespace scanbim {

const char* to_string(Label label) {
  switch (label) {
    case Label::Wall: return "wall";
    case Label::Door: return "door";
    case Label::Column: return "column";
    case Label::Floor: return "floor";
    case Label::Ceiling: return "ceiling";
    case Label::Clutter: return "clutter";
  }
  return "clutter";
}

std::vector<Index> LabeledPointCloud::indices_of(Label label) const {
  std::vector<Index> out;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == label) out.push_back(static_cast<Index>(i));
  }
  return out;
}

std::vector<Point3> LabeledPointCloud::gather(std::span<const Index> indices) const {
  std::vector<Point3> out;
  out.reserve(indices.size());
  for (Index i : indices) out.push_back(points[i]);
  return out;
}

const WallInstance* BimModel::find_wall(ElementId id) const {
  for (const auto& w : walls) {
    if (w.id == id) return &w;
  }
  return nullptr;
}

int BimModel::storey_of_door(const DoorInstance& door) const {
  const WallInstance* wall = find_wall(door.parent_wall_id);
  return wall ? wall->storey : -1;
}

void BimModel::validate() const {
  std::set<ElementId> ids;
  auto claim = [&](ElementId id, const char* what) {
    if (!ids.insert(id).second) throw Error(ErrorKind::InvalidModel, std::string("duplicate element id in ") + what);
  };
  auto check_storey = [&](int s, const char* what) {
    if (s < 0 || s >= static_cast<int>(storeys.size())) {
      throw Error(ErrorKind::InvalidModel, std::string(what) + " references a missing storey");
    }
  };
  for (std::size_t i = 0; i < storeys.size(); ++i) {
    if (storeys[i].index != static_cast<int>(i) || !(storeys[i].ceiling_z > storeys[i].floor_z)) {
      throw Error(ErrorKind::InvalidModel, "storeys must be ordered with ceiling above floor");
    }
    if (i > 0 && storeys[i].floor_z < storeys[i - 1].ceiling_z) {
      throw Error(ErrorKind::InvalidModel, "storeys overlap");
    }
  }
  for (const auto& w : walls) {
    claim(w.id, "walls");
    check_storey(w.storey, "wall");
  }
  for (const auto& c : columns) {
    claim(c.id, "columns");
    check_storey(c.storey, "column");
  }
  for (const auto& d : doors) {
    claim(d.id, "doors");
    if (!find_wall(d.parent_wall_id)) throw Error(ErrorKind::InvalidModel, "door references a missing parent wall");
  }
}

std::vector<Element> wall_elements(const BimModel& model) {
  std::vector<Element> out;
  for (const auto& w : model.walls) out.emplace_back(w.box);
  return out;
}

std::vector<Element> door_elements(const BimModel& model) {
  std::vector<Element> out;
  for (const auto& d : model.doors) out.emplace_back(d.box);
  return out;
}

std::vector<Element> column_elements(const BimModel& model) {
  std::vector<Element> out;
  for (const auto& c : model.columns) {
    std::visit([&](const auto& g) { out.emplace_back(g); }, c.geometry);
  }
  return out;
}

}  // namespace scanbim
