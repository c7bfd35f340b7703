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

#include "scanbim/hobb.hpp"
#include "scanbim/types.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace scanbim {

using ElementId = std::uint32_t;

struct LabeledPointCloud {
  std::vector<Point3> points;
  std::vector<Label> labels;
  std::vector<std::array<std::uint8_t, 3>> colors;  // empty or one per point

  std::size_t size() const { return points.size(); }
  bool has_colors() const { return !colors.empty(); }

  /// Indices of points carrying `label`.
  std::vector<Index> indices_of(Label label) const;
  /// Copy of the selected points.
  std::vector<Point3> gather(std::span<const Index> indices) const;
};

struct StoreyInterval {
  double floor_z = 0.0;
  double ceiling_z = 0.0;
  int index = 0;

  bool operator==(const StoreyInterval&) const = default;
};

/// Face plane a wall was built from. Inlier indices are local to the
/// pipeline run and are not kept in the model.
struct FacePlane {
  Eigen::Vector3d normal = Eigen::Vector3d::UnitX();
  double offset = 0.0;
  std::uint32_t inlier_count = 0;

  bool operator==(const FacePlane&) const = default;
};

struct WallInstance {
  ElementId id = 0;
  int storey = 0;
  Hobb box;
  std::vector<FacePlane> source_planes;

  bool operator==(const WallInstance&) const = default;
};

struct DoorInstance {
  ElementId id = 0;
  ElementId parent_wall_id = 0;
  Hobb box;

  bool operator==(const DoorInstance&) const = default;
};

enum class ColumnShape { Round, Rectangular };

struct ColumnInstance {
  ElementId id = 0;
  int storey = 0;
  std::variant<Cylinder, Hobb> geometry;

  ColumnShape shape() const { return std::holds_alternative<Cylinder>(geometry) ? ColumnShape::Round : ColumnShape::Rectangular; }
  bool operator==(const ColumnInstance&) const = default;
};

/// Geometry compared by the metrics.
using Element = std::variant<Hobb, Cylinder>;

struct BimModel {
  std::vector<StoreyInterval> storeys;
  std::vector<WallInstance> walls;
  std::vector<DoorInstance> doors;
  std::vector<ColumnInstance> columns;
  /// Configuration snapshot (flat key/value JSON text) and seed of the run.
  std::string config_json;
  std::uint64_t seed = 0;

  bool operator==(const BimModel&) const = default;

  const WallInstance* find_wall(ElementId id) const;
  int storey_of_door(const DoorInstance& door) const;

  /// Throws InvalidModel on dangling parents, duplicate ids or unknown storeys.
  void validate() const;
};

std::vector<Element> wall_elements(const BimModel& model);
std::vector<Element> door_elements(const BimModel& model);
std::vector<Element> column_elements(const BimModel& model);

}  // namespace scanbim
