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

#include "scanbim/model.hpp"

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace scanbim {

/// Volume intersection over union. Box pairs clip their footprints and
/// multiply by the vertical overlap; cylinder pairs use the circle lens area.
/// Mixed pairs score 0.
double iou_3d(const Element& a, const Element& b);

double element_volume(const Element& e);

struct InstanceMatch {
  std::size_t pred = 0;
  std::size_t gt = 0;
  double iou = 0.0;
};

struct MatchResult {
  std::vector<InstanceMatch> matches;  // in matching order (descending IoU)
  std::vector<std::size_t> unmatched_pred;
  std::vector<std::size_t> unmatched_gt;
  /// Sum of matched IoUs over max(|pred|, |gt|); 0 when both lists are empty.
  double mean_iou = 0.0;
};

/// Greedy one-to-one matching by descending IoU (ties by pred then gt
/// index). Pairs with IoU 0 are never matched.
MatchResult match_instances(std::span<const Element> pred, std::span<const Element> gt);

using VoxelIndex = std::array<std::int32_t, 3>;

struct VoxelGrid {
  Point3 origin = Point3::Zero();
  double voxel_size = 0.0;
  std::vector<VoxelIndex> occupied;  // sorted, unique

  std::size_t size() const { return occupied.size(); }
  Point3 center(const VoxelIndex& v) const;
};

/// Marks every voxel whose center lies inside one of the elements. Elements
/// are rasterised in parallel over their bounding boxes.
VoxelGrid voxelize(std::span<const Element> elements, double voxel_size, const Point3& origin);

namespace reference {
/// Tests the center of every voxel in the dims[0] x dims[1] x dims[2] block at
/// `origin` against every element.
VoxelGrid voxelize(std::span<const Element> elements, double voxel_size, const Point3& origin,
                   const std::array<int, 3>& dims);
}  // namespace reference

/// Component-wise minimum of the joint bounds, floored to a voxel multiple.
Point3 joint_grid_origin(std::span<const Element> a, std::span<const Element> b, double voxel_size);

std::size_t intersection_size(const VoxelGrid& a, const VoxelGrid& b);

/// Class-level voxel IoU on a shared grid. 1 when both sets are empty.
double viou(std::span<const Element> pred, std::span<const Element> gt, double voxel_size);

struct ClassEval {
  std::string name;
  std::size_t pred_count = 0;
  std::size_t gt_count = 0;
  /// False when neither model has elements of this class; such rows are left
  /// out of the means.
  bool present = false;
  double mean_iou = 0.0;
  double viou = 0.0;
  MatchResult matching;
};

struct EvalReport {
  double voxel_size = 0.05;
  std::vector<ClassEval> classes;  // wall, door, column
  double mean_iou = 0.0;
  double mean_viou = 0.0;
};

EvalReport evaluate_models(const BimModel& pred, const BimModel& gt, double voxel_size = 0.05);

/// Plain-text table of the report.
std::string format_report(const EvalReport& report);

}  // namespace scanbim
