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

#include "scanbim/hull2d.hpp"
#include "scanbim/types.hpp"

#include <array>
#include <span>

namespace scanbim {

/// Horizontal oriented bounding box: a cuboid rotated only about +Z.
///
/// `length` runs along the yaw direction, `width` across it. Boxes produced by
/// fitting keep length >= width and yaw in [0, pi); hand-built boxes (doors
/// in a wall frame) may break the length/width ordering.
struct Hobb {
  Point3 center = Point3::Zero();
  double length = 0.0;
  double width = 0.0;
  double height = 0.0;
  double yaw = 0.0;

  Vec2 direction() const { return {std::cos(yaw), std::sin(yaw)}; }
  Vec2 lateral() const { return {-std::sin(yaw), std::cos(yaw)}; }

  double z_min() const { return center.z() - 0.5 * height; }
  double z_max() const { return center.z() + 0.5 * height; }
  double volume() const { return length * width * height; }
  double footprint_area() const { return length * width; }

  /// Point expressed in the box frame: (along, across, up) relative to center.
  Point3 to_local(const Point3& p) const;
  Point3 to_world(const Point3& local) const;

  bool contains(const Point3& p, double tol = 0.0) const;

  /// Bottom ring then top ring, each CCW starting at (-l/2, -w/2).
  std::array<Point3, 8> corners() const;

  /// Inverse of corners(). Assumes the ordering corners() produces.
  static Hobb from_corners(const std::array<Point3, 8>& corners);

  /// CCW footprint polygon.
  Polygon2 footprint() const;

  /// Centerline endpoints (XY) along the length axis.
  std::array<Vec2, 2> baseline() const;

  /// Replace the baseline by the segment [a, b] measured along `direction()`.
  /// Keeps yaw, width, height and the lateral position of the centerline.
  void set_baseline_span(double along_start, double along_end);

  /// Swap length/width if needed so length >= width and wrap yaw to [0, pi).
  Hobb normalized() const;

  bool operator==(const Hobb&) const = default;
};

/// Minimum-area horizontal box around the points, restricted to the edge
/// directions of the quad-reduced XY convex hull. Height spans the z range.
/// Throws DegenerateInput when the XY footprint has no area.
Hobb min_area_hobb(std::span<const Point3> points);

/// Candidate directions min_area_hobb evaluates, exposed for testing.
std::vector<double> hobb_candidate_angles(const Polygon2& hull);

}  // namespace scanbim
