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

#include <Eigen/Core>

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

namespace scanbim {

using Point3 = Eigen::Vector3d;
using Vec2 = Eigen::Vector2d;
using Index = std::uint32_t;

inline constexpr double kPi = std::numbers::pi;

inline double deg_to_rad(double deg) { return deg * kPi / 180.0; }
inline double rad_to_deg(double rad) { return rad * 180.0 / kPi; }

/// Wraps an angle into [0, period).
inline double wrap_angle(double a, double period) {
  double r = std::fmod(a, period);
  if (r < 0.0) r += period;
  if (r >= period) r -= period;
  return r;
}

/// Smallest distance between two angles that are equivalent modulo `period`.
inline double angle_distance(double a, double b, double period) {
  double d = wrap_angle(a - b, period);
  return std::min(d, period - d);
}

/// Semantic classes understood by the reconstruction. Integer values are the
/// on-disk label encoding.
enum class Label : std::uint8_t {
  Wall = 0,
  Door = 1,
  Column = 2,
  Floor = 3,
  Ceiling = 4,
  Clutter = 5,
};

inline constexpr int kLabelCount = 6;

const char* to_string(Label label);

/// Infinite plane n.p + offset = 0, with the indices of the points that
/// support it.
struct Plane {
  Eigen::Vector3d normal = Eigen::Vector3d::UnitZ();
  double offset = 0.0;
  std::vector<Index> inlier_indices;

  double signed_distance(const Point3& p) const { return normal.dot(p) + offset; }
  double distance(const Point3& p) const { return std::abs(signed_distance(p)); }
};

/// Vertical cylinder standing on `base_center`.
struct Cylinder {
  Point3 base_center = Point3::Zero();
  double radius = 0.0;
  double height = 0.0;

  Point3 axis() const { return Point3::UnitZ(); }
  double volume() const { return kPi * radius * radius * height; }
  bool contains(const Point3& p, double tol = 0.0) const;

  bool operator==(const Cylinder&) const = default;
};

struct Cluster {
  std::vector<Index> point_indices;
  Label label = Label::Clutter;
};

}  // namespace scanbim
