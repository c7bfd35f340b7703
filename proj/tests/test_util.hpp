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

namespace testutil {

/// Wall whose centerline runs from a to b.
inline scanbim::WallInstance make_wall(scanbim::ElementId id, const scanbim::Vec2& a, const scanbim::Vec2& b,
                                       double width = 0.2, double height = 2.5, double base_z = 0.0) {
  scanbim::WallInstance w;
  w.id = id;
  const scanbim::Vec2 mid = 0.5 * (a + b);
  w.box.center = scanbim::Point3(mid.x(), mid.y(), base_z + 0.5 * height);
  w.box.length = (b - a).norm();
  w.box.width = width;
  w.box.height = height;
  w.box.yaw = scanbim::wrap_angle(std::atan2(b.y() - a.y(), b.x() - a.x()), scanbim::kPi);
  return w;
}

/// Extent of a wall's baseline along a fixed unit direction.
inline std::pair<double, double> span_along(const scanbim::WallInstance& w, const scanbim::Vec2& dir) {
  const auto bl = w.box.baseline();
  const double s0 = dir.dot(bl[0]), s1 = dir.dot(bl[1]);
  return {std::min(s0, s1), std::max(s0, s1)};
}

}  // namespace testutil
