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

#include "scanbim/types.hpp"

#include <span>
#include <vector>

namespace scanbim {

using Polygon2 = std::vector<Vec2>;

/// Andrew's monotone chain. Returns the hull counter-clockwise with collinear
/// boundary points removed. Throws DegenerateInput if the points span less
/// than a triangle.
Polygon2 convex_hull_2d(std::span<const Vec2> points);

/// Shrinks a convex CCW polygon to four vertices by repeatedly collapsing the
/// edge whose removal adds the least area. Collapsing edge (i, i+1) extends
/// the neighbouring edges until they meet, so the result still contains the
/// input. Polygons with 3 or 4 vertices are returned unchanged.
Polygon2 reduce_hull_to_quad(const Polygon2& hull);

/// Signed shoelace area; positive for CCW.
double polygon_area(const Polygon2& poly);

/// Intersection of two convex CCW polygons (Sutherland-Hodgman).
Polygon2 clip_convex(const Polygon2& subject, const Polygon2& clip);

/// True if `p` is inside or within `tol` of the convex CCW polygon.
bool convex_contains(const Polygon2& poly, const Vec2& p, double tol = 0.0);

}  // namespace scanbim
