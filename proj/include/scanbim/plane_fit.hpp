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

namespace scanbim {

/// Least-squares plane through the points via SVD of the centered
/// coordinates. The normal is the right singular vector of the smallest
/// singular value, sign-flipped so its largest-magnitude component is
/// positive. Inliers are left empty.
///
/// Throws DegenerateInput for fewer than 3 points or collinear input.
Plane fit_plane_svd(std::span<const Point3> points);

/// Same, over a subset of `points`.
Plane fit_plane_svd(std::span<const Point3> points, std::span<const Index> subset);

/// Flip the normal so its largest-magnitude component is positive.
void canonicalize(Plane& plane);

/// RMS point-to-plane distance.
double plane_rms(const Plane& plane, std::span<const Point3> points);

}  // namespace scanbim
