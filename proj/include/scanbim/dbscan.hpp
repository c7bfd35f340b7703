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

inline constexpr int kNoise = -1;

/// Per-point cluster ids (kNoise for noise).
///
/// Core points have at least `min_pts` neighbours within `eps`, counting
/// themselves. Clusters are the eps-connected components of core points.
/// A border point joins the cluster of its nearest core neighbour (ties broken
/// by lexicographic core coordinate), which makes the partition independent
/// of input order. Cluster ids are ordered by the smallest member index.
std::vector<int> dbscan_labels(std::span<const Point3> points, double eps, std::size_t min_pts);

/// Clusters with their member indices ascending, sorted by smallest index.
std::vector<Cluster> dbscan(std::span<const Point3> points, double eps, std::size_t min_pts,
                            Label label = Label::Clutter);

}  // namespace scanbim
