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

#include "scanbim/dbscan.hpp"

#include "scanbim/error.hpp"
#include "scanbim/kdtree.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace scanbim {

namespace {

bool lex_less(const Point3& a, const Point3& b) {
  if (a.x() != b.x()) return a.x() < b.x();
  if (a.y() != b.y()) return a.y() < b.y();
  return a.z() < b.z();
}

}  // namespace

std::vector<int> dbscan_labels(std::span<const Point3> points, double eps, std::size_t min_pts) {
  if (!(eps > 0.0) || min_pts < 1) throw Error(ErrorKind::DegenerateInput, "dbscan needs eps > 0 and min_pts >= 1");
  const std::size_t n = points.size();
  std::vector<int> labels(n, kNoise);
  if (n == 0) return labels;

  const KdTree tree(points);
  std::vector<char> core(n, 0);
#pragma omp parallel for schedule(dynamic, 256)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i) {
    core[i] = tree.count_radius(points[i], eps) >= min_pts ? 1 : 0;
  }

  // Connected components over core points.
  int next = 0;
  std::vector<Index> stack;
  for (std::size_t seed = 0; seed < n; ++seed) {
    if (!core[seed] || labels[seed] != kNoise) continue;
    labels[seed] = next;
    stack.assign(1, static_cast<Index>(seed));
    while (!stack.empty()) {
      const Index cur = stack.back();
      stack.pop_back();
      for (Index nb : tree.radius(points[cur], eps)) {
        if (core[nb] && labels[nb] == kNoise) {
          labels[nb] = next;
          stack.push_back(nb);
        }
      }
    }
    ++next;
  }

  // Border points follow their nearest core neighbour.
  std::vector<int> border(n, kNoise);
#pragma omp parallel for schedule(dynamic, 256)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i) {
    if (core[i]) continue;
    double best = std::numeric_limits<double>::infinity();
    Index best_idx = 0;
    bool found = false;
    for (Index nb : tree.radius(points[i], eps)) {
      if (!core[nb]) continue;
      const double d = (points[nb] - points[i]).squaredNorm();
      if (!found || d < best || (d == best && lex_less(points[nb], points[best_idx]))) {
        best = d;
        best_idx = nb;
        found = true;
      }
    }
    if (found) border[i] = labels[best_idx];
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!core[i]) labels[i] = border[i];
  }

  // Renumber by smallest member index.
  std::vector<int> remap(next, kNoise);
  int fresh = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (labels[i] == kNoise) continue;
    if (remap[labels[i]] == kNoise) remap[labels[i]] = fresh++;
    labels[i] = remap[labels[i]];
  }
  return labels;
}

std::vector<Cluster> dbscan(std::span<const Point3> points, double eps, std::size_t min_pts, Label label) {
  const auto labels = dbscan_labels(points, eps, min_pts);
  int count = 0;
  for (int l : labels) count = std::max(count, l + 1);
  std::vector<Cluster> clusters(count);
  for (auto& c : clusters) c.label = label;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] != kNoise) clusters[labels[i]].point_indices.push_back(static_cast<Index>(i));
  }
  return clusters;
}

}  // namespace scanbim
