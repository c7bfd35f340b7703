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

/// Exact k-d tree over a copy of the input points. Queries are const and
/// safe to issue from several threads at once.
class KdTree {
 public:
  explicit KdTree(std::span<const Point3> points, std::size_t leaf_size = 12);

  std::size_t size() const { return points_.size(); }
  const Point3& point(Index i) const { return points_[i]; }

  /// The k nearest points (the query point itself included if it is in the
  /// tree), ordered by distance, ties by index.
  std::vector<Index> knn(const Point3& query, std::size_t k) const;

  /// All points within `radius` (inclusive), ascending index order.
  std::vector<Index> radius(const Point3& query, double radius) const;

  /// Number of points within `radius` (inclusive).
  std::size_t count_radius(const Point3& query, double radius) const;

 private:
  struct Node {
    std::uint32_t begin = 0;
    std::uint32_t end = 0;
    std::int32_t left = -1;
    std::int32_t right = -1;
    int axis = -1;
    double split = 0.0;
  };

  std::int32_t build(std::uint32_t begin, std::uint32_t end);

  std::vector<Point3> points_;
  std::vector<Index> order_;
  std::vector<Node> nodes_;
  std::size_t leaf_size_;
};

}  // namespace scanbim
