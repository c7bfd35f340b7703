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

#include "scanbim/kdtree.hpp"
#include "scanbim/types.hpp"

#include <span>
#include <vector>

namespace scanbim {

// Per-point neighbourhood kernels. The default versions run under OpenMP;
// the `reference` namespace holds serial implementations that compute the
// same values point by point and are used to check the parallel ones.

/// Unit normal of the k-nearest-neighbour covariance (smallest eigenvector),
/// oriented with non-negative dominant component. Zero vector when the
/// neighbourhood is degenerate.
std::vector<Eigen::Vector3d> estimate_normals(std::span<const Point3> points, std::size_t k);

/// Surface variation lambda0 / (lambda0 + lambda1 + lambda2) over the k nearest
/// neighbours. Degenerate neighbourhoods give 0.
std::vector<double> local_curvature(std::span<const Point3> points, std::size_t k);

namespace reference {
std::vector<Eigen::Vector3d> estimate_normals(std::span<const Point3> points, std::size_t k);
std::vector<double> local_curvature(std::span<const Point3> points, std::size_t k);
}  // namespace reference

/// Covariance eigen-analysis of one neighbourhood; exposed for reuse.
struct LocalShape {
  Eigen::Vector3d eigenvalues = Eigen::Vector3d::Zero();  // ascending
  Eigen::Vector3d normal = Eigen::Vector3d::Zero();
};
LocalShape analyse_neighbourhood(std::span<const Point3> points, std::span<const Index> neighbours);

}  // namespace scanbim
