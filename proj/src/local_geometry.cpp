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

#include "scanbim/local_geometry.hpp"

#include "scanbim/error.hpp"

#include <Eigen/Eigenvalues>

namespace scanbim {

LocalShape analyse_neighbourhood(std::span<const Point3> points, std::span<const Index> neighbours) {
  LocalShape shape;
  if (neighbours.size() < 3) return shape;
  Point3 mean = Point3::Zero();
  for (Index i : neighbours) mean += points[i];
  mean /= static_cast<double>(neighbours.size());
  Eigen::Matrix3d cov = Eigen::Matrix3d::Zero();
  for (Index i : neighbours) {
    const Point3 d = points[i] - mean;
    cov.noalias() += d * d.transpose();
  }
  cov /= static_cast<double>(neighbours.size());
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> solver(cov);
  shape.eigenvalues = solver.eigenvalues().cwiseMax(0.0);
  Eigen::Vector3d n = solver.eigenvectors().col(0);
  Eigen::Index dominant = 0;
  n.cwiseAbs().maxCoeff(&dominant);
  if (n(dominant) < 0.0) n = -n;
  shape.normal = n;
  return shape;
}

namespace {

double curvature_of(const LocalShape& s) {
  const double sum = s.eigenvalues.sum();
  return sum > 0.0 ? s.eigenvalues(0) / sum : 0.0;
}

void check_k(std::span<const Point3> points, std::size_t k, std::size_t min_k) {
  if (k < min_k || points.size() <= k) {
    throw Error(ErrorKind::DegenerateInput, "neighbourhood size k out of range for point count");
  }
}

}  // namespace

std::vector<Eigen::Vector3d> estimate_normals(std::span<const Point3> points, std::size_t k) {
  check_k(points, k, 3);
  const KdTree tree(points);
  std::vector<Eigen::Vector3d> normals(points.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(points.size()); ++i) {
    normals[i] = analyse_neighbourhood(points, tree.knn(points[i], k)).normal;
  }
  return normals;
}

std::vector<double> local_curvature(std::span<const Point3> points, std::size_t k) {
  check_k(points, k, 4);
  const KdTree tree(points);
  std::vector<double> out(points.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(points.size()); ++i) {
    out[i] = curvature_of(analyse_neighbourhood(points, tree.knn(points[i], k)));
  }
  return out;
}

namespace reference {

std::vector<Eigen::Vector3d> estimate_normals(std::span<const Point3> points, std::size_t k) {
  check_k(points, k, 3);
  const KdTree tree(points);
  std::vector<Eigen::Vector3d> normals;
  normals.reserve(points.size());
  for (const auto& p : points) normals.push_back(analyse_neighbourhood(points, tree.knn(p, k)).normal);
  return normals;
}

std::vector<double> local_curvature(std::span<const Point3> points, std::size_t k) {
  check_k(points, k, 4);
  const KdTree tree(points);
  std::vector<double> out;
  out.reserve(points.size());
  for (const auto& p : points) out.push_back(curvature_of(analyse_neighbourhood(points, tree.knn(p, k))));
  return out;
}

}  // namespace reference

}  // namespace scanbim
