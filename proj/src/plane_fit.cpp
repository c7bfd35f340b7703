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

#include "scanbim/plane_fit.hpp"

#include "scanbim/error.hpp"

#include <Eigen/SVD>

namespace scanbim {

namespace {

Plane fit_centered(const Eigen::MatrixXd& centered, const Point3& centroid) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(centered, Eigen::ComputeThinV);
  const Eigen::Vector3d sv = svd.singularValues();
  // Rank < 2 means the points are collinear (or coincident).
  if (!(sv(0) > 0.0) || sv(1) <= 1e-10 * sv(0)) {
    throw Error(ErrorKind::DegenerateInput, "plane fit on collinear points");
  }
  Plane plane;
  plane.normal = svd.matrixV().col(2).normalized();
  plane.offset = -plane.normal.dot(centroid);
  canonicalize(plane);
  return plane;
}

}  // namespace

void canonicalize(Plane& plane) {
  Eigen::Index dominant = 0;
  plane.normal.cwiseAbs().maxCoeff(&dominant);
  if (plane.normal(dominant) < 0.0) {
    plane.normal = -plane.normal;
    plane.offset = -plane.offset;
  }
}

Plane fit_plane_svd(std::span<const Point3> points) {
  if (points.size() < 3) throw Error(ErrorKind::DegenerateInput, "plane fit needs at least 3 points");
  Point3 centroid = Point3::Zero();
  for (const auto& p : points) centroid += p;
  centroid /= static_cast<double>(points.size());
  Eigen::MatrixXd centered(points.size(), 3);
  for (std::size_t i = 0; i < points.size(); ++i) centered.row(i) = (points[i] - centroid).transpose();
  return fit_centered(centered, centroid);
}

Plane fit_plane_svd(std::span<const Point3> points, std::span<const Index> subset) {
  if (subset.size() < 3) throw Error(ErrorKind::DegenerateInput, "plane fit needs at least 3 points");
  Point3 centroid = Point3::Zero();
  for (Index i : subset) centroid += points[i];
  centroid /= static_cast<double>(subset.size());
  Eigen::MatrixXd centered(subset.size(), 3);
  for (std::size_t r = 0; r < subset.size(); ++r) centered.row(r) = (points[subset[r]] - centroid).transpose();
  return fit_centered(centered, centroid);
}

double plane_rms(const Plane& plane, std::span<const Point3> points) {
  if (points.empty()) return 0.0;
  double sum = 0.0;
  for (const auto& p : points) {
    const double d = plane.signed_distance(p);
    sum += d * d;
  }
  return std::sqrt(sum / static_cast<double>(points.size()));
}

}  // namespace scanbim
