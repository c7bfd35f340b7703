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

#include <cstdint>
#include <span>
#include <vector>

namespace scanbim {

struct ColumnParams {
  double dbscan_eps = 0.2;
  std::size_t dbscan_min_pts = 5;
  std::size_t min_cluster_points = 100;
  std::size_t curvature_k = 30;
  double cv_threshold = 0.5;
  double ransac_threshold = 0.02;
  std::size_t ransac_iterations = 500;
  double max_radius = 2.0;
};

/// DBSCAN, then drop clusters smaller than `min_cluster_points`.
std::vector<Cluster> cluster_columns(std::span<const Point3> points, double eps, std::size_t min_pts,
                                     std::size_t min_cluster_points);

/// Gaussian maximum-likelihood fit of the per-point curvature distribution.
struct CurvatureStats {
  double mean = 0.0;
  double stddev = 0.0;  // MLE, i.e. population standard deviation
};

CurvatureStats curvature_statistics(std::span<const Point3> points, std::size_t k);

/// Round when the curvature coefficient of variation stddev/mean is below
/// `cv_threshold`; rectangular otherwise, including flat clusters (mean 0).
ColumnShape classify_shape(std::span<const Point3> points, std::size_t k, double cv_threshold);

struct Circle {
  Vec2 center = Vec2::Zero();
  double radius = 0.0;
};

/// Exact circle through three XY points; false when they are collinear.
bool circle_through(const Vec2& a, const Vec2& b, const Vec2& c, Circle& out);

/// Geometric least-squares circle (algebraic start, Gauss-Newton polish).
Circle fit_circle_least_squares(std::span<const Vec2> points, const Circle& start);

double circle_rms(const Circle& circle, std::span<const Vec2> points);

struct CylinderFit {
  Cylinder cylinder;
  double inlier_ratio = 0.0;
  double rms_before_refit = 0.0;
  double rms_after_refit = 0.0;
};

/// RANSAC over XY circles through 3 sampled points with a fixed vertical
/// axis; the best model is refit on its inliers. Throws FitFailed when the
/// best inlier ratio is below 0.5.
CylinderFit fit_cylinder_ransac_detailed(std::span<const Point3> points, double distance_threshold,
                                         std::size_t iterations, std::uint64_t seed, double max_radius = 2.0);

Cylinder fit_cylinder_ransac(std::span<const Point3> points, double distance_threshold, std::size_t iterations,
                             std::uint64_t seed, double max_radius = 2.0);

Hobb fit_rect_column(std::span<const Point3> points);

/// Complete column stage for one storey. Column ids are left at 0; clusters
/// whose cylinder fit fails fall back to a box.
std::vector<ColumnInstance> reconstruct_columns(std::span<const Point3> column_points, const ColumnParams& params,
                                                std::uint64_t seed);

}  // namespace scanbim
