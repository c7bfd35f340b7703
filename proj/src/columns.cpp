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

#include "scanbim/columns.hpp"

#include "scanbim/dbscan.hpp"
#include "scanbim/error.hpp"
#include "scanbim/hobb.hpp"
#include "scanbim/local_geometry.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <limits>
#include <random>

namespace scanbim {

std::vector<Cluster> cluster_columns(std::span<const Point3> points, double eps, std::size_t min_pts,
                                     std::size_t min_cluster_points) {
  if (points.empty()) return {};
  auto clusters = dbscan(points, eps, min_pts, Label::Column);
  std::erase_if(clusters, [&](const Cluster& c) { return c.point_indices.size() < min_cluster_points; });
  return clusters;
}

CurvatureStats curvature_statistics(std::span<const Point3> points, std::size_t k) {
  const auto curv = local_curvature(points, k);
  CurvatureStats s;
  for (double c : curv) s.mean += c;
  s.mean /= static_cast<double>(curv.size());
  double var = 0.0;
  for (double c : curv) var += (c - s.mean) * (c - s.mean);
  s.stddev = std::sqrt(var / static_cast<double>(curv.size()));
  return s;
}

ColumnShape classify_shape(std::span<const Point3> points, std::size_t k, double cv_threshold) {
  const CurvatureStats s = curvature_statistics(points, k);
  if (!(s.mean > 1e-12)) return ColumnShape::Rectangular;
  return s.stddev / s.mean < cv_threshold ? ColumnShape::Round : ColumnShape::Rectangular;
}

bool circle_through(const Vec2& a, const Vec2& b, const Vec2& c, Circle& out) {
  const Vec2 ab = b - a;
  const Vec2 ac = c - a;
  const double d = 2.0 * (ab.x() * ac.y() - ab.y() * ac.x());
  const double scale = ab.squaredNorm() * ac.squaredNorm();
  if (std::abs(d) <= 1e-12 * std::sqrt(scale) || scale == 0.0) return false;
  const double b2 = ab.squaredNorm();
  const double c2 = ac.squaredNorm();
  const Vec2 rel((ac.y() * b2 - ab.y() * c2) / d, (ab.x() * c2 - ac.x() * b2) / d);
  out.center = a + rel;
  out.radius = rel.norm();
  return true;
}

double circle_rms(const Circle& circle, std::span<const Vec2> points) {
  if (points.empty()) return 0.0;
  double sum = 0.0;
  for (const auto& p : points) {
    const double r = (p - circle.center).norm() - circle.radius;
    sum += r * r;
  }
  return std::sqrt(sum / static_cast<double>(points.size()));
}

Circle fit_circle_least_squares(std::span<const Vec2> points, const Circle& start) {
  Circle best = start;
  double best_rms = circle_rms(start, points);
  if (points.size() < 3) return best;

  // Algebraic (Kasa) fit: x^2 + y^2 + D x + E y + F = 0.
  Eigen::MatrixXd a(points.size(), 3);
  Eigen::VectorXd rhs(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    a(i, 0) = points[i].x();
    a(i, 1) = points[i].y();
    a(i, 2) = 1.0;
    rhs(i) = -points[i].squaredNorm();
  }
  const Eigen::Vector3d sol = a.colPivHouseholderQr().solve(rhs);
  Circle cur;
  cur.center = Vec2(-0.5 * sol(0), -0.5 * sol(1));
  const double r2 = cur.center.squaredNorm() - sol(2);
  cur = r2 > 0.0 ? Circle{cur.center, std::sqrt(r2)} : start;

  // Gauss-Newton on the geometric residual |p - c| - r.
  for (int it = 0; it < 20; ++it) {
    Eigen::Matrix3d jtj = Eigen::Matrix3d::Zero();
    Eigen::Vector3d jtr = Eigen::Vector3d::Zero();
    for (const auto& p : points) {
      const Vec2 d = p - cur.center;
      const double dist = d.norm();
      if (dist == 0.0) continue;
      const Eigen::Vector3d j(-d.x() / dist, -d.y() / dist, -1.0);
      const double r = dist - cur.radius;
      jtj += j * j.transpose();
      jtr += j * r;
    }
    const Eigen::Vector3d step = jtj.ldlt().solve(-jtr);
    if (!step.allFinite()) break;
    cur.center += step.head<2>();
    cur.radius += step(2);
    if (step.norm() < 1e-12) break;
  }
  if (cur.radius > 0.0 && std::isfinite(cur.radius)) {
    const double rms = circle_rms(cur, points);
    if (rms <= best_rms) best = cur;
  }
  return best;
}

CylinderFit fit_cylinder_ransac_detailed(std::span<const Point3> points, double distance_threshold,
                                         std::size_t iterations, std::uint64_t seed, double max_radius) {
  if (points.size() < 3) throw Error(ErrorKind::FitFailed, "cylinder fit needs at least 3 points");
  std::vector<Vec2> xy;
  xy.reserve(points.size());
  for (const auto& p : points) xy.emplace_back(p.x(), p.y());

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, points.size() - 1);
  auto count_inliers = [&](const Circle& c) {
    std::size_t n = 0;
    for (const auto& p : xy) n += std::abs((p - c.center).norm() - c.radius) <= distance_threshold ? 1 : 0;
    return n;
  };

  Circle best;
  std::size_t best_count = 0;
  for (std::size_t it = 0; it < iterations; ++it) {
    const std::size_t i = pick(rng), j = pick(rng), k = pick(rng);
    if (i == j || j == k || i == k) continue;
    Circle c;
    if (!circle_through(xy[i], xy[j], xy[k], c) || c.radius > max_radius) continue;
    const std::size_t n = count_inliers(c);
    if (n > best_count) {
      best_count = n;
      best = c;
    }
  }
  const double ratio = static_cast<double>(best_count) / static_cast<double>(points.size());
  if (ratio < 0.5) throw Error(ErrorKind::FitFailed, "cylinder inlier ratio below 0.5");

  std::vector<Vec2> inlier_xy;
  for (const auto& p : xy) {
    if (std::abs((p - best.center).norm() - best.radius) <= distance_threshold) inlier_xy.push_back(p);
  }
  CylinderFit fit;
  fit.inlier_ratio = ratio;
  fit.rms_before_refit = circle_rms(best, inlier_xy);
  Circle refined = fit_circle_least_squares(inlier_xy, best);
  if (!(refined.radius > 0.0 && refined.radius <= max_radius)) refined = best;
  fit.rms_after_refit = circle_rms(refined, inlier_xy);

  double z_lo = std::numeric_limits<double>::infinity();
  double z_hi = -z_lo;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (std::abs((xy[i] - refined.center).norm() - refined.radius) > distance_threshold) continue;
    z_lo = std::min(z_lo, points[i].z());
    z_hi = std::max(z_hi, points[i].z());
  }
  if (!(z_hi >= z_lo)) {
    z_lo = z_hi = points.front().z();
  }
  fit.cylinder.base_center = Point3(refined.center.x(), refined.center.y(), z_lo);
  fit.cylinder.radius = refined.radius;
  fit.cylinder.height = z_hi - z_lo;
  return fit;
}

Cylinder fit_cylinder_ransac(std::span<const Point3> points, double distance_threshold, std::size_t iterations,
                             std::uint64_t seed, double max_radius) {
  return fit_cylinder_ransac_detailed(points, distance_threshold, iterations, seed, max_radius).cylinder;
}

Hobb fit_rect_column(std::span<const Point3> points) { return min_area_hobb(points); }

std::vector<ColumnInstance> reconstruct_columns(std::span<const Point3> column_points, const ColumnParams& params,
                                                std::uint64_t seed) {
  std::vector<ColumnInstance> out;
  const auto clusters =
      cluster_columns(column_points, params.dbscan_eps, params.dbscan_min_pts, params.min_cluster_points);
  std::uint64_t cluster_seed = seed;
  for (const auto& cluster : clusters) {
    std::vector<Point3> pts;
    pts.reserve(cluster.point_indices.size());
    for (Index i : cluster.point_indices) pts.push_back(column_points[i]);
    ++cluster_seed;
    ColumnInstance col;
    try {
      const bool round = pts.size() > params.curvature_k &&
                         classify_shape(pts, params.curvature_k, params.cv_threshold) == ColumnShape::Round;
      if (round) {
        try {
          col.geometry = fit_cylinder_ransac(pts, params.ransac_threshold, params.ransac_iterations, cluster_seed,
                                             params.max_radius);
        } catch (const Error& e) {
          if (e.kind() != ErrorKind::FitFailed) throw;
          col.geometry = fit_rect_column(pts);
        }
      } else {
        col.geometry = fit_rect_column(pts);
      }
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::DegenerateInput) throw;
      continue;
    }
    out.push_back(std::move(col));
  }
  return out;
}

}  // namespace scanbim
