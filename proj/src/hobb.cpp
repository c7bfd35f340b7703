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

#include "scanbim/hobb.hpp"

#include "scanbim/error.hpp"

#include <algorithm>
#include <limits>

namespace scanbim {

namespace {

// A box is symmetric under a half turn, so yaw values just below pi snap to 0.
double normalize_yaw(double yaw) {
  double r = wrap_angle(yaw, kPi);
  if (kPi - r < 1e-12) r = 0.0;
  return r;
}

}  // namespace

bool Cylinder::contains(const Point3& p, double tol) const {
  const double dz = p.z() - base_center.z();
  if (dz < -tol || dz > height + tol) return false;
  const double dx = p.x() - base_center.x();
  const double dy = p.y() - base_center.y();
  const double r = radius + tol;
  return dx * dx + dy * dy <= r * r;
}

Point3 Hobb::to_local(const Point3& p) const {
  const double c = std::cos(yaw);
  const double s = std::sin(yaw);
  const Point3 d = p - center;
  return {c * d.x() + s * d.y(), -s * d.x() + c * d.y(), d.z()};
}

Point3 Hobb::to_world(const Point3& local) const {
  const double c = std::cos(yaw);
  const double s = std::sin(yaw);
  return center + Point3(c * local.x() - s * local.y(), s * local.x() + c * local.y(), local.z());
}

bool Hobb::contains(const Point3& p, double tol) const {
  const Point3 l = to_local(p);
  return std::abs(l.x()) <= 0.5 * length + tol && std::abs(l.y()) <= 0.5 * width + tol &&
         std::abs(l.z()) <= 0.5 * height + tol;
}

std::array<Point3, 8> Hobb::corners() const {
  const double hl = 0.5 * length;
  const double hw = 0.5 * width;
  const double hh = 0.5 * height;
  const std::array<Vec2, 4> ring = {Vec2(-hl, -hw), Vec2(hl, -hw), Vec2(hl, hw), Vec2(-hl, hw)};
  std::array<Point3, 8> out;
  for (int i = 0; i < 4; ++i) {
    out[i] = to_world(Point3(ring[i].x(), ring[i].y(), -hh));
    out[i + 4] = to_world(Point3(ring[i].x(), ring[i].y(), hh));
  }
  return out;
}

Hobb Hobb::from_corners(const std::array<Point3, 8>& c) {
  Hobb box;
  box.center = Point3::Zero();
  for (const auto& p : c) box.center += p;
  box.center /= 8.0;
  const Vec2 e1 = (c[1] - c[0]).head<2>();
  const Vec2 e2 = (c[2] - c[1]).head<2>();
  box.length = e1.norm();
  box.width = e2.norm();
  box.height = c[4].z() - c[0].z();
  double yaw = std::atan2(e1.y(), e1.x());
  if (yaw < 0.0 && yaw > -1e-12) yaw = 0.0;
  box.yaw = normalize_yaw(yaw);
  return box;
}

Polygon2 Hobb::footprint() const {
  const auto c = corners();
  return {c[0].head<2>(), c[1].head<2>(), c[2].head<2>(), c[3].head<2>()};
}

std::array<Vec2, 2> Hobb::baseline() const {
  const Vec2 mid = center.head<2>();
  const Vec2 half = 0.5 * length * direction();
  return {mid - half, mid + half};
}

void Hobb::set_baseline_span(double along_start, double along_end) {
  const double mid = 0.5 * (along_start + along_end);
  const Vec2 shift = mid * direction();
  center.x() += shift.x();
  center.y() += shift.y();
  length = along_end - along_start;
}

Hobb Hobb::normalized() const {
  Hobb out = *this;
  if (out.width > out.length) {
    std::swap(out.length, out.width);
    out.yaw += 0.5 * kPi;
  }
  out.yaw = normalize_yaw(out.yaw);
  return out;
}

std::vector<double> hobb_candidate_angles(const Polygon2& hull) {
  const Polygon2 poly = hull.size() > 4 ? reduce_hull_to_quad(hull) : hull;
  std::vector<double> angles;
  angles.reserve(poly.size());
  for (std::size_t i = 0, n = poly.size(); i < n; ++i) {
    const Vec2 e = poly[(i + 1) % n] - poly[i];
    angles.push_back(std::atan2(e.y(), e.x()));
  }
  return angles;
}

Hobb min_area_hobb(std::span<const Point3> points) {
  if (points.size() < 3) throw Error(ErrorKind::DegenerateInput, "H-OBB needs at least 3 points");
  std::vector<Vec2> xy;
  xy.reserve(points.size());
  double z_lo = std::numeric_limits<double>::infinity();
  double z_hi = -z_lo;
  for (const auto& p : points) {
    xy.emplace_back(p.x(), p.y());
    z_lo = std::min(z_lo, p.z());
    z_hi = std::max(z_hi, p.z());
  }
  const Polygon2 hull = convex_hull_2d(xy);

  double best_area = std::numeric_limits<double>::infinity();
  double best_angle = 0.0;
  Vec2 best_lo, best_hi;
  for (double angle : hobb_candidate_angles(hull)) {
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    Vec2 lo(std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity());
    Vec2 hi = -lo;
    // Rotating the hull vertices is enough: the box of the hull is the box of the points.
    for (const auto& v : hull) {
      const Vec2 r(c * v.x() + s * v.y(), -s * v.x() + c * v.y());
      lo = lo.cwiseMin(r);
      hi = hi.cwiseMax(r);
    }
    const double area = (hi.x() - lo.x()) * (hi.y() - lo.y());
    if (area < best_area) {
      best_area = area;
      best_angle = angle;
      best_lo = lo;
      best_hi = hi;
    }
  }

  const Vec2 mid = 0.5 * (best_lo + best_hi);
  const double c = std::cos(best_angle);
  const double s = std::sin(best_angle);
  Hobb box;
  box.center = Point3(c * mid.x() - s * mid.y(), s * mid.x() + c * mid.y(), 0.5 * (z_lo + z_hi));
  box.length = best_hi.x() - best_lo.x();
  box.width = best_hi.y() - best_lo.y();
  box.height = z_hi - z_lo;
  box.yaw = best_angle;
  return box.normalized();
}

}  // namespace scanbim
