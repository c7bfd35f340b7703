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

#include "scanbim/hull2d.hpp"

#include "scanbim/error.hpp"

#include <algorithm>
#include <limits>

namespace scanbim {

namespace {

double cross(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

double turn(const Vec2& o, const Vec2& a, const Vec2& b) { return cross(a - o, b - o); }

}  // namespace

Polygon2 convex_hull_2d(std::span<const Vec2> points) {
  std::vector<Vec2> pts(points.begin(), points.end());
  std::sort(pts.begin(), pts.end(), [](const Vec2& a, const Vec2& b) {
    return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
  });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) throw Error(ErrorKind::DegenerateInput, "convex hull needs 3 distinct points");

  Polygon2 hull(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && turn(hull[k - 2], hull[k - 1], p) <= 0.0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && turn(hull[k - 2], hull[k - 1], pts[i]) <= 0.0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  if (hull.size() < 3) throw Error(ErrorKind::DegenerateInput, "points are collinear");
  return hull;
}

double polygon_area(const Polygon2& poly) {
  double a = 0.0;
  for (std::size_t i = 0, n = poly.size(); i < n; ++i) a += cross(poly[i], poly[(i + 1) % n]);
  return 0.5 * a;
}

Polygon2 reduce_hull_to_quad(const Polygon2& hull) {
  Polygon2 q = hull;
  while (q.size() > 4) {
    const std::size_t n = q.size();
    std::size_t best = n;
    double best_area = std::numeric_limits<double>::infinity();
    Vec2 best_point;
    for (std::size_t i = 0; i < n; ++i) {
      const Vec2& a = q[(i + n - 1) % n];
      const Vec2& b = q[i];
      const Vec2& c = q[(i + 1) % n];
      const Vec2& d = q[(i + 2) % n];
      // Extend a->b past b and d->c past c; they must meet ahead of both.
      const Vec2 d1 = b - a;
      const Vec2 d2 = c - d;
      const double denom = cross(d1, d2);
      if (std::abs(denom) <= 1e-300) continue;
      const double t = cross(c - b, d2) / denom;
      const double s = cross(c - b, d1) / denom;
      if (t < 0.0 || s < 0.0) continue;
      const Vec2 x = b + t * d1;
      const double added = 0.5 * std::abs(cross(b - x, c - x));
      if (added < best_area) {
        best_area = added;
        best = i;
        best_point = x;
      }
    }
    if (best == n) break;  // cannot happen for a strictly convex polygon with n > 4
    q[best] = best_point;
    q.erase(q.begin() + static_cast<std::ptrdiff_t>((best + 1) % n));
  }
  return q;
}

Polygon2 clip_convex(const Polygon2& subject, const Polygon2& clip) {
  Polygon2 out = subject;
  for (std::size_t e = 0, m = clip.size(); e < m && !out.empty(); ++e) {
    const Vec2& a = clip[e];
    const Vec2& b = clip[(e + 1) % m];
    const Vec2 edge = b - a;
    Polygon2 in;
    in.swap(out);
    for (std::size_t i = 0, n = in.size(); i < n; ++i) {
      const Vec2& p = in[i];
      const Vec2& q = in[(i + 1) % n];
      const double sp = cross(edge, p - a);
      const double sq = cross(edge, q - a);
      if (sp >= 0.0) out.push_back(p);
      if ((sp >= 0.0) != (sq >= 0.0)) {
        const double t = sp / (sp - sq);
        out.push_back(p + t * (q - p));
      }
    }
  }
  return out;
}

bool convex_contains(const Polygon2& poly, const Vec2& p, double tol) {
  for (std::size_t i = 0, n = poly.size(); i < n; ++i) {
    const Vec2 edge = poly[(i + 1) % n] - poly[i];
    const double len = edge.norm();
    if (len == 0.0) continue;
    if (cross(edge, p - poly[i]) / len < -tol) return false;
  }
  return true;
}

}  // namespace scanbim
