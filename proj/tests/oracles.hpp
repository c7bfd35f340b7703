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

// Independent, deliberately naive reference computations used as test
// oracles, plus point samplers for synthetic shapes.

#pragma once

#include "scanbim/hobb.hpp"
#include "scanbim/types.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <vector>

namespace oracle {

using scanbim::Point3;
using scanbim::Vec2;

inline double cross(const Vec2& o, const Vec2& a, const Vec2& b) {
  return (a - o).x() * (b - o).y() - (a - o).y() * (b - o).x();
}

/// Strict hull vertices by exhaustion: a point is a vertex unless it lies in
/// a triangle or on a segment spanned by other points. O(n^4).
inline std::vector<Vec2> hull_vertices(const std::vector<Vec2>& pts) {
  std::vector<Vec2> out;
  const std::size_t n = pts.size();
  for (std::size_t p = 0; p < n; ++p) {
    bool inside = false;
    for (std::size_t i = 0; i < n && !inside; ++i) {
      if (i == p || pts[i] == pts[p]) continue;
      for (std::size_t j = i + 1; j < n && !inside; ++j) {
        if (j == p || pts[j] == pts[p]) continue;
        // On segment i-j.
        const Vec2 ab = pts[j] - pts[i];
        const Vec2 ap = pts[p] - pts[i];
        if (std::abs(cross(pts[i], pts[j], pts[p])) < 1e-12 && ap.dot(ab) >= 0 && ap.dot(ab) <= ab.squaredNorm()) {
          inside = true;
          break;
        }
        for (std::size_t k = j + 1; k < n && !inside; ++k) {
          if (k == p || pts[k] == pts[p]) continue;
          const double d1 = cross(pts[i], pts[j], pts[p]);
          const double d2 = cross(pts[j], pts[k], pts[p]);
          const double d3 = cross(pts[k], pts[i], pts[p]);
          const bool neg = d1 < 0 || d2 < 0 || d3 < 0;
          const bool pos = d1 > 0 || d2 > 0 || d3 > 0;
          if (!(neg && pos) && std::abs(cross(pts[i], pts[j], pts[k])) > 1e-12) inside = true;
        }
      }
    }
    if (!inside && std::find(out.begin(), out.end(), pts[p]) == out.end()) out.push_back(pts[p]);
  }
  return out;
}

/// Plane normal as the smallest-eigenvalue eigenvector of the covariance.
inline Eigen::Vector3d covariance_normal(const std::vector<Point3>& pts) {
  Point3 mean = Point3::Zero();
  for (const auto& p : pts) mean += p;
  mean /= static_cast<double>(pts.size());
  Eigen::Matrix3d cov = Eigen::Matrix3d::Zero();
  for (const auto& p : pts) cov += (p - mean) * (p - mean).transpose();
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(cov);
  return es.eigenvectors().col(0);
}

inline double sum_sq_distance(const std::vector<Point3>& pts, const Eigen::Vector3d& n, double offset) {
  double s = 0.0;
  for (const auto& p : pts) s += std::pow(n.dot(p) + offset, 2);
  return s;
}

/// Textbook O(n^2) DBSCAN with the nearest-core border rule; labels are
/// renumbered by smallest member index, -1 for noise.
inline std::vector<int> dbscan(const std::vector<Point3>& pts, double eps, std::size_t min_pts) {
  const std::size_t n = pts.size();
  std::vector<std::vector<std::size_t>> nb(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if ((pts[i] - pts[j]).norm() <= eps) nb[i].push_back(j);
  std::vector<char> core(n);
  for (std::size_t i = 0; i < n; ++i) core[i] = nb[i].size() >= min_pts;
  std::vector<int> comp(n, -1);
  int next = 0;
  for (std::size_t s = 0; s < n; ++s) {
    if (!core[s] || comp[s] >= 0) continue;
    std::vector<std::size_t> stack{s};
    comp[s] = next;
    while (!stack.empty()) {
      const std::size_t c = stack.back();
      stack.pop_back();
      for (std::size_t j : nb[c]) {
        if (core[j] && comp[j] < 0) {
          comp[j] = next;
          stack.push_back(j);
        }
      }
    }
    ++next;
  }
  std::vector<int> label = comp;
  for (std::size_t i = 0; i < n; ++i) {
    if (core[i]) continue;
    std::size_t best = n;
    for (std::size_t j : nb[i]) {
      if (!core[j]) continue;
      if (best == n) {
        best = j;
        continue;
      }
      const double dj = (pts[j] - pts[i]).norm();
      const double db = (pts[best] - pts[i]).norm();
      const auto lex = [](const Point3& a, const Point3& b) {
        return std::lexicographical_compare(a.data(), a.data() + 3, b.data(), b.data() + 3);
      };
      if (dj < db || (dj == db && lex(pts[j], pts[best]))) best = j;
    }
    label[i] = best == n ? -1 : comp[best];
  }
  // Renumber by smallest member.
  std::map<int, int> remap;
  for (std::size_t i = 0; i < n; ++i) {
    if (label[i] >= 0 && !remap.count(label[i])) {
      const int id = static_cast<int>(remap.size());
      remap[label[i]] = id;
    }
  }
  for (auto& l : label)
    if (l >= 0) l = remap[l];
  return label;
}

/// Canonical form of a partition: ids renumbered in first-appearance order.
inline std::vector<int> canonical(const std::vector<int>& labels) {
  std::map<int, int> remap;
  std::vector<int> out;
  for (int l : labels) {
    if (l < 0) {
      out.push_back(-1);
      continue;
    }
    auto it = remap.find(l);
    if (it == remap.end()) it = remap.emplace(l, static_cast<int>(remap.size())).first;
    out.push_back(it->second);
  }
  return out;
}

/// Brute-force k nearest neighbours, ties by index.
inline std::vector<scanbim::Index> knn(const std::vector<Point3>& pts, const Point3& q, std::size_t k) {
  std::vector<scanbim::Index> idx(pts.size());
  std::iota(idx.begin(), idx.end(), 0u);
  std::stable_sort(idx.begin(), idx.end(), [&](auto a, auto b) {
    const double da = (pts[a] - q).squaredNorm();
    const double db = (pts[b] - q).squaredNorm();
    return da < db || (da == db && a < b);
  });
  idx.resize(std::min(k, idx.size()));
  return idx;
}

/// Surface variation over the k nearest neighbours via explicit covariance.
inline double curvature(const std::vector<Point3>& pts, std::size_t i, std::size_t k) {
  std::vector<Point3> nb;
  for (auto j : knn(pts, pts[i], k)) nb.push_back(pts[j]);
  Point3 mean = Point3::Zero();
  for (const auto& p : nb) mean += p;
  mean /= static_cast<double>(nb.size());
  Eigen::Matrix3d cov = Eigen::Matrix3d::Zero();
  for (const auto& p : nb) cov += (p - mean) * (p - mean).transpose();
  const Eigen::Vector3d ev = Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d>(cov).eigenvalues();
  const double sum = ev.sum();
  return sum > 0 ? ev(0) / sum : 0.0;
}

/// Monte-Carlo IoU of two point-membership predicates over a sampling box.
template <typename A, typename B>
double monte_carlo_iou(A&& in_a, B&& in_b, const Point3& lo, const Point3& hi, std::size_t samples,
                       std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ux(lo.x(), hi.x()), uy(lo.y(), hi.y()), uz(lo.z(), hi.z());
  std::size_t inter = 0, uni = 0;
  for (std::size_t s = 0; s < samples; ++s) {
    const Point3 p(ux(rng), uy(rng), uz(rng));
    const bool a = in_a(p);
    const bool b = in_b(p);
    inter += a && b;
    uni += a || b;
  }
  return uni ? static_cast<double>(inter) / static_cast<double>(uni) : 0.0;
}

/// Rectangle membership written from scratch (no Hobb::contains).
inline bool in_box(const scanbim::Hobb& b, const Point3& p) {
  const double dx = p.x() - b.center.x();
  const double dy = p.y() - b.center.y();
  const double u = std::cos(b.yaw) * dx + std::sin(b.yaw) * dy;
  const double v = -std::sin(b.yaw) * dx + std::cos(b.yaw) * dy;
  return std::abs(u) <= b.length / 2 && std::abs(v) <= b.width / 2 && std::abs(p.z() - b.center.z()) <= b.height / 2;
}

/// Minimum-area enclosing rectangle by a dense angle sweep.
inline double min_rect_area_sweep(const std::vector<Vec2>& pts, int steps = 18000) {
  double best = std::numeric_limits<double>::infinity();
  for (int s = 0; s < steps; ++s) {
    const double a = scanbim::kPi / 2 * s / steps;
    const Vec2 u(std::cos(a), std::sin(a)), v(-std::sin(a), std::cos(a));
    double u0 = 1e300, u1 = -1e300, v0 = 1e300, v1 = -1e300;
    for (const auto& p : pts) {
      u0 = std::min(u0, u.dot(p));
      u1 = std::max(u1, u.dot(p));
      v0 = std::min(v0, v.dot(p));
      v1 = std::max(v1, v.dot(p));
    }
    best = std::min(best, (u1 - u0) * (v1 - v0));
  }
  return best;
}

// Samplers.

inline std::vector<Point3> cylinder_shell(const Point3& base, double r, double h, std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Point3> out;
  for (std::size_t i = 0; i < n; ++i) {
    const double t = 2 * scanbim::kPi * u(rng);
    out.push_back(base + Point3(r * std::cos(t), r * std::sin(t), h * u(rng)));
  }
  return out;
}

inline std::vector<Point3> box_shell(const Point3& center, double sx, double sy, double h, double yaw, std::size_t n,
                                     std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Point3> out;
  const double perim = 2 * (sx + sy);
  for (std::size_t i = 0; i < n; ++i) {
    double s = perim * u(rng);
    double x, y;
    if (s < sx) {
      x = s - sx / 2;
      y = -sy / 2;
    } else if ((s -= sx) < sy) {
      x = sx / 2;
      y = s - sy / 2;
    } else if ((s -= sy) < sx) {
      x = sx / 2 - s;
      y = sy / 2;
    } else {
      s -= sx;
      x = -sx / 2;
      y = sy / 2 - s;
    }
    const double c = std::cos(yaw), sn = std::sin(yaw);
    out.push_back(center + Point3(c * x - sn * y, sn * x + c * y, h * (u(rng) - 0.5)));
  }
  return out;
}

/// Points on the sphere via the Fibonacci lattice.
inline std::vector<Point3> fibonacci_sphere(std::size_t n, double r) {
  std::vector<Point3> out;
  const double golden = scanbim::kPi * (3.0 - std::sqrt(5.0));
  for (std::size_t i = 0; i < n; ++i) {
    const double z = 1.0 - 2.0 * (static_cast<double>(i) + 0.5) / static_cast<double>(n);
    const double rr = std::sqrt(1.0 - z * z);
    const double t = golden * static_cast<double>(i);
    out.emplace_back(r * rr * std::cos(t), r * rr * std::sin(t), r * z);
  }
  return out;
}

/// Two parallel vertical faces of a wall running along `dir`, separated by
/// `gap` along the horizontal normal, with Gaussian noise along the normal.
inline std::vector<Point3> two_face_wall(const Vec2& dir, double length, double height, double gap, double sigma,
                                         std::size_t per_face, std::mt19937_64& rng, const Vec2& origin = Vec2::Zero()) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::normal_distribution<double> g(0.0, sigma);
  const Vec2 n(-dir.y(), dir.x());
  std::vector<Point3> out;
  for (double side : {-0.5, 0.5}) {
    for (std::size_t i = 0; i < per_face; ++i) {
      const Vec2 xy = origin + (u(rng) - 0.5) * length * dir + (side * gap + (sigma > 0 ? g(rng) : 0.0)) * n;
      out.emplace_back(xy.x(), xy.y(), height * u(rng));
    }
  }
  return out;
}

}  // namespace oracle
