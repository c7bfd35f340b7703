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

#include "scanbim/walls.hpp"

#include "scanbim/dbscan.hpp"
#include "scanbim/error.hpp"
#include "scanbim/hobb.hpp"
#include "scanbim/plane_fit.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <numeric>

namespace scanbim {

void HysacConfig::validate() const {
  if (n_seeds < 3 || n_bins < 2 || min_points < n_seeds || !(distance_threshold > 0.0) ||
      !(min_inlier_ratio > 0.0 && min_inlier_ratio <= 1.0) || max_attempts < 1) {
    throw Error(ErrorKind::InvalidConfig, "HYSAC configuration out of range");
  }
}

namespace {

bool is_horizontal_normal(const Eigen::Vector3d& n, double vertical_tol) {
  return n.squaredNorm() > 0.0 && std::abs(n.z()) < std::cos(vertical_tol) * n.norm();
}

}  // namespace

double estimate_manhattan_frame(std::span<const Eigen::Vector3d> normals, double vertical_tol) {
  if (normals.size() < 100) throw Error(ErrorKind::DegenerateInput, "Manhattan frame needs at least 100 wall points");
  constexpr int kBins = 90;
  const double quarter = 0.5 * kPi;
  std::array<std::size_t, kBins> hist{};
  std::vector<double> folded;
  folded.reserve(normals.size());
  for (const auto& n : normals) {
    if (!is_horizontal_normal(n, vertical_tol)) continue;
    const double a = wrap_angle(std::atan2(n.y(), n.x()), quarter);
    folded.push_back(a);
    hist[std::min(kBins - 1, static_cast<int>(a / quarter * kBins))]++;
  }
  if (folded.empty()) throw Error(ErrorKind::DegenerateInput, "no horizontal wall normals");

  int peak = 0;
  std::size_t peak_score = 0;
  for (int b = 0; b < kBins; ++b) {
    const std::size_t score = hist[(b + kBins - 1) % kBins] + hist[b] + hist[(b + 1) % kBins];
    if (score > peak_score) {
      peak_score = score;
      peak = b;
    }
  }
  // Smoothed scores: a direction on a bin edge splits its raw count.
  const double mean_score = 3.0 * static_cast<double>(folded.size()) / kBins;
  if (static_cast<double>(peak_score) < 2.0 * mean_score) {
    throw Error(ErrorKind::DegenerateInput, "wall normals have no dominant direction");
  }

  // Circular mean (period pi/2) of the normals near the peak.
  const double centre = (peak + 0.5) * quarter / kBins;
  const double window = deg_to_rad(3.0);
  double sx = 0.0;
  double sy = 0.0;
  for (double a : folded) {
    if (angle_distance(a, centre, quarter) > window) continue;
    sx += std::cos(4.0 * a);
    sy += std::sin(4.0 * a);
  }
  return wrap_angle(std::atan2(sy, sx) / 4.0, quarter);
}

DirectionSplit split_by_direction(std::span<const Eigen::Vector3d> normals, double frame_angle, double vertical_tol) {
  DirectionSplit out;
  for (std::size_t i = 0; i < normals.size(); ++i) {
    const auto& n = normals[i];
    if (!is_horizontal_normal(n, vertical_tol)) continue;
    const double d = std::atan2(n.y(), n.x()) - frame_angle;
    // Normal closer to the frame x axis means the wall runs along y.
    if (std::abs(std::cos(d)) >= std::abs(std::sin(d))) {
      out.along_y.push_back(static_cast<Index>(i));
    } else {
      out.along_x.push_back(static_cast<Index>(i));
    }
  }
  return out;
}

std::vector<Cluster> cluster_walls_per_axis(std::span<const Point3> points, double eps, std::size_t min_pts) {
  if (points.empty()) return {};
  return dbscan(points, eps, min_pts, Label::Wall);
}

namespace {

/// Histogram peak bins of the projections, densest first.
std::vector<std::size_t> histogram_peaks(const std::vector<std::size_t>& counts) {
  const std::size_t n = counts.size();
  double mean = 0.0;
  for (auto c : counts) mean += static_cast<double>(c);
  mean /= static_cast<double>(n);
  double var = 0.0;
  for (auto c : counts) var += (static_cast<double>(c) - mean) * (static_cast<double>(c) - mean);
  const double threshold = mean + std::sqrt(var / static_cast<double>(n));

  std::vector<std::size_t> peaks;
  for (std::size_t i = 0; i < n; ++i) {
    const double c = static_cast<double>(counts[i]);
    const bool left_ok = i == 0 || counts[i] >= counts[i - 1];
    const bool right_ok = i + 1 == n || counts[i] > counts[i + 1];
    if (c > threshold && left_ok && right_ok) peaks.push_back(i);
  }
  if (peaks.empty()) {
    peaks.push_back(static_cast<std::size_t>(std::max_element(counts.begin(), counts.end()) - counts.begin()));
  }
  std::stable_sort(peaks.begin(), peaks.end(), [&](std::size_t a, std::size_t b) { return counts[a] > counts[b]; });
  return peaks;
}

std::vector<Index> collect_inliers(const Plane& plane, std::span<const Point3> points, const std::vector<Index>& pool,
                                   double threshold) {
  std::vector<Index> out;
  for (Index i : pool) {
    if (plane.distance(points[i]) <= threshold) out.push_back(i);
  }
  return out;
}

}  // namespace

std::vector<Plane> hysac_planes(std::span<const Point3> points, const HysacConfig& config, const Vec2& normal_axis,
                                std::mt19937_64& rng, SeedStrategy strategy) {
  config.validate();
  std::vector<Plane> planes;
  if (points.size() < config.min_points) return planes;

  const Vec2 axis = normal_axis.normalized();
  std::vector<Index> remaining(points.size());
  std::iota(remaining.begin(), remaining.end(), Index{0});

  std::vector<double> proj;
  std::vector<std::size_t> bin_of;
  std::vector<Index> candidates;
  std::vector<Index> seeds;
  while (remaining.size() >= config.min_points) {
    // Histogram orthogonal to the wall surface over the remaining points.
    proj.resize(remaining.size());
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (std::size_t r = 0; r < remaining.size(); ++r) {
      const Point3& p = points[remaining[r]];
      proj[r] = axis.x() * p.x() + axis.y() * p.y();
      lo = std::min(lo, proj[r]);
      hi = std::max(hi, proj[r]);
    }
    const double width = std::max(hi - lo, 1e-12) / static_cast<double>(config.n_bins);
    std::vector<std::size_t> counts(config.n_bins, 0);
    bin_of.resize(remaining.size());
    for (std::size_t r = 0; r < remaining.size(); ++r) {
      bin_of[r] = std::min(config.n_bins - 1, static_cast<std::size_t>((proj[r] - lo) / width));
      ++counts[bin_of[r]];
    }
    const auto peaks = histogram_peaks(counts);

    bool accepted = false;
    Plane plane;
    std::vector<Index> inliers;
    for (std::size_t attempt = 0; attempt < config.max_attempts && !accepted; ++attempt) {
      seeds.clear();
      if (strategy == SeedStrategy::Histogram) {
        const std::size_t bin = peaks[attempt % peaks.size()];
        candidates.clear();
        for (std::size_t r = 0; r < remaining.size(); ++r) {
          if (bin_of[r] == bin) candidates.push_back(remaining[r]);
        }
        std::sample(candidates.begin(), candidates.end(), std::back_inserter(seeds), config.n_seeds, rng);
      } else {
        std::sample(remaining.begin(), remaining.end(), std::back_inserter(seeds), config.n_seeds, rng);
      }
      if (seeds.size() < 3) continue;
      try {
        plane = fit_plane_svd(points, seeds);
        inliers = collect_inliers(plane, points, remaining, config.distance_threshold);
        if (inliers.size() >= 3) {
          plane = fit_plane_svd(points, inliers);
          inliers = collect_inliers(plane, points, remaining, config.distance_threshold);
        }
      } catch (const Error&) {
        continue;
      }
      const double ratio = static_cast<double>(inliers.size()) / static_cast<double>(remaining.size());
      accepted = inliers.size() >= config.min_points && ratio >= config.min_inlier_ratio;
    }
    if (!accepted) break;

    std::vector<Index> rest;
    rest.reserve(remaining.size() - inliers.size());
    std::set_difference(remaining.begin(), remaining.end(), inliers.begin(), inliers.end(), std::back_inserter(rest));
    remaining.swap(rest);
    plane.inlier_indices = std::move(inliers);
    planes.push_back(std::move(plane));
  }
  return planes;
}

namespace {

struct Face {
  const Plane* plane;
  Vec2 normal;      // horizontal unit normal, aligned with the reference
  double position;  // offset along the reference normal
  double along_lo;
  double along_hi;
};

FacePlane summarize(const Plane& p) {
  return {p.normal, p.offset, static_cast<std::uint32_t>(p.inlier_indices.size())};
}

/// Box around `indices` whose yaw follows the face direction `along`.
Hobb face_aligned_box(std::span<const Point3> points, const std::vector<Index>& indices, const Vec2& along) {
  double a_lo = std::numeric_limits<double>::infinity();
  double a_hi = -a_lo;
  double z_lo = a_lo;
  double z_hi = -a_lo;
  for (Index i : indices) {
    const double a = along.dot(points[i].head<2>());
    a_lo = std::min(a_lo, a);
    a_hi = std::max(a_hi, a);
    z_lo = std::min(z_lo, points[i].z());
    z_hi = std::max(z_hi, points[i].z());
  }
  Hobb box;
  box.yaw = std::atan2(along.y(), along.x());
  const Vec2 mid = 0.5 * (a_lo + a_hi) * along;
  box.center = Point3(mid.x(), mid.y(), 0.5 * (z_lo + z_hi));
  box.length = a_hi - a_lo;
  box.height = z_hi - z_lo;
  return box;
}

/// Moves the box laterally so its centerline sits at `position` along `normal`.
void place_laterally(Hobb& box, const Vec2& normal, double position) {
  const double current = normal.dot(box.center.head<2>());
  const Vec2 shift = (position - current) * normal;
  box.center.x() += shift.x();
  box.center.y() += shift.y();
}

}  // namespace

std::vector<WallInstance> assemble_wall_instances(std::span<const Plane> planes, std::span<const Point3> points,
                                                  const WallAssemblyParams& params) {
  std::vector<WallInstance> walls;
  if (planes.empty()) return walls;

  std::vector<Face> faces;
  Vec2 reference = planes.front().normal.head<2>();
  if (reference.norm() == 0.0) reference = Vec2::UnitX();
  reference.normalize();
  for (const auto& p : planes) {
    Vec2 n = p.normal.head<2>();
    double offset = p.offset;
    const double h = n.norm();
    if (h == 0.0) continue;  // horizontal plane, cannot bound a wall
    n /= h;
    offset /= h;
    if (n.dot(reference) < 0.0) {
      n = -n;
      offset = -offset;
    }
    const Vec2 along(-n.y(), n.x());
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (Index i : p.inlier_indices) {
      const double a = along.dot(points[i].head<2>());
      lo = std::min(lo, a);
      hi = std::max(hi, a);
    }
    faces.push_back({&p, n, -offset, lo, hi});
  }

  struct Pair {
    double gap;
    std::size_t a, b;
  };
  std::vector<Pair> pairs;
  for (std::size_t i = 0; i < faces.size(); ++i) {
    for (std::size_t j = i + 1; j < faces.size(); ++j) {
      const double angle = std::acos(std::clamp(faces[i].normal.dot(faces[j].normal), -1.0, 1.0));
      if (angle >= params.parallel_angle) continue;
      const double gap = std::abs(faces[i].position - faces[j].position);
      if (gap > params.max_thickness || gap <= 0.0) continue;
      const double overlap = std::min(faces[i].along_hi, faces[j].along_hi) - std::max(faces[i].along_lo, faces[j].along_lo);
      if (overlap <= 0.0) continue;
      pairs.push_back({gap, i, j});
    }
  }
  std::sort(pairs.begin(), pairs.end(), [](const Pair& x, const Pair& y) {
    return std::tie(x.gap, x.a, x.b) < std::tie(y.gap, y.a, y.b);
  });

  std::vector<char> used(faces.size(), 0);
  for (const auto& pr : pairs) {
    if (used[pr.a] || used[pr.b]) continue;
    used[pr.a] = used[pr.b] = 1;
    const Face& fa = faces[pr.a];
    const Face& fb = faces[pr.b];
    std::vector<Index> united = fa.plane->inlier_indices;
    united.insert(united.end(), fb.plane->inlier_indices.begin(), fb.plane->inlier_indices.end());
    std::vector<Point3> pts;
    pts.reserve(united.size());
    for (Index i : united) pts.push_back(points[i]);

    const Vec2 normal = (fa.normal + fb.normal).normalized();
    const Vec2 along(-normal.y(), normal.x());
    Hobb box;
    try {
      box = min_area_hobb(pts);
    } catch (const Error&) {
      box = face_aligned_box(points, united, along);
    }
    // The bounding box of noisy face samples overstates thickness; width and
    // lateral position come from the fitted faces, yaw and extent along the
    // wall from the face direction.
    const double face_yaw = std::atan2(along.y(), along.x());
    if (angle_distance(box.yaw, face_yaw, kPi) < params.parallel_angle) {
      box = face_aligned_box(points, united, along);
      box.width = std::min(params.max_thickness, pr.gap);
      place_laterally(box, normal, 0.5 * (fa.position + fb.position));
    }
    box.width = std::min(box.width, params.max_thickness);

    WallInstance wall;
    wall.box = box.normalized();
    wall.source_planes = {summarize(*fa.plane), summarize(*fb.plane)};
    walls.push_back(std::move(wall));
  }

  for (std::size_t i = 0; i < faces.size(); ++i) {
    if (used[i]) continue;
    const Face& f = faces[i];
    const Vec2 along(-f.normal.y(), f.normal.x());
    Hobb box = face_aligned_box(points, f.plane->inlier_indices, along);
    box.width = std::min(params.default_thickness, params.max_thickness);

    // The wall body extends behind the face, toward the emptier side.
    std::size_t front = 0;
    std::size_t back = 0;
    const double reach = 0.5;
    for (const auto& p : points) {
      const double s = f.normal.dot(p.head<2>()) - f.position;
      if (s > 1e-9 && s <= reach) ++front;
      if (s < -1e-9 && s >= -reach) ++back;
    }
    const double side = front <= back ? 1.0 : -1.0;
    place_laterally(box, f.normal, f.position + side * 0.5 * box.width);

    WallInstance wall;
    wall.box = box.normalized();
    wall.source_planes = {summarize(*f.plane)};
    walls.push_back(std::move(wall));
  }
  return walls;
}

}  // namespace scanbim
