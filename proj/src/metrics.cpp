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

#include "scanbim/metrics.hpp"

#include "scanbim/error.hpp"
#include "scanbim/hull2d.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>

namespace scanbim {

namespace {

double z_overlap(double a_lo, double a_hi, double b_lo, double b_hi) {
  return std::max(0.0, std::min(a_hi, b_hi) - std::max(a_lo, b_lo));
}

double circle_overlap_area(const Vec2& c0, double r0, const Vec2& c1, double r1) {
  const double d = (c1 - c0).norm();
  if (d >= r0 + r1) return 0.0;
  if (d <= std::abs(r0 - r1)) {
    const double r = std::min(r0, r1);
    return kPi * r * r;
  }
  const double a0 = std::acos(std::clamp((d * d + r0 * r0 - r1 * r1) / (2.0 * d * r0), -1.0, 1.0));
  const double a1 = std::acos(std::clamp((d * d + r1 * r1 - r0 * r0) / (2.0 * d * r1), -1.0, 1.0));
  const double k = (-d + r0 + r1) * (d + r0 - r1) * (d - r0 + r1) * (d + r0 + r1);
  return r0 * r0 * a0 + r1 * r1 * a1 - 0.5 * std::sqrt(std::max(0.0, k));
}

double intersection_volume(const Hobb& a, const Hobb& b) {
  const double dz = z_overlap(a.z_min(), a.z_max(), b.z_min(), b.z_max());
  if (dz <= 0.0 || a.footprint_area() <= 0.0 || b.footprint_area() <= 0.0) return 0.0;
  const Polygon2 clipped = clip_convex(a.footprint(), b.footprint());
  if (clipped.size() < 3) return 0.0;
  return std::max(0.0, polygon_area(clipped)) * dz;
}

double intersection_volume(const Cylinder& a, const Cylinder& b) {
  const double dz = z_overlap(a.base_center.z(), a.base_center.z() + a.height, b.base_center.z(),
                              b.base_center.z() + b.height);
  if (dz <= 0.0) return 0.0;
  return circle_overlap_area(a.base_center.head<2>(), a.radius, b.base_center.head<2>(), b.radius) * dz;
}

struct Aabb {
  Point3 lo;
  Point3 hi;
};

Aabb bounds(const Element& e) {
  if (const auto* h = std::get_if<Hobb>(&e)) {
    Aabb box{Point3::Constant(std::numeric_limits<double>::infinity()),
             Point3::Constant(-std::numeric_limits<double>::infinity())};
    for (const auto& c : h->corners()) {
      box.lo = box.lo.cwiseMin(c);
      box.hi = box.hi.cwiseMax(c);
    }
    return box;
  }
  const auto& c = std::get<Cylinder>(e);
  const Point3 r(c.radius, c.radius, 0.0);
  return {c.base_center - r, c.base_center + r + Point3(0, 0, c.height)};
}

bool element_contains(const Element& e, const Point3& p) {
  return std::visit([&](const auto& g) { return g.contains(p); }, e);
}

}  // namespace

double element_volume(const Element& e) {
  return std::visit([](const auto& g) { return g.volume(); }, e);
}

double iou_3d(const Element& a, const Element& b) {
  if (a.index() != b.index()) return 0.0;
  if (a == b) return element_volume(a) > 0.0 ? 1.0 : 0.0;
  const double inter = std::holds_alternative<Hobb>(a)
                           ? intersection_volume(std::get<Hobb>(a), std::get<Hobb>(b))
                           : intersection_volume(std::get<Cylinder>(a), std::get<Cylinder>(b));
  const double uni = element_volume(a) + element_volume(b) - inter;
  if (!(uni > 0.0)) return 0.0;
  return std::clamp(inter / uni, 0.0, 1.0);
}

MatchResult match_instances(std::span<const Element> pred, std::span<const Element> gt) {
  struct Pair {
    double iou;
    std::size_t p, g;
  };
  std::vector<Pair> pairs;
  for (std::size_t p = 0; p < pred.size(); ++p) {
    for (std::size_t g = 0; g < gt.size(); ++g) {
      const double v = iou_3d(pred[p], gt[g]);
      if (v > 0.0) pairs.push_back({v, p, g});
    }
  }
  std::stable_sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) {
    if (a.iou != b.iou) return a.iou > b.iou;
    if (a.p != b.p) return a.p < b.p;
    return a.g < b.g;
  });
  MatchResult out;
  std::vector<char> pred_used(pred.size(), 0), gt_used(gt.size(), 0);
  double sum = 0.0;
  for (const auto& pr : pairs) {
    if (pred_used[pr.p] || gt_used[pr.g]) continue;
    pred_used[pr.p] = gt_used[pr.g] = 1;
    out.matches.push_back({pr.p, pr.g, pr.iou});
    sum += pr.iou;
  }
  for (std::size_t p = 0; p < pred.size(); ++p)
    if (!pred_used[p]) out.unmatched_pred.push_back(p);
  for (std::size_t g = 0; g < gt.size(); ++g)
    if (!gt_used[g]) out.unmatched_gt.push_back(g);
  const std::size_t denom = std::max(pred.size(), gt.size());
  out.mean_iou = denom == 0 ? 0.0 : sum / static_cast<double>(denom);
  return out;
}

Point3 VoxelGrid::center(const VoxelIndex& v) const {
  return origin + voxel_size * (Point3(v[0], v[1], v[2]) + Point3::Constant(0.5));
}

VoxelGrid voxelize(std::span<const Element> elements, double voxel_size, const Point3& origin) {
  if (!(voxel_size > 0.0)) throw Error(ErrorKind::DegenerateInput, "voxel size must be positive");
  VoxelGrid grid;
  grid.origin = origin;
  grid.voxel_size = voxel_size;
  std::vector<std::vector<VoxelIndex>> per_element(elements.size());

#pragma omp parallel for schedule(dynamic)
  for (std::size_t e = 0; e < elements.size(); ++e) {
    const Aabb box = bounds(elements[e]);
    std::array<std::int64_t, 3> lo{}, hi{};
    for (int d = 0; d < 3; ++d) {
      lo[d] = static_cast<std::int64_t>(std::floor((box.lo[d] - origin[d]) / voxel_size - 0.5));
      hi[d] = static_cast<std::int64_t>(std::ceil((box.hi[d] - origin[d]) / voxel_size - 0.5));
    }
    auto& out = per_element[e];
    for (std::int64_t i = lo[0]; i <= hi[0]; ++i) {
      for (std::int64_t j = lo[1]; j <= hi[1]; ++j) {
        for (std::int64_t k = lo[2]; k <= hi[2]; ++k) {
          const VoxelIndex v{static_cast<std::int32_t>(i), static_cast<std::int32_t>(j), static_cast<std::int32_t>(k)};
          if (element_contains(elements[e], grid.center(v))) out.push_back(v);
        }
      }
    }
  }
  std::size_t total = 0;
  for (const auto& v : per_element) total += v.size();
  grid.occupied.reserve(total);
  for (const auto& v : per_element) grid.occupied.insert(grid.occupied.end(), v.begin(), v.end());
  std::sort(grid.occupied.begin(), grid.occupied.end());
  grid.occupied.erase(std::unique(grid.occupied.begin(), grid.occupied.end()), grid.occupied.end());
  return grid;
}

namespace reference {

VoxelGrid voxelize(std::span<const Element> elements, double voxel_size, const Point3& origin,
                   const std::array<int, 3>& dims) {
  VoxelGrid grid;
  grid.origin = origin;
  grid.voxel_size = voxel_size;
  for (int i = 0; i < dims[0]; ++i) {
    for (int j = 0; j < dims[1]; ++j) {
      for (int k = 0; k < dims[2]; ++k) {
        const VoxelIndex v{i, j, k};
        const Point3 c = grid.center(v);
        for (const auto& e : elements) {
          if (element_contains(e, c)) {
            grid.occupied.push_back(v);
            break;
          }
        }
      }
    }
  }
  return grid;
}

}  // namespace reference

Point3 joint_grid_origin(std::span<const Element> a, std::span<const Element> b, double voxel_size) {
  Point3 lo = Point3::Constant(std::numeric_limits<double>::infinity());
  bool any = false;
  for (auto list : {a, b}) {
    for (const auto& e : list) {
      lo = lo.cwiseMin(bounds(e).lo);
      any = true;
    }
  }
  if (!any) return Point3::Zero();
  for (int d = 0; d < 3; ++d) lo[d] = std::floor(lo[d] / voxel_size) * voxel_size;
  return lo;
}

std::size_t intersection_size(const VoxelGrid& a, const VoxelGrid& b) {
  std::size_t n = 0;
  auto i = a.occupied.begin();
  auto j = b.occupied.begin();
  while (i != a.occupied.end() && j != b.occupied.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++n;
      ++i;
      ++j;
    }
  }
  return n;
}

double viou(std::span<const Element> pred, std::span<const Element> gt, double voxel_size) {
  const Point3 origin = joint_grid_origin(pred, gt, voxel_size);
  const VoxelGrid a = voxelize(pred, voxel_size, origin);
  const VoxelGrid b = voxelize(gt, voxel_size, origin);
  if (a.size() == 0 && b.size() == 0) return 1.0;
  const std::size_t inter = intersection_size(a, b);
  const std::size_t uni = a.size() + b.size() - inter;
  return static_cast<double>(inter) / static_cast<double>(uni);
}

EvalReport evaluate_models(const BimModel& pred, const BimModel& gt, double voxel_size) {
  if (!(voxel_size > 0.0)) throw Error(ErrorKind::InvalidConfig, "voxel size must be positive");
  EvalReport report;
  report.voxel_size = voxel_size;
  const std::pair<const char*, std::vector<Element> (*)(const BimModel&)> classes[] = {
      {"wall", &wall_elements}, {"door", &door_elements}, {"column", &column_elements}};
  double iou_sum = 0.0, viou_sum = 0.0;
  int present = 0;
  for (const auto& [name, extract] : classes) {
    const auto p = extract(pred);
    const auto g = extract(gt);
    ClassEval row;
    row.name = name;
    row.pred_count = p.size();
    row.gt_count = g.size();
    row.present = !p.empty() || !g.empty();
    row.matching = match_instances(p, g);
    row.mean_iou = row.matching.mean_iou;
    row.viou = viou(p, g, voxel_size);
    if (row.present) {
      iou_sum += row.mean_iou;
      viou_sum += row.viou;
      ++present;
    }
    report.classes.push_back(std::move(row));
  }
  if (present > 0) {
    report.mean_iou = iou_sum / present;
    report.mean_viou = viou_sum / present;
  }
  return report;
}

std::string format_report(const EvalReport& report) {
  std::string out;
  char line[160];
  std::snprintf(line, sizeof line, "voxel size: %.4g m\n", report.voxel_size);
  out += line;
  std::snprintf(line, sizeof line, "%-8s %6s %6s %8s %8s\n", "class", "pred", "gt", "3D-IoU", "vIoU");
  out += line;
  for (const auto& c : report.classes) {
    if (c.present) {
      std::snprintf(line, sizeof line, "%-8s %6zu %6zu %8.4f %8.4f\n", c.name.c_str(), c.pred_count, c.gt_count,
                    c.mean_iou, c.viou);
    } else {
      std::snprintf(line, sizeof line, "%-8s %6zu %6zu %8s %8s\n", c.name.c_str(), c.pred_count, c.gt_count, "-", "-");
    }
    out += line;
  }
  std::snprintf(line, sizeof line, "%-8s %6s %6s %8.4f %8.4f\n", "mean", "", "", report.mean_iou, report.mean_viou);
  out += line;
  return out;
}

}  // namespace scanbim
