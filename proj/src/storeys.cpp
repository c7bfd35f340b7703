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

#include "scanbim/storeys.hpp"

#include "scanbim/error.hpp"

#include <algorithm>
#include <cmath>

namespace scanbim {

std::vector<DensityPeak> vertical_density_peaks(std::span<const Point3> points, double bin_height,
                                                double peak_min_fraction) {
  if (points.empty() || !(bin_height > 0.0)) {
    throw Error(ErrorKind::DegenerateInput, "storey detection needs points and a positive bin height");
  }
  double z_lo = points.front().z();
  double z_hi = z_lo;
  for (const auto& p : points) {
    z_lo = std::min(z_lo, p.z());
    z_hi = std::max(z_hi, p.z());
  }
  const auto bins = static_cast<std::size_t>(std::floor((z_hi - z_lo) / bin_height)) + 1;
  auto bin_of = [&](double z) {
    return std::min(bins - 1, static_cast<std::size_t>(std::floor((z - z_lo) / bin_height)));
  };
  std::vector<std::size_t> counts(bins, 0);
  for (const auto& p : points) ++counts[bin_of(p.z())];

  const double min_count = peak_min_fraction * static_cast<double>(points.size());
  std::vector<std::pair<std::size_t, std::size_t>> runs;  // inclusive bin ranges
  for (std::size_t s = 0; s < bins;) {
    std::size_t e = s;
    while (e + 1 < bins && counts[e + 1] == counts[s]) ++e;
    const std::size_t left = s > 0 ? counts[s - 1] : 0;
    const std::size_t right = e + 1 < bins ? counts[e + 1] : 0;
    if (counts[s] > left && counts[s] > right && static_cast<double>(counts[s]) > min_count) runs.emplace_back(s, e);
    s = e + 1;
  }

  std::vector<DensityPeak> peaks;
  for (const auto& [s, e] : runs) {
    const std::size_t lo = s > 0 ? s - 1 : s;
    const std::size_t hi = std::min(bins - 1, e + 1);
    std::vector<double> zs;
    for (const auto& p : points) {
      const std::size_t b = bin_of(p.z());
      if (b >= lo && b <= hi) zs.push_back(p.z());
    }
    // Median: slab points dominate the window, wall points only pad it.
    auto mid = zs.begin() + static_cast<std::ptrdiff_t>(zs.size() / 2);
    std::nth_element(zs.begin(), mid, zs.end());
    std::size_t count = 0;
    for (std::size_t b = s; b <= e; ++b) count += counts[b];
    peaks.push_back({*mid, count});
  }
  return peaks;
}

std::vector<StoreyInterval> detect_storeys(const LabeledPointCloud& cloud, const StoreyParams& params) {
  const auto peaks = vertical_density_peaks(cloud.points, params.bin_height, params.peak_min_fraction);
  if (peaks.size() < 2) throw Error(ErrorKind::NoStoreyFound, "fewer than two horizontal density peaks");

  std::vector<StoreyInterval> storeys;
  std::size_t floor = 0;
  std::size_t next = 1;
  while (next < peaks.size()) {
    if (peaks[next].z - peaks[floor].z >= params.min_storey_height) {
      storeys.push_back({peaks[floor].z, peaks[next].z, static_cast<int>(storeys.size())});
      floor = next + 1;
      next = floor + 1;
    } else {
      ++next;
    }
  }
  if (storeys.empty()) throw Error(ErrorKind::NoStoreyFound, "no floor/ceiling pair far enough apart");
  if (floor < peaks.size()) {
    auto& last = storeys.back();
    const double z = peaks.back().z;
    if (z > last.ceiling_z && z - last.ceiling_z < params.min_storey_height) last.ceiling_z = z;
  }
  return storeys;
}

std::vector<int> assign_storeys(std::span<const Point3> points, const std::vector<StoreyInterval>& storeys) {
  std::vector<double> bounds;
  for (std::size_t i = 0; i + 1 < storeys.size(); ++i) bounds.push_back(0.5 * (storeys[i].ceiling_z + storeys[i + 1].floor_z));
  std::vector<int> out(points.size(), 0);
  for (std::size_t i = 0; i < points.size(); ++i) {
    out[i] = static_cast<int>(std::upper_bound(bounds.begin(), bounds.end(), points[i].z()) - bounds.begin());
  }
  return out;
}

}  // namespace scanbim
