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

#include <vector>

namespace scanbim {

struct StoreyParams {
  double bin_height = 0.1;
  double peak_min_fraction = 0.05;
  double min_storey_height = 2.0;
};

/// Concentration of points in the vertical histogram.
struct DensityPeak {
  double z = 0.0;
  std::size_t count = 0;
};

/// Peaks of the z histogram: maximal runs of equal bins that are strictly
/// higher than the bins on either side and hold more than
/// `peak_min_fraction` of all points. Peak height is the mean z of the points
/// in the run and its two neighbouring bins.
std::vector<DensityPeak> vertical_density_peaks(std::span<const Point3> points, double bin_height,
                                                double peak_min_fraction);

/// Storeys from consecutive (floor, ceiling) peak pairs, bottom up. A pair
/// closer than `min_storey_height` is a double slab: the upper peak is
/// dropped and pairing continues from the same floor. A trailing unpaired
/// peak within `min_storey_height` above the last ceiling raises it.
///
/// Throws NoStoreyFound with fewer than two peaks or no valid pair.
std::vector<StoreyInterval> detect_storeys(const LabeledPointCloud& cloud, const StoreyParams& params);

/// Storey index per point. Boundaries sit halfway between a ceiling and the
/// next floor; points below the first floor or above the last ceiling go to
/// the nearest storey.
std::vector<int> assign_storeys(std::span<const Point3> points, const std::vector<StoreyInterval>& storeys);

}  // namespace scanbim
