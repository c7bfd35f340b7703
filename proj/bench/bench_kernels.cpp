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

// Parallel kernels against their serial reference implementations.

#include "scanbim/dbscan.hpp"
#include "scanbim/local_geometry.hpp"
#include "scanbim/metrics.hpp"

#include <benchmark/benchmark.h>

#include <random>

namespace {

using scanbim::Point3;

std::vector<Point3> wall_cloud(std::size_t n) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0, 1);
  std::normal_distribution<double> g(0, 0.005);
  std::vector<Point3> pts;
  for (std::size_t i = 0; i < n; ++i) {
    const double side = i % 2 ? 0.1 : -0.1;
    pts.emplace_back(10 * u(rng), side + g(rng), 3 * u(rng));
  }
  return pts;
}

std::vector<scanbim::Element> random_boxes(std::size_t n) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0, 1);
  std::vector<scanbim::Element> out;
  for (std::size_t i = 0; i < n; ++i) {
    scanbim::Hobb b;
    b.center = Point3(1 + 8 * u(rng), 1 + 8 * u(rng), 1.5);
    b.length = 1 + 3 * u(rng);
    b.width = 0.2;
    b.height = 3;
    b.yaw = scanbim::kPi * u(rng);
    out.push_back(b);
  }
  return out;
}

void BM_Normals(benchmark::State& state) {
  const auto pts = wall_cloud(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(scanbim::estimate_normals(pts, 16));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_NormalsReference(benchmark::State& state) {
  const auto pts = wall_cloud(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(scanbim::reference::estimate_normals(pts, 16));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_Curvature(benchmark::State& state) {
  const auto pts = wall_cloud(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(scanbim::local_curvature(pts, 30));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_CurvatureReference(benchmark::State& state) {
  const auto pts = wall_cloud(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(scanbim::reference::local_curvature(pts, 30));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_Dbscan(benchmark::State& state) {
  const auto pts = wall_cloud(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(scanbim::dbscan_labels(pts, 0.1, 10));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_Voxelize(benchmark::State& state) {
  const auto boxes = random_boxes(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(scanbim::voxelize(boxes, 0.05, Point3::Zero()));
}

void BM_VoxelizeReference(benchmark::State& state) {
  const auto boxes = random_boxes(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(scanbim::reference::voxelize(boxes, 0.05, Point3::Zero(), {220, 220, 64}));
}

}  // namespace

BENCHMARK(BM_Normals)->Arg(20000)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_NormalsReference)->Arg(20000)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Curvature)->Arg(20000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CurvatureReference)->Arg(20000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Dbscan)->Arg(20000)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Voxelize)->Arg(10)->Arg(50)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_VoxelizeReference)->Arg(10)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
