/* Copyright 2026 The OmniSense Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/


#include <benchmark/benchmark.h>

#include <vector>

#include "omnisense/projection.h"
#include "omnisense/random.h"
#include "omnisense/sphere.h"

namespace omnisense {
namespace {

std::vector<SphericalBox> random_boxes(int n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<SphericalBox> out;
  for (int k = 0; k < n; ++k) {
    out.emplace_back(rng.uniform(-0.3, 0.3), rng.uniform(-0.3, 0.3), rng.uniform(0.05, 1.0),
                     rng.uniform(0.05, 1.0));
  }
  return out;
}

void BM_SphIou(benchmark::State& state) {
  const auto boxes = random_boxes(64, 1);
  std::size_t k = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sph_iou(boxes[k % 64], boxes[(k + 1) % 64]));
    ++k;
  }
}
BENCHMARK(BM_SphIou);

void BM_SphArea(benchmark::State& state) {
  const auto boxes = random_boxes(64, 2);
  std::size_t k = 0;
  for (auto _ : state) benchmark::DoNotOptimize(sph_area(boxes[k++ % 64]));
}
BENCHMARK(BM_SphArea);

void BM_MergedFov(benchmark::State& state) {
  const auto boxes = random_boxes(static_cast<int>(state.range(0)), 3);
  for (auto _ : state) benchmark::DoNotOptimize(merged_fov(boxes));
}
BENCHMARK(BM_MergedFov)->Arg(2)->Arg(8)->Arg(32);

void BM_GnomonicRoundTrip(benchmark::State& state) {
  const SphericalCoord c{0.4, 0.2};
  const SphericalCoord p{0.6, 0.1};
  for (auto _ : state) benchmark::DoNotOptimize(gnomonic_unproject(c, gnomonic_project(c, p)));
}
BENCHMARK(BM_GnomonicRoundTrip);

}  // namespace
}  // namespace omnisense
