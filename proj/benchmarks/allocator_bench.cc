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

#include <string>

#include "omnisense/allocator.h"
#include "omnisense/random.h"

namespace omnisense {
namespace {

AllocInstance make_instance(int r, int m, double budget, std::uint64_t seed) {
  Rng rng(seed);
  AllocInstance inst;
  inst.budget_s = budget;
  inst.model_names.push_back("skip");
  for (int i = 1; i <= m; ++i) inst.model_names.push_back("m" + std::to_string(i));
  inst.accuracy = Table(m + 1, r);
  inst.preprocess_s = Table(m + 1, r);
  inst.inference_s = Table(m + 1, r);
  for (int i = 1; i <= m; ++i) {
    for (int j = 0; j < r; ++j) {
      inst.accuracy(i, j) = rng.uniform();
      inst.preprocess_s(i, j) = rng.uniform(0.01, 0.2);
      inst.inference_s(i, j) = rng.uniform(0.01, 0.3);
    }
  }
  return inst;
}

void BM_SolveDp(benchmark::State& state) {
  const int r = static_cast<int>(state.range(0));
  const AllocInstance inst = make_instance(r, 5, 0.25 * r, 7);
  const auto order = random_order(r, 1);
  DpOptions opts;
  opts.prune_dominated = state.range(1) != 0;
  for (auto _ : state) benchmark::DoNotOptimize(solve_dp(inst, order, opts));
  state.SetLabel(opts.prune_dominated ? "pruned" : "unpruned");
}
BENCHMARK(BM_SolveDp)->ArgsProduct({{2, 4, 6, 8}, {1}})->ArgsProduct({{2, 4, 6}, {0}});

void BM_BruteForce(benchmark::State& state) {
  const int r = static_cast<int>(state.range(0));
  const AllocInstance inst = make_instance(r, 5, 0.25 * r, 7);
  const auto order = random_order(r, 1);
  for (auto _ : state) benchmark::DoNotOptimize(brute_force(inst, order));
}
BENCHMARK(BM_BruteForce)->DenseRange(2, 6, 2);

void BM_PipelinedLatency(benchmark::State& state) {
  Rng rng(3);
  std::vector<double> dp(64), di(64);
  for (std::size_t k = 0; k < dp.size(); ++k) {
    dp[k] = rng.uniform();
    di[k] = rng.uniform();
  }
  for (auto _ : state) benchmark::DoNotOptimize(pipelined_latency(dp, di));
}
BENCHMARK(BM_PipelinedLatency);

}  // namespace
}  // namespace omnisense
