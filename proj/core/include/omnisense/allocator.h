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

#ifndef OMNISENSE_ALLOCATOR_H_
#define OMNISENSE_ALLOCATOR_H_

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "omnisense/model_profile.h"
#include "omnisense/sroi_predictor.h"

namespace omnisense {

// Dense (models x srois) table of doubles.
class Table {
 public:
  Table() = default;
  Table(int rows, int cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols, fill) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  double& operator()(int r, int c) { return data_[static_cast<std::size_t>(r) * cols_ + c]; }
  double operator()(int r, int c) const {
    return data_[static_cast<std::size_t>(r) * cols_ + c];
  }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> data_;
};

// One model-allocation problem. Row 0 of every table is the skip option and
// must be all zeros.
struct AllocInstance {
  double budget_s = 0.0;
  std::vector<std::string> model_names;  // m + 1 entries, "skip" first
  Table accuracy;                        // weighted accuracy A_{i,j}
  Table preprocess_s;                    // d^P_{i,j}
  Table inference_s;                     // d^I_{i,j}

  int num_models() const { return accuracy.rows(); }
  int num_srois() const { return accuracy.cols(); }
  double delay_s(int i, int j) const { return preprocess_s(i, j) + inference_s(i, j); }

  // Throws ConfigError on shape mismatches, negative or non-finite entries,
  // a non-zero skip row, or a non-positive budget.
  void validate() const;
};

// Builds the instance for one frame from the estimators: A_{i,j} is
// alpha_j * gav_i . ccv_j and the delays come from estimate_delay().
AllocInstance build_instance(std::span<const SRoI> srois, const ModelSet& models,
                             const NetworkState& net, Compression compression,
                             double budget_s);

struct ExecutionPlan {
  // Model index per SRoI (0 = skip), indexed like the instance columns.
  std::vector<int> assignment;
  // Processing order the plan was optimized for.
  std::vector<int> order;
  double estimated_accuracy = 0.0;
  double estimated_latency_s = 0.0;
  // Set when the DP state cap forced quantized pruning.
  bool approximate = false;
};

// One step of the pipelined latency recurrence: the next SRoI's preprocessing
// starts when the previous one's ends, and its inference starts once both its
// preprocessing and the previous inference are done.
struct PipelineClock {
  double preprocess_done = 0.0;  // t^P
  double done = 0.0;             // t

  PipelineClock advance(double preprocess_s, double inference_s) const {
    return {preprocess_done + preprocess_s,
            std::max(preprocess_done + (preprocess_s + inference_s), done + inference_s)};
  }
};

// Completion time of SRoIs processed in sequence with the given per-SRoI
// delays (already arranged in processing order).
double pipelined_latency(std::span<const double> preprocess_s,
                         std::span<const double> inference_s);
// Completion time of `assignment` executed in `order`.
double pipelined_latency(const AllocInstance& inst, std::span<const int> order,
                         std::span<const int> assignment);

struct DpOptions {
  bool prune_dominated = true;
  // Above this many states per stage, times are quantized to `quantum_s` for
  // dominance checks and the plan is flagged approximate. 0 disables the cap.
  std::size_t state_cap = 100000;
  double quantum_s = 1e-4;
  double feasibility_slack_s = 1e-9;
};

// Exact optimum for a fixed processing order by dynamic programming over
// (v, t^P, t, models) states with dominance pruning. Ties on v prefer smaller
// t, then smaller t^P, then the lexicographically smaller model list.
ExecutionPlan solve_dp(const AllocInstance& inst, std::span<const int> order,
                       const DpOptions& options = {});

// Uniformly random permutation of 0..r-1 drawn from `seed`.
std::vector<int> random_order(int r, std::uint64_t seed);

// solve_dp on one random processing order.
ExecutionPlan solve(const AllocInstance& inst, std::uint64_t seed,
                    const DpOptions& options = {});

// Exhaustive search over all (m+1)^r assignments for a fixed order. Throws
// DomainError when (m+1)^r exceeds 10^6.
ExecutionPlan brute_force(const AllocInstance& inst, std::span<const int> order,
                          double feasibility_slack_s = 1e-9);

// Best solve_dp plan over every processing order. Throws DomainError for
// more than 8 SRoIs.
ExecutionPlan best_over_all_orders(const AllocInstance& inst,
                                   const DpOptions& options = {});

}  // namespace omnisense

#endif  // OMNISENSE_ALLOCATOR_H_
