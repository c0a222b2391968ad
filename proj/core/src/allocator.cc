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

#include "omnisense/allocator.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "omnisense/error.h"
#include "omnisense/random.h"

namespace omnisense {
namespace {

struct State {
  double v = 0.0;
  double tp = 0.0;
  double t = 0.0;
  std::vector<int> models;  // in processing order
};

// Canonical order: higher v first, then smaller t, smaller t^P, and the
// lexicographically smaller model list.
bool canonical_less(const State& a, const State& b) {
  if (a.v != b.v) return a.v > b.v;
  if (a.t != b.t) return a.t < b.t;
  if (a.tp != b.tp) return a.tp < b.tp;
  return a.models < b.models;
}

double quantize(double x, double q) { return q > 0.0 ? std::ceil(x / q) * q : x; }

// Removes every state dominated by another (v >=, t^P <=, t <=, at least one
// strict) and collapses exact duplicates onto the canonical representative.
// After sorting canonically, a state is dominated iff an earlier state has
// t^P <= and t <=; a staircase over (t^P, t) answers that in O(log n).
void prune_dominated(std::vector<State>& states, double quantum) {
  std::sort(states.begin(), states.end(), canonical_less);
  std::map<double, double> stairs;  // t^P -> t, t strictly decreasing in t^P
  std::vector<State> kept;
  kept.reserve(states.size());
  for (auto& s : states) {
    const double tp = quantize(s.tp, quantum);
    const double t = quantize(s.t, quantum);
    auto it = stairs.upper_bound(tp);
    if (it != stairs.begin() && std::prev(it)->second <= t) continue;
    it = stairs.insert_or_assign(tp, t).first;
    auto next = std::next(it);
    while (next != stairs.end() && next->second >= t) next = stairs.erase(next);
    kept.push_back(std::move(s));
  }
  states = std::move(kept);
}

void check_order(const AllocInstance& inst, std::span<const int> order) {
  const int r = inst.num_srois();
  if (static_cast<int>(order.size()) != r) {
    throw DomainError("processing order must list every SRoI exactly once");
  }
  std::vector<bool> seen(static_cast<std::size_t>(r), false);
  for (int j : order) {
    if (j < 0 || j >= r || seen[static_cast<std::size_t>(j)]) {
      throw DomainError("processing order must be a permutation of 0..r-1");
    }
    seen[static_cast<std::size_t>(j)] = true;
  }
}

ExecutionPlan to_plan(const State& best, std::span<const int> order) {
  ExecutionPlan plan;
  plan.order.assign(order.begin(), order.end());
  plan.assignment.assign(order.size(), 0);
  for (std::size_t k = 0; k < order.size(); ++k) {
    plan.assignment[static_cast<std::size_t>(order[k])] = best.models[k];
  }
  plan.estimated_accuracy = best.v;
  plan.estimated_latency_s = best.t;
  return plan;
}

void check_table(const Table& t, int rows, int cols, const char* name) {
  if (t.rows() != rows || t.cols() != cols) {
    throw ConfigError(std::string("instance table '") + name + "' has the wrong shape");
  }
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      const double v = t(i, j);
      if (!std::isfinite(v) || v < 0.0) {
        throw ConfigError(std::string("instance table '") + name + "' entry (" +
                          std::to_string(i) + ", " + std::to_string(j) +
                          ") must be finite and non-negative");
      }
      if (i == 0 && v != 0.0) {
        throw ConfigError(std::string("instance table '") + name +
                          "': the skip row must be zero");
      }
    }
  }
}

}  // namespace

void AllocInstance::validate() const {
  if (!(budget_s > 0.0)) throw ConfigError("instance budget_s must be positive");
  const int m = accuracy.rows();
  const int r = accuracy.cols();
  if (m < 1) throw ConfigError("instance needs at least the skip model");
  if (!model_names.empty() && static_cast<int>(model_names.size()) != m) {
    throw ConfigError("instance model_names does not match the table rows");
  }
  check_table(accuracy, m, r, "A");
  check_table(preprocess_s, m, r, "dP");
  check_table(inference_s, m, r, "dI");
}

AllocInstance build_instance(std::span<const SRoI> srois, const ModelSet& models,
                             const NetworkState& net, Compression compression,
                             double budget_s) {
  AllocInstance inst;
  inst.budget_s = budget_s;
  const int m = models.size();
  const int r = static_cast<int>(srois.size());
  inst.accuracy = Table(m, r);
  inst.preprocess_s = Table(m, r);
  inst.inference_s = Table(m, r);
  for (const auto& model : models.models) inst.model_names.push_back(model.name);
  for (int i = 1; i < m; ++i) {
    const ModelProfile& model = models.models[static_cast<std::size_t>(i)];
    const DelayEstimate d = estimate_delay(model, net, compression);
    for (int j = 0; j < r; ++j) {
      const SRoI& s = srois[static_cast<std::size_t>(j)];
      inst.accuracy(i, j) = weighted_accuracy(model, s.ccv, s.weight);
      inst.preprocess_s(i, j) = d.preprocess_s;
      inst.inference_s(i, j) = d.inference_s;
    }
  }
  return inst;
}

double pipelined_latency(std::span<const double> preprocess_s,
                         std::span<const double> inference_s) {
  if (preprocess_s.size() != inference_s.size()) {
    throw DomainError("pipelined_latency: delay sequences differ in length");
  }
  PipelineClock clock;
  for (std::size_t k = 0; k < preprocess_s.size(); ++k) {
    clock = clock.advance(preprocess_s[k], inference_s[k]);
  }
  return clock.done;
}

double pipelined_latency(const AllocInstance& inst, std::span<const int> order,
                         std::span<const int> assignment) {
  check_order(inst, order);
  if (static_cast<int>(assignment.size()) != inst.num_srois()) {
    throw DomainError("pipelined_latency: assignment size mismatch");
  }
  PipelineClock clock;
  for (int j : order) {
    const int i = assignment[static_cast<std::size_t>(j)];
    if (i < 0 || i >= inst.num_models()) throw DomainError("model index out of range");
    clock = clock.advance(inst.preprocess_s(i, j), inst.inference_s(i, j));
  }
  return clock.done;
}

ExecutionPlan solve_dp(const AllocInstance& inst, std::span<const int> order,
                       const DpOptions& options) {
  check_order(inst, order);
  const double limit = inst.budget_s + options.feasibility_slack_s;
  bool approximate = false;

  std::vector<State> states{State{}};
  for (std::size_t k = 0; k < order.size(); ++k) {
    const int j = order[k];
    std::vector<State> next;
    next.reserve(states.size() * static_cast<std::size_t>(inst.num_models()));
    for (const State& s : states) {
      for (int i = 0; i < inst.num_models(); ++i) {
        const PipelineClock clock = PipelineClock{s.tp, s.t}.advance(
            inst.preprocess_s(i, j), inst.inference_s(i, j));
        if (clock.done > limit) continue;
        State n{s.v + inst.accuracy(i, j), clock.preprocess_done, clock.done, s.models};
        n.models.push_back(i);
        next.push_back(std::move(n));
      }
    }
    if (options.prune_dominated) prune_dominated(next, 0.0);
    if (options.state_cap > 0 && next.size() > options.state_cap) {
      approximate = true;
      prune_dominated(next, options.quantum_s);
      if (next.size() > options.state_cap) {
        std::sort(next.begin(), next.end(), canonical_less);
        next.resize(options.state_cap);
      }
    }
    states = std::move(next);
  }

  const State& best = *std::min_element(states.begin(), states.end(), canonical_less);
  ExecutionPlan plan = to_plan(best, order);
  plan.approximate = approximate;
  return plan;
}

std::vector<int> random_order(int r, std::uint64_t seed) {
  std::vector<int> order(static_cast<std::size_t>(std::max(r, 0)));
  std::iota(order.begin(), order.end(), 0);
  Rng rng(seed);
  for (std::size_t k = order.size(); k > 1; --k) {
    std::swap(order[k - 1], order[rng.below(k)]);
  }
  return order;
}

ExecutionPlan solve(const AllocInstance& inst, std::uint64_t seed, const DpOptions& options) {
  const std::vector<int> order = random_order(inst.num_srois(), seed);
  return solve_dp(inst, order, options);
}

ExecutionPlan brute_force(const AllocInstance& inst, std::span<const int> order,
                          double feasibility_slack_s) {
  check_order(inst, order);
  const int m = inst.num_models();
  const int r = inst.num_srois();
  double combos = 1.0;
  for (int k = 0; k < r; ++k) combos *= m;
  if (combos > 1e6) throw DomainError("brute_force: more than 10^6 assignments");

  const double limit = inst.budget_s + feasibility_slack_s;
  std::vector<int> models(static_cast<std::size_t>(r), 0);  // in processing order
  State best;
  bool have_best = false;
  while (true) {
    State cur;
    PipelineClock clock;
    for (int k = 0; k < r; ++k) {
      const int j = order[static_cast<std::size_t>(k)];
      const int i = models[static_cast<std::size_t>(k)];
      clock = clock.advance(inst.preprocess_s(i, j), inst.inference_s(i, j));
      cur.v = cur.v + inst.accuracy(i, j);
    }
    if (clock.done <= limit) {
      cur.tp = clock.preprocess_done;
      cur.t = clock.done;
      cur.models = models;
      if (!have_best || canonical_less(cur, best)) {
        best = std::move(cur);
        have_best = true;
      }
    }
    int pos = r - 1;
    while (pos >= 0 && ++models[static_cast<std::size_t>(pos)] == m) {
      models[static_cast<std::size_t>(pos)] = 0;
      --pos;
    }
    if (pos < 0) break;
  }
  return to_plan(best, order);
}

ExecutionPlan best_over_all_orders(const AllocInstance& inst, const DpOptions& options) {
  const int r = inst.num_srois();
  if (r > 8) throw DomainError("best_over_all_orders: more than 8 SRoIs");
  std::vector<int> order(static_cast<std::size_t>(r));
  std::iota(order.begin(), order.end(), 0);
  ExecutionPlan best = solve_dp(inst, order, options);
  while (std::next_permutation(order.begin(), order.end())) {
    ExecutionPlan p = solve_dp(inst, order, options);
    if (p.estimated_accuracy > best.estimated_accuracy ||
        (p.estimated_accuracy == best.estimated_accuracy &&
         p.estimated_latency_s < best.estimated_latency_s)) {
      best = std::move(p);
    }
  }
  return best;
}

}  // namespace omnisense
