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

#ifndef OMNISENSE_INSTANCE_IO_H_
#define OMNISENSE_INSTANCE_IO_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "omnisense/allocator.h"

namespace omnisense {

// Allocation instance file:
//   {"version": 1, "budget_s": T, "seed": s,
//    "models": ["skip", "m1", ...],
//    "srois": [{"alpha": a, "ccv": [...], "A": [...], "dP": [...], "dI": [...]}]}
// Per-model arrays follow "models"; the skip entry must be zero. "version",
// "seed", "alpha" and "ccv" are optional.
struct PlanRequest {
  AllocInstance instance;
  std::uint64_t seed = 0;
};

PlanRequest parse_instance(std::string_view json_text);
PlanRequest load_instance(const std::filesystem::path& path);
std::string serialize_instance(const AllocInstance& inst, std::uint64_t seed = 0);

// {"version": 1, "assignment": [...], "models": [names], "order": [...],
//  "v": ..., "latency_s": ..., "approximate": ...}
std::string serialize_plan(const AllocInstance& inst, const ExecutionPlan& plan);
ExecutionPlan parse_plan(std::string_view json_text);

}  // namespace omnisense

#endif  // OMNISENSE_INSTANCE_IO_H_
