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

#ifndef OMNISENSE_SIM_CONFIG_H_
#define OMNISENSE_SIM_CONFIG_H_

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "omnisense/simulator.h"
#include "omnisense/trace.h"

namespace omnisense {

// A parsed experiment file: configuration, methods to run and the trace.
struct Experiment {
  SimConfig sim;
  std::vector<Method> methods{Method{}};
  std::vector<TraceFrame> trace;
};

// Experiment file (JSON, "version": 1 required, unknown fields rejected).
// Relative paths resolve against `base_dir`. See the README for the fields.
Experiment parse_experiment(std::string_view json_text,
                            const std::filesystem::path& base_dir = {});
Experiment load_experiment(const std::filesystem::path& path);

struct MethodRun {
  Method method;
  ExperimentResult result;
};

// Rows: frame,method,latency_s,plan,n_detections.
std::string results_csv(std::span<const MethodRun> runs);
std::string summary_json(std::span<const MethodRun> runs);
// File name for a method's detections, e.g. "detections_erp_4.jsonl".
std::string detections_file_name(const Method& method);

// Writes results.csv, summary.json and one detections file per method.
void write_results(const std::filesystem::path& out_dir, std::span<const MethodRun> runs);

struct ResultRow {
  std::int64_t frame = 0;
  std::string method;
  double latency_s = 0.0;
  std::string plan;
  int n_detections = 0;
};

std::vector<ResultRow> parse_results_csv(std::string_view text);

}  // namespace omnisense

#endif  // OMNISENSE_SIM_CONFIG_H_
