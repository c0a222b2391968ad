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

#ifndef OMNISENSE_SIMULATOR_H_
#define OMNISENSE_SIMULATOR_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "omnisense/allocator.h"
#include "omnisense/detector_sim.h"
#include "omnisense/evaluation.h"
#include "omnisense/model_profile.h"
#include "omnisense/sroi_predictor.h"
#include "omnisense/trace.h"

namespace omnisense {

enum class MethodKind { kOmniSense, kErp, kCubemap };

// "omnisense", "erp:<model index>" or "cubemap:<model index>".
struct Method {
  MethodKind kind = MethodKind::kOmniSense;
  int model = 0;

  std::string label() const;
  friend bool operator==(const Method&, const Method&) = default;
};

Method parse_method(std::string_view s);

struct SimConfig {
  double budget_s = 1.0;
  Compression compression = Compression::kLossless;
  double bandwidth_bps = kDefaultBandwidthBps;
  double rtt_s = 0.0;
  int network_window = kDefaultNetworkWindow;
  // Log-normal sigma on realized delivery delays; 0 keeps them deterministic.
  double network_jitter = 0.0;
  std::uint64_t detector_seed = 1;
  std::uint64_t order_seed = 1;
  std::uint64_t network_seed = 1;
  DetectorParams detector;
  PredictorConfig predictor;
  ModelSet models = default_model_set();
  // Model for discovery frames; 0 picks the most accurate remote model.
  int discovery_model = 0;
  double nms_threshold = 0.6;
  // Fixed per-frame cost added to every E2E latency.
  double frame_overhead_s = 0.0;
  // Process CubeMap faces back to back instead of pipelining them.
  bool cubemap_serial = false;
  // Widest grid used for a special SRoI.
  double max_grid_fov = deg2rad(170.0);
  DpOptions dp;
  EvalConfig eval;

  void validate() const;
  int resolved_discovery_model() const;
};

// One inference task as executed.
struct TaskRecord {
  int sroi = -1;  // -1 for whole-frame and cube-face passes
  int model = 0;
  double preprocess_s = 0.0;
  double inference_s = 0.0;
  double network_s = 0.0;
};

struct FrameResult {
  std::int64_t frame = 0;
  std::vector<DetectedObject> detections;
  double e2e_latency_s = 0.0;
  // Completion time of the executed tasks, without frame overhead.
  double exec_latency_s = 0.0;
  std::string plan;
  bool discovery = false;
  int num_srois = 0;
  std::vector<SRoI> srois;
  ExecutionPlan exec_plan;
  std::vector<TaskRecord> tasks;
};

// Completion time of tasks run in sequence on two serial resources: the
// device preprocesses one task at a time, and a task's delivery and
// inference start once its preprocessing and the previous inference finish.
// Simulated event by event.
double simulate_pipeline(std::span<const TaskRecord> tasks);

// Realized delivery delay of one remote pass.
double realized_network_delay(const ModelProfile& model, const SimConfig& cfg,
                              std::int64_t frame, std::uint64_t task);

// Frame-by-frame OmniSense loop holding the detection history and network
// profiler between frames.
class OmniSenseRunner {
 public:
  explicit OmniSenseRunner(const SimConfig& cfg);

  FrameResult run_frame(const TraceFrame& truth);

  const DetectionHistory& history() const { return history_; }
  const NetworkState& network() const { return network_; }

 private:
  FrameResult run_discovery(const TraceFrame& truth);

  SimConfig cfg_;
  DetectionHistory history_;
  NetworkState network_;
  std::vector<int> recent_counts_;
  bool started_ = false;
};

FrameResult run_erp_baseline(const TraceFrame& truth, int model, const SimConfig& cfg);
FrameResult run_cubemap_baseline(const TraceFrame& truth, int model, const SimConfig& cfg);

// Grid a model sees for an SRoI.
PerspectiveGrid sroi_grid(const SRoI& sroi, int side, const SimConfig& cfg);

struct ExperimentSummary {
  std::string method;
  int frames = 0;
  std::optional<double> mean_latency_s;
  std::optional<double> sph_map;
  std::map<int, double> per_category_ap;
  int discovery_frames = 0;
  double mean_estimated_accuracy = 0.0;
};

struct ExperimentResult {
  std::vector<FrameResult> frames;
  ExperimentSummary summary;
};

ExperimentResult run_experiment(std::span<const TraceFrame> trace, const SimConfig& cfg,
                                const Method& method);

}  // namespace omnisense

#endif  // OMNISENSE_SIMULATOR_H_
