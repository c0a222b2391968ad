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

#include "omnisense/simulator.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <deque>
#include <queue>
#include <tuple>

#include "omnisense/error.h"
#include "omnisense/nms.h"
#include "omnisense/random.h"

namespace omnisense {
namespace {

constexpr std::uint64_t kNetworkStream = 0x6e6574;
constexpr std::uint64_t kOrderStream = 0x6f7264;
constexpr std::size_t kMaxRecentCounts = 256;

TaskRecord make_task(const ModelProfile& model, const SimConfig& cfg, std::int64_t frame,
                     std::uint64_t task, int sroi) {
  TaskRecord t;
  t.sroi = sroi;
  t.model = model.index;
  t.preprocess_s = projection_latency(model);
  if (model.placement == Placement::kRemote) {
    t.preprocess_s += encode_latency(model, cfg.compression);
  }
  t.network_s = realized_network_delay(model, cfg, frame, task);
  t.inference_s = t.network_s + model.infer_latency_s;
  return t;
}

void record_network(NetworkState& net, const SimConfig& cfg,
                    std::span<const TaskRecord> tasks) {
  for (const auto& t : tasks) {
    if (cfg.models.at(t.model).placement == Placement::kRemote) net.record(t.model, t.network_s);
  }
}

std::string plan_label(const ExecutionPlan& plan) {
  if (plan.assignment.empty()) return "none";
  std::string s;
  for (std::size_t j = 0; j < plan.assignment.size(); ++j) {
    if (j) s += '-';
    s += std::to_string(plan.assignment[j]);
  }
  return s;
}

}  // namespace

std::string Method::label() const {
  switch (kind) {
    case MethodKind::kOmniSense:
      return "omnisense";
    case MethodKind::kErp:
      return "erp:" + std::to_string(model);
    case MethodKind::kCubemap:
      return "cubemap:" + std::to_string(model);
  }
  return "unknown";
}

Method parse_method(std::string_view s) {
  if (s == "omnisense") return {MethodKind::kOmniSense, 0};
  const auto colon = s.find(':');
  if (colon != std::string_view::npos) {
    const std::string_view kind = s.substr(0, colon);
    const std::string_view num = s.substr(colon + 1);
    int model = 0;
    const auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), model);
    if (ec == std::errc() && ptr == num.data() + num.size() && model > 0) {
      if (kind == "erp") return {MethodKind::kErp, model};
      if (kind == "cubemap") return {MethodKind::kCubemap, model};
    }
  }
  throw ConfigError("unknown method '" + std::string(s) +
                    "' (expected omnisense, erp:<i> or cubemap:<i>)");
}

void SimConfig::validate() const {
  if (!(budget_s > 0.0) || !std::isfinite(budget_s)) throw ConfigError("budget_s must be positive");
  if (!(bandwidth_bps > 0.0) || !std::isfinite(bandwidth_bps)) {
    throw ConfigError("bandwidth_bps must be positive");
  }
  if (!(rtt_s >= 0.0)) throw ConfigError("rtt_s must be >= 0");
  if (network_window < 1) throw ConfigError("network_window must be >= 1");
  if (!(network_jitter >= 0.0)) throw ConfigError("network_jitter must be >= 0");
  detector.validate();
  predictor.validate();
  models.validate();
  if (discovery_model < 0 || discovery_model >= models.size()) {
    throw ConfigError("discovery_model out of range");
  }
  if (resolved_discovery_model() <= 0) {
    throw ConfigError("discovery_model: no usable model (set it explicitly)");
  }
  if (!(nms_threshold > 0.0 && nms_threshold <= 1.0)) {
    throw ConfigError("nms_threshold must lie in (0, 1]");
  }
  if (!(frame_overhead_s >= 0.0)) throw ConfigError("frame_overhead_s must be >= 0");
  if (!(max_grid_fov > 0.0 && max_grid_fov < kPi)) {
    throw ConfigError("max_grid_fov must lie in (0, 180) degrees");
  }
  eval.validate();
}

int SimConfig::resolved_discovery_model() const {
  if (discovery_model > 0) return discovery_model;
  const int remote = models.most_accurate_remote();
  return remote > 0 ? remote : models.size() - 1;
}

double simulate_pipeline(std::span<const TaskRecord> tasks) {
  enum Kind { kPreprocessDone, kInferenceDone };
  using Event = std::tuple<double, std::uint64_t, Kind, std::size_t>;
  std::priority_queue<Event, std::vector<Event>, std::greater<>> events;
  std::uint64_t seq = 0;
  std::deque<std::size_t> ready;
  bool pipeline_busy = false;
  std::size_t next_preprocess = 0;
  double finished = 0.0;

  auto start_inference = [&](double now) {
    if (pipeline_busy || ready.empty()) return;
    const std::size_t k = ready.front();
    ready.pop_front();
    pipeline_busy = true;
    events.emplace(now + tasks[k].inference_s, seq++, kInferenceDone, k);
  };
  if (!tasks.empty()) {
    events.emplace(tasks[0].preprocess_s, seq++, kPreprocessDone, std::size_t{0});
    next_preprocess = 1;
  }
  while (!events.empty()) {
    const auto [now, s, kind, k] = events.top();
    events.pop();
    if (kind == kPreprocessDone) {
      ready.push_back(k);
      if (next_preprocess < tasks.size()) {
        events.emplace(now + tasks[next_preprocess].preprocess_s, seq++, kPreprocessDone,
                       next_preprocess);
        ++next_preprocess;
      }
    } else {
      pipeline_busy = false;
      finished = now;
    }
    start_inference(now);
  }
  return finished;
}

double realized_network_delay(const ModelProfile& model, const SimConfig& cfg,
                              std::int64_t frame, std::uint64_t task) {
  if (model.is_skip() || model.placement == Placement::kLocal) return 0.0;
  double d = transfer_delay_s(model.input_side, bytes_per_pixel(model, cfg.compression),
                              cfg.bandwidth_bps, cfg.rtt_s);
  if (cfg.network_jitter > 0.0) {
    const auto f = static_cast<std::uint64_t>(frame);
    const double u1 =
        std::max(keyed_uniform({cfg.network_seed, f, task, kNetworkStream, 0}), 0x1.0p-53);
    const double u2 = keyed_uniform({cfg.network_seed, f, task, kNetworkStream, 1});
    const double z = std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
    const double s = cfg.network_jitter;
    d *= std::exp(s * z - 0.5 * s * s);
  }
  return d;
}

PerspectiveGrid sroi_grid(const SRoI& sroi, int side, const SimConfig& cfg) {
  const double fov = sroi.special
                         ? std::min(std::max(sroi.box.fov_h(), sroi.box.fov_v()), cfg.max_grid_fov)
                         : cfg.predictor.fov;
  return PerspectiveGrid(sroi.box.center(), fov, side);
}

OmniSenseRunner::OmniSenseRunner(const SimConfig& cfg)
    : cfg_(cfg),
      history_(cfg.predictor.history_frames),
      network_(cfg.bandwidth_bps, cfg.rtt_s, cfg.network_window) {
  cfg_.validate();
}

FrameResult OmniSenseRunner::run_discovery(const TraceFrame& truth) {
  FrameResult r;
  r.frame = truth.index;
  r.discovery = true;
  const ModelProfile& model = cfg_.models.at(cfg_.resolved_discovery_model());
  r.tasks.push_back(make_task(model, cfg_, truth.index, 0, -1));
  r.exec_latency_s = simulate_pipeline(r.tasks);
  r.e2e_latency_s = cfg_.frame_overhead_s + r.exec_latency_s;
  r.plan = "discovery:" + std::to_string(model.index);
  const auto dets = simulate_detection(model, DetectorView::equirect(model.input_side),
                                       truth.objects, cfg_.detector,
                                       {cfg_.detector_seed, truth.index, 0});
  r.detections = spherical_nms(dets, cfg_.nms_threshold);
  history_.push_frame(truth.index, {});
  history_.absorb_discovery(r.detections);
  record_network(network_, cfg_, r.tasks);
  recent_counts_.clear();
  return r;
}

FrameResult OmniSenseRunner::run_frame(const TraceFrame& truth) {
  const bool discover = !started_ || discovery_due(recent_counts_, cfg_.predictor);
  started_ = true;
  if (discover) return run_discovery(truth);

  FrameResult r;
  r.frame = truth.index;
  const std::vector<DetectedObject> objects = history_.objects();
  r.srois = predict_srois(objects, cfg_.predictor, cfg_.detector.classifier,
                          cfg_.models.categories);
  r.num_srois = static_cast<int>(r.srois.size());
  recent_counts_.push_back(r.num_srois);
  if (recent_counts_.size() > kMaxRecentCounts) recent_counts_.erase(recent_counts_.begin());

  const AllocInstance inst =
      build_instance(r.srois, cfg_.models, network_, cfg_.compression, cfg_.budget_s);
  r.exec_plan = solve(inst, mix64(cfg_.order_seed ^ mix64(static_cast<std::uint64_t>(truth.index) ^ kOrderStream)),
                      cfg_.dp);
  r.plan = plan_label(r.exec_plan);

  std::vector<DetectedObject> dets;
  for (int j : r.exec_plan.order) {
    const int i = r.exec_plan.assignment[static_cast<std::size_t>(j)];
    if (i == 0) continue;
    const ModelProfile& model = cfg_.models.at(i);
    const auto task_id = static_cast<std::uint64_t>(r.tasks.size());
    r.tasks.push_back(make_task(model, cfg_, truth.index, task_id, j));
    const SRoI& sroi = r.srois[static_cast<std::size_t>(j)];
    auto found = simulate_detection(
        model, DetectorView::perspective(sroi_grid(sroi, model.input_side, cfg_)),
        truth.objects, cfg_.detector, {cfg_.detector_seed, truth.index, task_id});
    if (sroi.special && found.size() > 1) {
      // A special SRoI is there for its one large object.
      const auto largest = std::max_element(
          found.begin(), found.end(), [](const DetectedObject& a, const DetectedObject& b) {
            return sph_area(a.box) < sph_area(b.box);
          });
      found = {*largest};
    }
    dets.insert(dets.end(), found.begin(), found.end());
  }
  r.exec_latency_s = simulate_pipeline(r.tasks);
  r.e2e_latency_s = cfg_.frame_overhead_s + r.exec_latency_s;
  r.detections = spherical_nms(dets, cfg_.nms_threshold);
  history_.push_frame(truth.index, r.detections);
  record_network(network_, cfg_, r.tasks);
  return r;
}

FrameResult run_erp_baseline(const TraceFrame& truth, int model_index, const SimConfig& cfg) {
  const ModelProfile& model = cfg.models.at(model_index);
  if (model.is_skip()) throw ConfigError("ERP baseline needs a real model");
  FrameResult r;
  r.frame = truth.index;
  r.plan = "erp:" + std::to_string(model_index);
  r.tasks.push_back(make_task(model, cfg, truth.index, 0, -1));
  r.exec_latency_s = simulate_pipeline(r.tasks);
  r.e2e_latency_s = cfg.frame_overhead_s + r.exec_latency_s;
  const auto dets = simulate_detection(model, DetectorView::equirect(model.input_side),
                                       truth.objects, cfg.detector,
                                       {cfg.detector_seed, truth.index, 0});
  r.detections = spherical_nms(dets, cfg.nms_threshold);
  return r;
}

FrameResult run_cubemap_baseline(const TraceFrame& truth, int model_index,
                                 const SimConfig& cfg) {
  const ModelProfile& model = cfg.models.at(model_index);
  if (model.is_skip()) throw ConfigError("CubeMap baseline needs a real model");
  FrameResult r;
  r.frame = truth.index;
  r.plan = "cubemap:" + std::to_string(model_index);
  std::vector<DetectedObject> dets;
  std::uint64_t face_id = 0;
  for (const CubeFace& face : cubemap_faces()) {
    r.tasks.push_back(make_task(model, cfg, truth.index, face_id, -1));
    const auto found = simulate_detection(
        model, DetectorView::perspective(PerspectiveGrid(face.center, face.fov, model.input_side)),
        truth.objects, cfg.detector, {cfg.detector_seed, truth.index, face_id});
    dets.insert(dets.end(), found.begin(), found.end());
    ++face_id;
  }
  if (cfg.cubemap_serial) {
    for (const auto& t : r.tasks) r.exec_latency_s += t.preprocess_s + t.inference_s;
  } else {
    r.exec_latency_s = simulate_pipeline(r.tasks);
  }
  r.e2e_latency_s = cfg.frame_overhead_s + r.exec_latency_s;
  r.detections = spherical_nms(dets, cfg.nms_threshold);
  return r;
}

ExperimentResult run_experiment(std::span<const TraceFrame> trace, const SimConfig& cfg,
                                const Method& method) {
  cfg.validate();
  if (method.kind != MethodKind::kOmniSense &&
      (method.model <= 0 || method.model >= cfg.models.size())) {
    throw ConfigError("method '" + method.label() + "': model index out of range");
  }
  ExperimentResult out;
  out.frames.reserve(trace.size());
  if (method.kind == MethodKind::kOmniSense) {
    OmniSenseRunner runner(cfg);
    for (const auto& f : trace) out.frames.push_back(runner.run_frame(f));
  } else {
    for (const auto& f : trace) {
      out.frames.push_back(method.kind == MethodKind::kErp
                               ? run_erp_baseline(f, method.model, cfg)
                               : run_cubemap_baseline(f, method.model, cfg));
    }
  }

  ExperimentSummary& s = out.summary;
  s.method = method.label();
  s.frames = static_cast<int>(out.frames.size());
  if (out.frames.empty()) return out;

  std::vector<double> latencies;
  std::vector<std::vector<DetectedObject>> dets;
  std::vector<std::vector<DetectedObject>> truths;
  int planned = 0;
  for (std::size_t k = 0; k < out.frames.size(); ++k) {
    const FrameResult& r = out.frames[k];
    latencies.push_back(r.e2e_latency_s);
    dets.push_back(r.detections);
    truths.push_back(trace[k].objects);
    if (r.discovery) ++s.discovery_frames;
    if (method.kind == MethodKind::kOmniSense && !r.discovery) {
      s.mean_estimated_accuracy += r.exec_plan.estimated_accuracy;
      ++planned;
    }
  }
  if (planned > 0) s.mean_estimated_accuracy /= planned;
  s.mean_latency_s = mean_e2e_latency(latencies);
  try {
    const MapResult m = sph_map(dets, truths, cfg.eval);
    s.sph_map = m.map;
    s.per_category_ap = m.per_category_ap;
  } catch (const DomainError&) {
    // No ground truth in the trace: mAP is undefined.
  }
  return out;
}

}  // namespace omnisense
