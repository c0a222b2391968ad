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

#include "omnisense/model_profile.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "omnisense/error.h"
#include "omnisense/matching.h"
#include "omnisense/random.h"

namespace omnisense {
namespace {

void require_non_negative(double v, const std::string& what) {
  if (!std::isfinite(v) || v < 0.0) {
    std::ostringstream os;
    os << what << " must be a finite non-negative number (got " << v << ")";
    throw ConfigError(os.str());
  }
}

}  // namespace

std::string_view to_string(Placement p) {
  return p == Placement::kLocal ? "local" : "remote";
}

Placement parse_placement(std::string_view s) {
  if (s == "local") return Placement::kLocal;
  if (s == "remote") return Placement::kRemote;
  throw ConfigError("unknown placement '" + std::string(s) + "'");
}

std::string_view to_string(Compression c) {
  switch (c) {
    case Compression::kLossless:
      return "lossless";
    case Compression::kQ100:
      return "q100";
    case Compression::kQ75:
      return "q75";
    case Compression::kQ50:
      return "q50";
    case Compression::kQ25:
      return "q25";
  }
  return "unknown";
}

Compression parse_compression(std::string_view s) {
  for (Compression c : kAllCompressions) {
    if (to_string(c) == s) return c;
  }
  throw ConfigError("unknown compression setting '" + std::string(s) + "'");
}

double default_bytes_per_pixel(Compression c) {
  switch (c) {
    case Compression::kLossless:
      return 1.5;
    case Compression::kQ100:
      return 0.8;
    case Compression::kQ75:
      return 0.35;
    case Compression::kQ50:
      return 0.25;
    case Compression::kQ25:
      return 0.18;
  }
  return 1.5;
}

ModelProfile ModelProfile::skip(int n_categories) {
  ModelProfile m;
  m.index = 0;
  m.name = "skip";
  m.gav.assign(static_cast<std::size_t>(kSizeLevels) * n_categories, 0.0);
  return m;
}

void ModelProfile::validate(int n_categories) const {
  const std::string who = "model '" + name + "'";
  if (gav.size() != static_cast<std::size_t>(kSizeLevels) * n_categories) {
    throw ConfigError(who + ": gav must have 3 x " + std::to_string(n_categories) +
                      " entries");
  }
  for (double a : gav) {
    if (!std::isfinite(a) || a < 0.0 || a > 1.0) {
      throw ConfigError(who + ": gav entries must lie in [0, 1]");
    }
  }
  require_non_negative(infer_latency_s, who + ": infer_latency_s");
  for (const auto& [side, v] : projection_latency_s) {
    require_non_negative(v, who + ": projection_latency_s[" + std::to_string(side) + "]");
  }
  for (const auto& [side, per_c] : encode_latency_s) {
    for (const auto& [c, v] : per_c) {
      require_non_negative(v, who + ": encode_latency_s[" + std::to_string(side) + "][" +
                                  std::string(to_string(c)) + "]");
    }
  }
  for (const auto& [c, v] : bytes_per_pixel) {
    require_non_negative(v, who + ": bytes_per_pixel[" + std::string(to_string(c)) + "]");
  }
  if (is_skip()) {
    const bool zero_gav = std::all_of(gav.begin(), gav.end(), [](double a) { return a == 0.0; });
    if (!zero_gav || infer_latency_s != 0.0) {
      throw ConfigError("skip profile must have zero gav and zero latency");
    }
    return;
  }
  if (input_side <= 0) throw ConfigError(who + ": input_side must be positive");
}

const ModelProfile& ModelSet::at(int index) const {
  if (index < 0 || index >= size()) {
    throw RangeError("model index " + std::to_string(index) + " out of range");
  }
  return models[static_cast<std::size_t>(index)];
}

int ModelSet::most_accurate_remote() const {
  int best = -1;
  double best_mean = -1.0;
  for (const auto& m : models) {
    if (m.is_skip() || m.placement != Placement::kRemote) continue;
    const double mean = std::accumulate(m.gav.begin(), m.gav.end(), 0.0) /
                        static_cast<double>(m.gav.size());
    if (mean > best_mean) {
      best_mean = mean;
      best = m.index;
    }
  }
  return best;
}

void ModelSet::validate() const {
  if (categories <= 0) throw ConfigError("categories must be positive");
  if (models.empty() || !models.front().is_skip()) {
    throw ConfigError("model set must start with the skip profile");
  }
  for (int i = 0; i < size(); ++i) {
    if (models[i].index != i) throw ConfigError("model indices must be 0..m in order");
    models[i].validate(categories);
  }
}

ModelSet default_model_set(int n_categories) {
  struct Variant {
    const char* name;
    int side;
    Placement placement;
    double small, medium, large;
    double infer_s;
  };
  // Accuracy and latency rise together across the family.
  static constexpr Variant kVariants[] = {
      {"yolov4-tiny-416", 416, Placement::kLocal, 0.05, 0.40, 0.65, 0.110},
      {"yolov4-csp-512", 512, Placement::kRemote, 0.10, 0.55, 0.78, 0.030},
      {"yolov4-csp-640", 640, Placement::kRemote, 0.15, 0.62, 0.83, 0.042},
      {"yolov4-p5-896", 896, Placement::kRemote, 0.20, 0.68, 0.87, 0.075},
      {"yolov4-p6-1280", 1280, Placement::kRemote, 0.25, 0.72, 0.89, 0.140},
  };
  static constexpr std::pair<int, double> kProjection[] = {
      {416, 0.020}, {512, 0.026}, {640, 0.038}, {896, 0.070}, {1280, 0.140}};
  static constexpr std::pair<int, double> kLosslessEncode[] = {
      {416, 0.024}, {512, 0.030}, {640, 0.045}, {896, 0.085}, {1280, 0.170}};
  static constexpr std::pair<Compression, double> kEncodeScale[] = {
      {Compression::kLossless, 1.0}, {Compression::kQ100, 0.6},
      {Compression::kQ75, 0.5},      {Compression::kQ50, 0.45},
      {Compression::kQ25, 0.4}};

  ModelSet set;
  set.categories = n_categories;
  set.models.push_back(ModelProfile::skip(n_categories));
  int index = 1;
  for (const Variant& v : kVariants) {
    ModelProfile m;
    m.index = index++;
    m.name = v.name;
    m.input_side = v.side;
    m.placement = v.placement;
    m.infer_latency_s = v.infer_s;
    m.gav.resize(static_cast<std::size_t>(kSizeLevels) * n_categories);
    for (int c = 0; c < n_categories; ++c) {
      // Category difficulty shared by every variant keeps the family ordered.
      const double offset = 0.12 * (keyed_uniform({0x6761u, static_cast<std::uint64_t>(c)}) - 0.5);
      m.gav[cell_index(SizeLevel::kSmall, c, n_categories)] = std::clamp(v.small + offset, 0.0, 1.0);
      m.gav[cell_index(SizeLevel::kMedium, c, n_categories)] = std::clamp(v.medium + offset, 0.0, 1.0);
      m.gav[cell_index(SizeLevel::kLarge, c, n_categories)] = std::clamp(v.large + offset, 0.0, 1.0);
    }
    for (auto [side, s] : kProjection) m.projection_latency_s[side] = s;
    if (v.placement == Placement::kRemote) {
      for (auto [side, s] : kLosslessEncode) {
        for (auto [c, scale] : kEncodeScale) m.encode_latency_s[side][c] = s * scale;
      }
      for (Compression c : kAllCompressions) m.bytes_per_pixel[c] = default_bytes_per_pixel(c);
    }
    set.models.push_back(std::move(m));
  }
  return set;
}

NetworkState::NetworkState(double bandwidth_bps, double rtt_s, int window)
    : bandwidth_bps_(bandwidth_bps), rtt_s_(rtt_s), window_(window) {
  if (!(bandwidth_bps > 0.0) || !std::isfinite(bandwidth_bps)) {
    throw ConfigError("bandwidth_bps must be positive");
  }
  require_non_negative(rtt_s, "rtt_s");
  if (window < 1) throw ConfigError("network window must be >= 1");
}

void NetworkState::record(int model_index, double delay_s) {
  if (!(delay_s >= 0.0)) throw DomainError("network delay sample must be >= 0");
  auto& buf = samples_[model_index];
  buf.push_back(delay_s);
  if (static_cast<int>(buf.size()) > window_) buf.erase(buf.begin());
}

std::optional<double> NetworkState::mean_delay(int model_index) const {
  const auto it = samples_.find(model_index);
  if (it == samples_.end() || it->second.empty()) return std::nullopt;
  return std::accumulate(it->second.begin(), it->second.end(), 0.0) /
         static_cast<double>(it->second.size());
}

std::span<const double> NetworkState::samples(int model_index) const {
  const auto it = samples_.find(model_index);
  if (it == samples_.end()) return {};
  return it->second;
}

double estimate_accuracy(const ModelProfile& model, std::span<const double> ccv) {
  if (model.gav.size() != ccv.size()) {
    throw ConfigError("estimate_accuracy: gav has " + std::to_string(model.gav.size()) +
                      " entries but ccv has " + std::to_string(ccv.size()));
  }
  if (model.is_skip()) return 0.0;
  double acc = 0.0;
  for (std::size_t k = 0; k < ccv.size(); ++k) acc += model.gav[k] * ccv[k];
  return acc;
}

double weighted_accuracy(const ModelProfile& model, std::span<const double> ccv,
                         double alpha) {
  return alpha * estimate_accuracy(model, ccv);
}

double transfer_delay_s(int side, double bytes_per_pixel, double bandwidth_bps,
                        double rtt_s) {
  const double bytes = static_cast<double>(side) * side * bytes_per_pixel;
  return bytes * 8.0 / bandwidth_bps + rtt_s;
}

double projection_latency(const ModelProfile& model) {
  const auto it = model.projection_latency_s.find(model.input_side);
  if (it == model.projection_latency_s.end()) {
    throw ConfigError("model '" + model.name + "' has no projection latency for side " +
                      std::to_string(model.input_side));
  }
  return it->second;
}

double encode_latency(const ModelProfile& model, Compression compression) {
  const auto side = model.encode_latency_s.find(model.input_side);
  if (side != model.encode_latency_s.end()) {
    const auto it = side->second.find(compression);
    if (it != side->second.end()) return it->second;
  }
  throw ConfigError("model '" + model.name + "' has no encode latency for side " +
                    std::to_string(model.input_side) + " / " +
                    std::string(to_string(compression)));
}

double bytes_per_pixel(const ModelProfile& model, Compression compression) {
  const auto it = model.bytes_per_pixel.find(compression);
  if (it == model.bytes_per_pixel.end()) {
    throw ConfigError("model '" + model.name + "' has no bytes_per_pixel for " +
                      std::string(to_string(compression)));
  }
  return it->second;
}

double estimate_network_delay(const ModelProfile& model, const NetworkState& net,
                              Compression compression) {
  if (model.is_skip() || model.placement == Placement::kLocal) return 0.0;
  if (auto mean = net.mean_delay(model.index)) return *mean;
  return transfer_delay_s(model.input_side, bytes_per_pixel(model, compression),
                          net.bandwidth_bps(), net.rtt_s());
}

DelayEstimate estimate_delay(const ModelProfile& model, const NetworkState& net,
                             Compression compression) {
  if (model.is_skip()) return {};
  DelayEstimate d;
  d.preprocess_s = projection_latency(model);
  if (model.placement == Placement::kRemote) {
    d.preprocess_s += encode_latency(model, compression);
  }
  d.inference_s = estimate_network_delay(model, net, compression) + model.infer_latency_s;
  return d;
}

std::vector<double> profile_gav(std::span<const LabeledFrame> frames,
                                const SizeClassifier& cls, int n_categories,
                                double iou_threshold) {
  const std::size_t cells = static_cast<std::size_t>(kSizeLevels) * n_categories;
  std::vector<double> hits(cells, 0.0), totals(cells, 0.0);
  for (const auto& frame : frames) {
    const std::vector<Match> matches =
        greedy_match(frame.detections, frame.truths, iou_threshold);
    std::vector<bool> found(frame.truths.size(), false);
    for (const auto& m : matches) {
      if (m.truth) found[*m.truth] = true;
    }
    for (std::size_t t = 0; t < frame.truths.size(); ++t) {
      const auto& truth = frame.truths[t];
      const SizeLevel level = size_level(normalized_area(truth.box), cls);
      const int cell = cell_index(level, truth.category, n_categories);
      totals[cell] += 1.0;
      if (found[t]) hits[cell] += 1.0;
    }
  }
  std::vector<double> gav(cells, 0.0);
  for (std::size_t k = 0; k < cells; ++k) {
    if (totals[k] > 0.0) gav[k] = hits[k] / totals[k];
  }
  return gav;
}

}  // namespace omnisense
