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

#include "omnisense/evaluation.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <string>

#include "omnisense/error.h"
#include "omnisense/matching.h"

namespace omnisense {

std::string_view to_string(ApInterpolation a) {
  return a == ApInterpolation::kAllPoints ? "all-points" : "101-point";
}

ApInterpolation parse_ap_interpolation(std::string_view s) {
  if (s == "all-points") return ApInterpolation::kAllPoints;
  if (s == "101-point") return ApInterpolation::k101Point;
  throw ConfigError("unknown AP interpolation '" + std::string(s) +
                    "' (expected all-points or 101-point)");
}

void EvalConfig::validate() const {
  if (!(iou_threshold > 0.0 && iou_threshold < 1.0)) {
    throw ConfigError("iou_threshold must lie in (0, 1)");
  }
  for (int c : categories) {
    if (c < 0) throw ConfigError("evaluation categories must be >= 0");
  }
}

std::vector<MatchRecord> match_frame(std::span<const DetectedObject> detections,
                                     std::span<const DetectedObject> truths,
                                     double iou_threshold) {
  const std::vector<Match> matches = greedy_match(detections, truths, iou_threshold);
  std::vector<MatchRecord> out;
  out.reserve(detections.size());
  for (std::size_t k = 0; k < detections.size(); ++k) {
    out.push_back({detections[k], matches[k].truth, matches[k].iou,
                   matches[k].truth.has_value()});
  }
  return out;
}

double average_precision(std::span<const MatchRecord> ranked, std::size_t num_truths,
                         ApInterpolation interpolation) {
  if (num_truths == 0) throw DomainError("average_precision: no ground truth");
  std::vector<double> recall;
  std::vector<double> precision;
  recall.reserve(ranked.size());
  precision.reserve(ranked.size());
  std::size_t tp = 0;
  for (std::size_t k = 0; k < ranked.size(); ++k) {
    if (ranked[k].true_positive) ++tp;
    recall.push_back(static_cast<double>(tp) / static_cast<double>(num_truths));
    precision.push_back(static_cast<double>(tp) / static_cast<double>(k + 1));
  }
  // Precision envelope: best precision at this recall or beyond.
  for (std::size_t k = precision.size(); k-- > 1;) {
    precision[k - 1] = std::max(precision[k - 1], precision[k]);
  }
  if (interpolation == ApInterpolation::kAllPoints) {
    double ap = 0.0;
    double prev_recall = 0.0;
    for (std::size_t k = 0; k < recall.size(); ++k) {
      ap += (recall[k] - prev_recall) * precision[k];
      prev_recall = recall[k];
    }
    return ap;
  }
  double sum = 0.0;
  std::size_t k = 0;
  for (int step = 0; step <= 100; ++step) {
    const double r = step / 100.0;
    while (k < recall.size() && recall[k] < r - 1e-12) ++k;
    if (k < recall.size()) sum += precision[k];
  }
  return sum / 101.0;
}

namespace {

MapResult map_at(std::span<const EvalFrame> frames, const EvalConfig& cfg, double threshold) {
  std::set<int> categories(cfg.categories.begin(), cfg.categories.end());
  std::map<int, std::size_t> truth_count;
  for (const auto& f : frames) {
    for (const auto& t : f.truths) ++truth_count[t.category];
  }
  if (categories.empty()) {
    for (const auto& [c, n] : truth_count) categories.insert(c);
  }
  std::vector<int> scored;
  for (int c : categories) {
    if (truth_count.count(c)) scored.push_back(c);
  }
  if (scored.empty()) throw DomainError("sph_map: no ground truth for any scored category");

  // Records per category in (frame, detection) order; the stable sort below
  // keeps that order among equal confidences.
  std::map<int, std::vector<MatchRecord>> records;
  for (const auto& f : frames) {
    for (auto& rec : match_frame(f.detections, f.truths, threshold)) {
      records[rec.detection.category].push_back(std::move(rec));
    }
  }
  MapResult result;
  double sum = 0.0;
  for (int c : scored) {
    auto& recs = records[c];
    std::stable_sort(recs.begin(), recs.end(), [](const MatchRecord& a, const MatchRecord& b) {
      return a.detection.confidence > b.detection.confidence;
    });
    const double ap = average_precision(recs, truth_count[c], cfg.interpolation);
    result.per_category_ap[c] = ap;
    sum += ap;
  }
  result.map = sum / static_cast<double>(scored.size());
  return result;
}

}  // namespace

MapResult sph_map(std::span<const EvalFrame> frames, const EvalConfig& cfg) {
  cfg.validate();
  if (!cfg.sweep) return map_at(frames, cfg, cfg.iou_threshold);
  MapResult total;
  constexpr int kSteps = 10;
  for (int k = 0; k < kSteps; ++k) {
    const MapResult r = map_at(frames, cfg, 0.5 + 0.05 * k);
    total.map += r.map / kSteps;
    for (const auto& [c, ap] : r.per_category_ap) total.per_category_ap[c] += ap / kSteps;
  }
  return total;
}

MapResult sph_map(std::span<const std::vector<DetectedObject>> detections,
                  std::span<const std::vector<DetectedObject>> truths,
                  const EvalConfig& cfg) {
  if (detections.size() != truths.size()) {
    throw DomainError("sph_map: detections and truth cover different frame counts");
  }
  std::vector<EvalFrame> frames;
  frames.reserve(truths.size());
  for (std::size_t k = 0; k < truths.size(); ++k) frames.push_back({detections[k], truths[k]});
  return sph_map(frames, cfg);
}

double mean_e2e_latency(std::span<const double> latencies_s) {
  if (latencies_s.empty()) throw DomainError("mean_e2e_latency: no frames");
  return std::accumulate(latencies_s.begin(), latencies_s.end(), 0.0) /
         static_cast<double>(latencies_s.size());
}

}  // namespace omnisense
