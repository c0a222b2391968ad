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

#ifndef OMNISENSE_EVALUATION_H_
#define OMNISENSE_EVALUATION_H_

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "omnisense/sphere.h"

namespace omnisense {

enum class ApInterpolation { kAllPoints, k101Point };

std::string_view to_string(ApInterpolation a);
ApInterpolation parse_ap_interpolation(std::string_view s);

struct EvalConfig {
  double iou_threshold = 0.5;
  ApInterpolation interpolation = ApInterpolation::k101Point;
  // Average over IoU thresholds 0.50:0.05:0.95 instead of iou_threshold.
  bool sweep = false;
  // Categories to score; empty means every category present in the truth.
  std::vector<int> categories;

  void validate() const;
};

struct MatchRecord {
  DetectedObject detection;
  std::optional<std::size_t> truth;  // index within its frame's truth list
  double iou = 0.0;
  bool true_positive = false;
};

// Frame-aligned detections and truth.
struct EvalFrame {
  std::span<const DetectedObject> detections;
  std::span<const DetectedObject> truths;
};

// Matches one frame's detections to its truth, highest confidence first.
std::vector<MatchRecord> match_frame(std::span<const DetectedObject> detections,
                                     std::span<const DetectedObject> truths,
                                     double iou_threshold);

// AP from records sorted by descending confidence and the number of truths.
double average_precision(std::span<const MatchRecord> ranked, std::size_t num_truths,
                         ApInterpolation interpolation);

struct MapResult {
  double map = 0.0;
  std::map<int, double> per_category_ap;
};

// Sph-mAP over aligned frames. Throws DomainError when no scored category has
// any ground truth.
MapResult sph_map(std::span<const EvalFrame> frames, const EvalConfig& cfg);
MapResult sph_map(std::span<const std::vector<DetectedObject>> detections,
                  std::span<const std::vector<DetectedObject>> truths,
                  const EvalConfig& cfg);

// Throws DomainError on empty input.
double mean_e2e_latency(std::span<const double> latencies_s);

}  // namespace omnisense

#endif  // OMNISENSE_EVALUATION_H_
