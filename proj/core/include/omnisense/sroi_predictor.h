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

#ifndef OMNISENSE_SROI_PREDICTOR_H_
#define OMNISENSE_SROI_PREDICTOR_H_

#include <cstdint>
#include <deque>
#include <span>
#include <vector>

#include "omnisense/size_classifier.h"
#include "omnisense/sphere.h"

namespace omnisense {

struct PredictorConfig {
  double fov = deg2rad(60.0);  // SRoI field of view f
  double gamma = 1.1;          // special-SRoI scale
  int history_frames = 2;      // delta
  int discovery_min_srois = 1;
  int discovery_window = 3;

  // Throws ConfigError unless f in (0, pi), gamma >= 1, delta >= 1 and the
  // discovery parameters are >= 1 (window) / >= 0 (min count).
  void validate() const;
};

// Spherical region of interest predicted for the next frame.
struct SRoI {
  SphericalBox box;
  // Content characteristics vector: occurrence probability per
  // (size level, category) cell, laid out like a gav.
  std::vector<double> ccv;
  // Share of historical objects absorbed by this SRoI.
  double weight = 0.0;
  std::vector<DetectedObject> members;
  // Spawned by an object that does not fit in f x f. Only the largest
  // detection inside a special SRoI is kept.
  bool special = false;
};

// Frequency of each (size level, category) cell among `members`. Throws
// DomainError on an empty set.
std::vector<double> compute_ccv(std::span<const DetectedObject> members,
                                const SizeClassifier& cls, int n_categories);

// Greedy first-fit SRoI construction over the detections of the last delta
// frames. Objects are visited by (frame_index, confidence desc, category,
// lon); each joins the first SRoI whose merged extent stays strictly below f
// in both directions, or opens a new one. Objects wider or taller than f
// become special SRoIs of gamma times their own extent. Special SRoIs come
// first in the result, each group in creation order.
std::vector<SRoI> predict_srois(std::span<const DetectedObject> history,
                                const PredictorConfig& cfg, const SizeClassifier& cls,
                                int n_categories);

// True iff the last `discovery_window` counts are all below
// `discovery_min_srois`.
bool discovery_due(std::span<const int> recent_sroi_counts, const PredictorConfig& cfg);

// Rolling per-frame detection history holding at most `depth` frames.
class DetectionHistory {
 public:
  struct Frame {
    std::int64_t index = 0;
    std::vector<DetectedObject> objects;
  };

  explicit DetectionHistory(int depth);

  void push_frame(std::int64_t frame_index, std::vector<DetectedObject> objects);
  // Appends to the newest frame record (creating one if the history is
  // empty).
  void absorb_discovery(std::span<const DetectedObject> detections);

  std::vector<DetectedObject> objects() const;
  const std::deque<Frame>& frames() const { return frames_; }
  int depth() const { return depth_; }
  bool empty() const { return frames_.empty(); }

 private:
  int depth_;
  std::deque<Frame> frames_;
};

DetectionHistory absorb_discovery(DetectionHistory history,
                                  std::span<const DetectedObject> erp_detections);

}  // namespace omnisense

#endif  // OMNISENSE_SROI_PREDICTOR_H_
