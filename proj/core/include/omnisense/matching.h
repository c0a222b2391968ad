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

#ifndef OMNISENSE_MATCHING_H_
#define OMNISENSE_MATCHING_H_

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "omnisense/sphere.h"

namespace omnisense {

struct Match {
  std::optional<std::size_t> truth;
  double iou = 0.0;
};

// Greedy detection-to-truth assignment within one image. Detections are
// visited by descending confidence (input order breaks ties); each takes the
// unmatched same-category truth with the highest SphIoU, provided it reaches
// iou_threshold. The result is indexed like `dets`.
std::vector<Match> greedy_match(std::span<const DetectedObject> dets,
                                std::span<const DetectedObject> truths,
                                double iou_threshold);

}  // namespace omnisense

#endif  // OMNISENSE_MATCHING_H_
