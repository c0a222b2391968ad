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

#ifndef OMNISENSE_NMS_H_
#define OMNISENSE_NMS_H_

#include <span>
#include <vector>

#include "omnisense/sphere.h"

namespace omnisense {

inline constexpr double kDefaultNmsThreshold = 0.6;

// Greedy per-category spherical NMS. Detections are visited in descending
// confidence (input order breaks ties); a detection survives iff its SphIoU
// with every surviving detection of its category is <= iou_threshold. The
// result is sorted by descending confidence.
std::vector<DetectedObject> spherical_nms(std::span<const DetectedObject> dets,
                                          double iou_threshold = kDefaultNmsThreshold);

}  // namespace omnisense

#endif  // OMNISENSE_NMS_H_
