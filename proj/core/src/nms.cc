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

#include "omnisense/nms.h"

#include <algorithm>
#include <numeric>

namespace omnisense {

std::vector<DetectedObject> spherical_nms(std::span<const DetectedObject> dets,
                                          double iou_threshold) {
  std::vector<std::size_t> order(dets.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return dets[a].confidence > dets[b].confidence;
  });

  std::vector<std::size_t> kept;
  for (std::size_t idx : order) {
    const DetectedObject& cand = dets[idx];
    const bool suppressed = std::any_of(kept.begin(), kept.end(), [&](std::size_t k) {
      return dets[k].category == cand.category &&
             sph_iou(dets[k].box, cand.box) > iou_threshold;
    });
    if (!suppressed) kept.push_back(idx);
  }

  std::vector<DetectedObject> out;
  out.reserve(kept.size());
  for (std::size_t k : kept) out.push_back(dets[k]);
  return out;
}

}  // namespace omnisense
