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

#include "omnisense/matching.h"

#include <algorithm>
#include <numeric>

namespace omnisense {

std::vector<Match> greedy_match(std::span<const DetectedObject> dets,
                                std::span<const DetectedObject> truths,
                                double iou_threshold) {
  std::vector<std::size_t> order(dets.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return dets[a].confidence > dets[b].confidence;
  });

  std::vector<Match> out(dets.size());
  std::vector<bool> taken(truths.size(), false);
  for (std::size_t d : order) {
    double best_iou = -1.0;
    std::optional<std::size_t> best;
    for (std::size_t t = 0; t < truths.size(); ++t) {
      if (taken[t] || truths[t].category != dets[d].category) continue;
      const double iou = sph_iou(dets[d].box, truths[t].box);
      if (iou >= iou_threshold && iou > best_iou) {
        best_iou = iou;
        best = t;
      }
    }
    if (best) {
      taken[*best] = true;
      out[d] = {best, best_iou};
    }
  }
  return out;
}

}  // namespace omnisense
