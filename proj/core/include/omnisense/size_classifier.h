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

#ifndef OMNISENSE_SIZE_CLASSIFIER_H_
#define OMNISENSE_SIZE_CLASSIFIER_H_

#include <string_view>

namespace omnisense {

enum class SizeLevel { kSmall = 0, kMedium = 1, kLarge = 2 };

inline constexpr int kSizeLevels = 3;

std::string_view to_string(SizeLevel level);

// Size-level thresholds on normalized object area. The defaults are the
// 33.33 and 66.66 percentiles of the COCO NOA distribution.
struct SizeClassifier {
  double small_max = 0.0044;
  double medium_max = 0.0354;

  // Throws ConfigError unless 0 < small_max < medium_max < 1.
  void validate() const;
};

// small iff noa <= small_max, medium iff noa <= medium_max, else large.
// Throws DomainError for noa outside (0, 1].
SizeLevel size_level(double noa, const SizeClassifier& cls);

// Position of (level, category) in a gav/ccv vector laid out as
// [s_0..s_{n-1}, m_0..m_{n-1}, l_0..l_{n-1}].
constexpr int cell_index(SizeLevel level, int category, int n_categories) {
  return static_cast<int>(level) * n_categories + category;
}

}  // namespace omnisense

#endif  // OMNISENSE_SIZE_CLASSIFIER_H_
