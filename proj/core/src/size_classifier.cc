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

#include "omnisense/size_classifier.h"

#include <sstream>

#include "omnisense/error.h"

namespace omnisense {

std::string_view to_string(SizeLevel level) {
  switch (level) {
    case SizeLevel::kSmall:
      return "small";
    case SizeLevel::kMedium:
      return "medium";
    case SizeLevel::kLarge:
      return "large";
  }
  return "unknown";
}

void SizeClassifier::validate() const {
  if (!(small_max > 0.0 && small_max < medium_max && medium_max < 1.0)) {
    std::ostringstream os;
    os << "size thresholds must satisfy 0 < small_max < medium_max < 1 (got "
       << small_max << ", " << medium_max << ")";
    throw ConfigError(os.str());
  }
}

SizeLevel size_level(double noa, const SizeClassifier& cls) {
  if (!(noa > 0.0 && noa <= 1.0)) {
    std::ostringstream os;
    os << "size_level: NOA " << noa << " outside (0, 1]";
    throw DomainError(os.str());
  }
  if (noa <= cls.small_max) return SizeLevel::kSmall;
  if (noa <= cls.medium_max) return SizeLevel::kMedium;
  return SizeLevel::kLarge;
}

}  // namespace omnisense
