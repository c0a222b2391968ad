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


// Seeded generators shared by the unit tests and the acceptance binary.

#ifndef OMNISENSE_TESTS_SUPPORT_FIXTURES_H_
#define OMNISENSE_TESTS_SUPPORT_FIXTURES_H_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "omnisense/allocator.h"
#include "omnisense/random.h"
#include "omnisense/sphere.h"

namespace omnisense::testing {

// Random allocation instance: r SRoIs, m models plus skip, A in [0, 1],
// delays in [0.01, 0.5] s split into preprocessing and inference.
inline AllocInstance random_instance(int r, int m, double budget_s, std::uint64_t seed) {
  Rng rng(seed);
  AllocInstance inst;
  inst.budget_s = budget_s;
  inst.model_names.push_back("skip");
  for (int i = 1; i <= m; ++i) inst.model_names.push_back("m" + std::to_string(i));
  inst.accuracy = Table(m + 1, r);
  inst.preprocess_s = Table(m + 1, r);
  inst.inference_s = Table(m + 1, r);
  for (int i = 1; i <= m; ++i) {
    for (int j = 0; j < r; ++j) {
      inst.accuracy(i, j) = rng.uniform();
      const double d = rng.uniform(0.01, 0.5);
      const double share = rng.uniform(0.1, 0.9);
      inst.preprocess_s(i, j) = d * share;
      inst.inference_s(i, j) = d * (1.0 - share);
    }
  }
  return inst;
}

// Random detection history over `frames` frames. Objects cluster around a
// few centers, some straddle the +-180 degree seam and a few are too large
// for a 60 degree SRoI.
inline std::vector<DetectedObject> random_history(std::uint64_t seed, int frames = 2,
                                                  int n_categories = 80) {
  Rng rng(seed);
  const int clusters = 1 + static_cast<int>(rng.below(4));
  std::vector<SphericalCoord> centers;
  for (int c = 0; c < clusters; ++c) {
    // Every other history puts a cluster on the seam.
    const double lon = (c == 0 && seed % 2 == 0) ? kPi - 0.02 : rng.uniform(-kPi, kPi);
    centers.push_back({lon, rng.uniform(-1.2, 1.2)});
  }
  std::vector<DetectedObject> out;
  for (int f = 0; f < frames; ++f) {
    const int n = static_cast<int>(rng.below(12));
    for (int k = 0; k < n; ++k) {
      const SphericalCoord c = centers[rng.below(centers.size())];
      double fov_h = std::exp(rng.uniform(std::log(0.005), std::log(0.5)));
      double fov_v = std::exp(rng.uniform(std::log(0.005), std::log(0.5)));
      if (rng.uniform() < 0.08) {
        fov_h = rng.uniform(1.1, 2.5);
        fov_v = rng.uniform(0.3, 1.4);
      }
      const double lat = std::clamp(c.lat + 0.3 * rng.normal(), -1.5, 1.5);
      DetectedObject o{SphericalBox(c.lon + 0.3 * rng.normal(), lat, fov_h, fov_v),
                       static_cast<int>(rng.below(static_cast<std::uint64_t>(n_categories))),
                       0.5 + 0.5 * rng.uniform(), f};
      out.push_back(o);
    }
  }
  return out;
}

}  // namespace omnisense::testing

#endif  // OMNISENSE_TESTS_SUPPORT_FIXTURES_H_
