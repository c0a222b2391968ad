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

#ifndef OMNISENSE_DETECTOR_SIM_H_
#define OMNISENSE_DETECTOR_SIM_H_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "omnisense/model_profile.h"
#include "omnisense/projection.h"
#include "omnisense/size_classifier.h"
#include "omnisense/sphere.h"

namespace omnisense {

// The image a model sees: a perspective grid, or a whole ERP frame resized
// to the model's side x side input.
class DetectorView {
 public:
  static DetectorView perspective(const PerspectiveGrid& grid);
  static DetectorView equirect(int side);

  bool is_equirect() const { return !grid_.has_value(); }
  int side() const { return side_; }
  const std::optional<PerspectiveGrid>& grid() const { return grid_; }

  bool contains(SphericalCoord c) const;
  double solid_angle() const;
  double pixel_count() const;
  // Pixels covered by a region of `solid_angle_sr` steradians.
  double footprint(double solid_angle_sr) const {
    return solid_angle_sr / solid_angle() * pixel_count();
  }

 private:
  std::optional<PerspectiveGrid> grid_;
  int side_ = 0;
};

struct DetectorParams {
  int min_pixels = 16;
  SizeClassifier classifier;
  // Expected false positives per pass (Poisson).
  double false_positive_rate = 0.0;
  // Standard deviation of the reported center offset, radians.
  double center_jitter = 0.0;

  void validate() const;
};

// Randomness for one pass. Object draws depend only on (seed, frame, object
// index) so passes over the same object share them; `pass` only feeds the
// false-positive stream.
struct DetectionKey {
  std::uint64_t seed = 0;
  std::int64_t frame = 0;
  std::uint64_t pass = 0;
};

// Size level the detector assigns to an object of `solid_angle_sr` seen in
// `view`: normalized by the view's side squared.
SizeLevel apparent_size_level(const DetectorView& view, double solid_angle_sr,
                              const SizeClassifier& cls);

// Stub detector. Every truth object whose center lies in the view and whose
// footprint reaches min_pixels is reported with probability
// gav[apparent level, category]. `truth` must be the whole frame so object
// indices are stable across passes.
std::vector<DetectedObject> simulate_detection(const ModelProfile& model,
                                               const DetectorView& view,
                                               std::span<const DetectedObject> truth,
                                               const DetectorParams& params,
                                               const DetectionKey& key);

}  // namespace omnisense

#endif  // OMNISENSE_DETECTOR_SIM_H_
