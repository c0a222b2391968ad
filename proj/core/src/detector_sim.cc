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

#include "omnisense/detector_sim.h"

#include <algorithm>
#include <cmath>

#include "omnisense/error.h"
#include "omnisense/random.h"

namespace omnisense {
namespace {

// Stream tags for keyed draws.
constexpr std::uint64_t kDetectStream = 1;
constexpr std::uint64_t kConfidenceStream = 2;
constexpr std::uint64_t kJitterStream = 3;
constexpr std::uint64_t kFalsePositiveStream = 4;

double keyed_normal(const DetectionKey& key, std::uint64_t object, std::uint64_t salt) {
  const auto frame = static_cast<std::uint64_t>(key.frame);
  double u1 = keyed_uniform({key.seed, frame, object, kJitterStream, salt, 0});
  const double u2 = keyed_uniform({key.seed, frame, object, kJitterStream, salt, 1});
  u1 = std::max(u1, 0x1.0p-53);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
}

SphericalBox jittered(const SphericalBox& box, double sd, const DetectionKey& key,
                      std::uint64_t object) {
  if (sd <= 0.0) return box;
  const SphericalCoord local{sd * keyed_normal(key, object, 0), sd * keyed_normal(key, object, 1)};
  const SphericalCoord c = box.frame().to_world(SphericalCoord{
      std::clamp(local.lon, -kPi, kPi - 1e-12), std::clamp(local.lat, -kHalfPi, kHalfPi)});
  return SphericalBox(c.lon, c.lat, box.fov_h(), box.fov_v());
}

}  // namespace

DetectorView DetectorView::perspective(const PerspectiveGrid& grid) {
  DetectorView v;
  v.grid_ = grid;
  v.side_ = grid.side();
  return v;
}

DetectorView DetectorView::equirect(int side) {
  if (side < 2) throw DomainError("equirect view needs side >= 2");
  DetectorView v;
  v.side_ = side;
  return v;
}

bool DetectorView::contains(SphericalCoord c) const {
  return grid_ ? grid_->contains(c) : true;
}

double DetectorView::solid_angle() const {
  return grid_ ? grid_->solid_angle() : kSphereArea;
}

double DetectorView::pixel_count() const {
  const double s = side_;
  return s * s;
}

void DetectorParams::validate() const {
  if (min_pixels < 0) throw ConfigError("min_pixels must be >= 0");
  classifier.validate();
  if (!(false_positive_rate >= 0.0)) throw ConfigError("false_positive_rate must be >= 0");
  if (!(center_jitter >= 0.0)) throw ConfigError("center_jitter must be >= 0");
}

SizeLevel apparent_size_level(const DetectorView& view, double solid_angle_sr,
                              const SizeClassifier& cls) {
  const double side = view.side();
  const double noa = view.footprint(solid_angle_sr) / (side * side);
  return size_level(std::clamp(noa, 1e-300, 1.0), cls);
}

std::vector<DetectedObject> simulate_detection(const ModelProfile& model,
                                               const DetectorView& view,
                                               std::span<const DetectedObject> truth,
                                               const DetectorParams& params,
                                               const DetectionKey& key) {
  std::vector<DetectedObject> out;
  if (model.is_skip()) return out;
  const auto frame = static_cast<std::uint64_t>(key.frame);
  for (std::size_t k = 0; k < truth.size(); ++k) {
    const DetectedObject& obj = truth[k];
    if (!view.contains(obj.box.center())) continue;
    const double area = sph_area(obj.box);
    if (view.footprint(area) < params.min_pixels) continue;
    const SizeLevel level = apparent_size_level(view, area, params.classifier);
    const double p = model.accuracy(level, obj.category);
    if (!(keyed_uniform({key.seed, frame, k, kDetectStream}) < p)) continue;
    const double conf = 1.0 - 0.5 * keyed_uniform({key.seed, frame, k, kConfidenceStream});
    out.push_back({jittered(obj.box, params.center_jitter, key, k), obj.category, conf,
                   key.frame});
  }

  if (params.false_positive_rate > 0.0) {
    Rng rng(mix64(key.seed ^ mix64(frame ^ mix64(key.pass ^ kFalsePositiveStream))));
    const int n = rng.poisson(params.false_positive_rate);
    for (int k = 0; k < n; ++k) {
      SphericalCoord c;
      if (view.grid()) {
        c = view.grid()->to_sphere({rng.uniform() * view.side(), rng.uniform() * view.side()});
      } else {
        c = {rng.uniform(-kPi, kPi), std::asin(rng.uniform(-1.0, 1.0))};
      }
      const double fov = deg2rad(rng.uniform(2.0, 12.0));
      const int category = static_cast<int>(rng.below(static_cast<std::uint64_t>(
          std::max(1, model.categories()))));
      out.push_back({SphericalBox(wrap_lon(c.lon), c.lat, fov, fov), category,
                     0.5 + 0.25 * rng.uniform(), key.frame});
    }
  }
  return out;
}

}  // namespace omnisense
