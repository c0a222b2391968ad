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

#include "omnisense/sroi_predictor.h"

#include <algorithm>
#include <cmath>

#include "omnisense/error.h"

namespace omnisense {
namespace {

constexpr double kFitSlack = 1e-12;

struct Building {
  std::vector<DetectedObject> members;
  std::vector<SphericalBox> boxes;
  MergedFov fov;
};

}  // namespace

void PredictorConfig::validate() const {
  if (!(fov > 0.0 && fov < kPi)) throw ConfigError("predictor.fov must be in (0, 180) degrees");
  if (!(gamma >= 1.0) || !std::isfinite(gamma)) throw ConfigError("predictor.gamma must be >= 1");
  if (history_frames < 1) throw ConfigError("predictor.history_frames must be >= 1");
  if (discovery_min_srois < 0) throw ConfigError("predictor.discovery_min_srois must be >= 0");
  if (discovery_window < 1) throw ConfigError("predictor.discovery_window must be >= 1");
}

std::vector<double> compute_ccv(std::span<const DetectedObject> members,
                                const SizeClassifier& cls, int n_categories) {
  if (members.empty()) throw DomainError("compute_ccv: empty member set");
  std::vector<double> ccv(static_cast<std::size_t>(kSizeLevels) * n_categories, 0.0);
  for (const auto& o : members) {
    if (o.category < 0 || o.category >= n_categories) {
      throw DomainError("compute_ccv: category out of range");
    }
    const SizeLevel level = size_level(normalized_area(o.box), cls);
    ccv[cell_index(level, o.category, n_categories)] += 1.0;
  }
  const double n = static_cast<double>(members.size());
  for (double& p : ccv) p /= n;
  return ccv;
}

std::vector<SRoI> predict_srois(std::span<const DetectedObject> history,
                                const PredictorConfig& cfg, const SizeClassifier& cls,
                                int n_categories) {
  std::vector<DetectedObject> objects(history.begin(), history.end());
  std::stable_sort(objects.begin(), objects.end(),
                   [](const DetectedObject& a, const DetectedObject& b) {
                     if (a.frame_index != b.frame_index) return a.frame_index < b.frame_index;
                     if (a.confidence != b.confidence) return a.confidence > b.confidence;
                     if (a.category != b.category) return a.category < b.category;
                     return a.box.lon() < b.box.lon();
                   });

  const double f = cfg.fov;
  const double total = static_cast<double>(objects.size());
  // Two points of one f x f box are at most twice its circumradius apart.
  const double reach = 2.0 * std::acos(std::cos(0.5 * f) * std::cos(0.5 * f)) + 1e-9;

  std::vector<Building> regular;
  std::vector<SRoI> special;
  for (const auto& o : objects) {
    const bool coverable = o.box.fov_h() <= f + kFitSlack && o.box.fov_v() <= f + kFitSlack;
    if (!coverable) {
      SRoI s{SphericalBox(o.box.lon(), o.box.lat(), std::min(cfg.gamma * o.box.fov_h(), kTwoPi),
                          std::min(cfg.gamma * o.box.fov_v(), kPi)),
             compute_ccv(std::span(&o, 1), cls, n_categories), 1.0 / total, {o}, true};
      special.push_back(std::move(s));
      continue;
    }
    bool merged = false;
    for (auto& s : regular) {
      if (angular_distance(s.members.front().box.center(), o.box.center()) > reach) continue;
      s.boxes.push_back(o.box);
      const MergedFov fov = merged_fov(s.boxes);
      if (fov.fov_h < f && fov.fov_v < f) {
        s.members.push_back(o);
        s.fov = fov;
        merged = true;
        break;
      }
      s.boxes.pop_back();
    }
    if (!merged) {
      Building b;
      b.members.push_back(o);
      b.boxes.push_back(o.box);
      b.fov = merged_fov(b.boxes);
      regular.push_back(std::move(b));
    }
  }

  std::vector<SRoI> out = std::move(special);
  out.reserve(out.size() + regular.size());
  for (auto& b : regular) {
    SRoI s{SphericalBox(b.fov.center.lon, b.fov.center.lat, f, f),
           compute_ccv(b.members, cls, n_categories),
           static_cast<double>(b.members.size()) / total, std::move(b.members), false};
    out.push_back(std::move(s));
  }
  return out;
}

bool discovery_due(std::span<const int> recent_sroi_counts, const PredictorConfig& cfg) {
  const auto window = static_cast<std::size_t>(cfg.discovery_window);
  if (recent_sroi_counts.size() < window) return false;
  const auto tail = recent_sroi_counts.subspan(recent_sroi_counts.size() - window);
  return std::all_of(tail.begin(), tail.end(),
                     [&](int c) { return c < cfg.discovery_min_srois; });
}

DetectionHistory::DetectionHistory(int depth) : depth_(depth) {
  if (depth < 1) throw ConfigError("history depth must be >= 1");
}

void DetectionHistory::push_frame(std::int64_t frame_index,
                                  std::vector<DetectedObject> objects) {
  frames_.push_back({frame_index, std::move(objects)});
  while (static_cast<int>(frames_.size()) > depth_) frames_.pop_front();
}

void DetectionHistory::absorb_discovery(std::span<const DetectedObject> detections) {
  if (detections.empty()) return;
  if (frames_.empty()) push_frame(detections.front().frame_index, {});
  auto& newest = frames_.back().objects;
  newest.insert(newest.end(), detections.begin(), detections.end());
}

std::vector<DetectedObject> DetectionHistory::objects() const {
  std::vector<DetectedObject> out;
  for (const auto& f : frames_) out.insert(out.end(), f.objects.begin(), f.objects.end());
  return out;
}

DetectionHistory absorb_discovery(DetectionHistory history,
                                  std::span<const DetectedObject> erp_detections) {
  history.absorb_discovery(erp_detections);
  return history;
}

}  // namespace omnisense
