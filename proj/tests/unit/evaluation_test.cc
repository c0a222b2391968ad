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


#include "omnisense/evaluation.h"

#include <vector>

#include <gtest/gtest.h>
#include "omnisense/error.h"

namespace omnisense {
namespace {

DetectedObject obj(double lon_deg, int category, double conf = 1.0) {
  return {SphericalBox::from_degrees(lon_deg, 0, 10, 10), category, conf, 0};
}

MapResult map_of(const std::vector<std::vector<DetectedObject>>& dets,
                 const std::vector<std::vector<DetectedObject>>& truths,
                 const EvalConfig& cfg = {}) {
  return sph_map(std::span(dets), std::span(truths), cfg);
}

TEST(InterpolationTest, Parse) {
  EXPECT_EQ(parse_ap_interpolation("all-points"), ApInterpolation::kAllPoints);
  EXPECT_EQ(parse_ap_interpolation("101-point"), ApInterpolation::k101Point);
  EXPECT_EQ(to_string(ApInterpolation::k101Point), "101-point");
  EXPECT_THROW(parse_ap_interpolation("11-point"), ConfigError);
}

TEST(SphMapTest, PerfectDetections) {
  const std::vector<std::vector<DetectedObject>> truths{{obj(0, 0), obj(40, 1)},
                                                        {obj(80, 0)}};
  EXPECT_DOUBLE_EQ(map_of(truths, truths).map, 1.0);
  EvalConfig sweep;
  sweep.sweep = true;
  EXPECT_DOUBLE_EQ(map_of(truths, truths, sweep).map, 1.0);
}

TEST(SphMapTest, NoDetections) {
  const std::vector<std::vector<DetectedObject>> truths{{obj(0, 0)}};
  const std::vector<std::vector<DetectedObject>> none{{}};
  EXPECT_DOUBLE_EQ(map_of(none, truths).map, 0.0);
}

TEST(SphMapTest, NoTruthIsAnError) {
  const std::vector<std::vector<DetectedObject>> dets{{obj(0, 0)}};
  const std::vector<std::vector<DetectedObject>> none{{}};
  EXPECT_THROW(map_of(dets, none), DomainError);
}

TEST(AveragePrecisionTest, HandComputedCurve) {
  // Two truths; a true positive at 0.9 and a false positive at 0.8.
  const std::vector<DetectedObject> truths{obj(0, 0), obj(60, 0)};
  const std::vector<DetectedObject> dets{obj(0, 0, 0.9), obj(120, 0, 0.8)};
  const auto records = match_frame(dets, truths, 0.5);
  ASSERT_EQ(records.size(), 2u);
  EXPECT_TRUE(records[0].true_positive);
  EXPECT_FALSE(records[1].true_positive);
  EXPECT_DOUBLE_EQ(average_precision(records, 2, ApInterpolation::kAllPoints), 0.5);
  // 101-point: recall levels 0.00 .. 0.50 have precision 1.
  EXPECT_NEAR(average_precision(records, 2, ApInterpolation::k101Point), 51.0 / 101, 1e-12);

  const std::vector<std::vector<DetectedObject>> d{dets}, t{truths};
  EvalConfig cfg;
  cfg.interpolation = ApInterpolation::kAllPoints;
  EXPECT_DOUBLE_EQ(map_of(d, t, cfg).map, 0.5);
}

TEST(AveragePrecisionTest, PrecisionEnvelope) {
  // TP, FP, TP over 2 truths: all-points AP = 0.5 * 1 + 0.5 * 2/3.
  const std::vector<DetectedObject> truths{obj(0, 0), obj(60, 0)};
  const std::vector<DetectedObject> dets{obj(0, 0, 0.9), obj(120, 0, 0.8), obj(60, 0, 0.7)};
  const auto records = match_frame(dets, truths, 0.5);
  EXPECT_NEAR(average_precision(records, 2, ApInterpolation::kAllPoints), 0.5 + 1.0 / 3, 1e-12);
}

TEST(SphMapTest, CategoryFilter) {
  const std::vector<std::vector<DetectedObject>> truths{{obj(0, 0), obj(40, 1)}};
  const std::vector<std::vector<DetectedObject>> dets{{obj(0, 0)}};
  EXPECT_DOUBLE_EQ(map_of(dets, truths).map, 0.5);
  EvalConfig only0;
  only0.categories = {0};
  const MapResult r = map_of(dets, truths, only0);
  EXPECT_DOUBLE_EQ(r.map, 1.0);
  EXPECT_EQ(r.per_category_ap.size(), 1u);
}

TEST(SphMapTest, DuplicateDetectionIsFalsePositive) {
  const std::vector<std::vector<DetectedObject>> truths{{obj(0, 0)}};
  const std::vector<std::vector<DetectedObject>> dets{{obj(0, 0, 0.9), obj(0, 0, 0.8)}};
  EvalConfig cfg;
  cfg.interpolation = ApInterpolation::kAllPoints;
  EXPECT_DOUBLE_EQ(map_of(dets, truths, cfg).map, 1.0);
}

TEST(MeanLatencyTest, Values) {
  EXPECT_DOUBLE_EQ(mean_e2e_latency(std::vector<double>{1.0}), 1.0);
  EXPECT_DOUBLE_EQ(mean_e2e_latency(std::vector<double>{1.0, 3.0}), 2.0);
  EXPECT_THROW(mean_e2e_latency(std::vector<double>{}), DomainError);
}

}  // namespace
}  // namespace omnisense
