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

#include <gtest/gtest.h>
#include "omnisense/matching.h"

namespace omnisense {
namespace {

DetectedObject det(double lon_deg, double size_deg, int category, double conf) {
  return {SphericalBox::from_degrees(lon_deg, 0, size_deg, size_deg), category, conf, 0};
}

TEST(SphericalNmsTest, DefaultThreshold) { EXPECT_DOUBLE_EQ(kDefaultNmsThreshold, 0.6); }

TEST(SphericalNmsTest, IdenticalSameCategory) {
  std::vector<DetectedObject> d{det(0, 20, 1, 0.8), det(0, 20, 1, 0.9)};
  const auto kept = spherical_nms(d);
  ASSERT_EQ(kept.size(), 1u);
  EXPECT_DOUBLE_EQ(kept[0].confidence, 0.9);
}

TEST(SphericalNmsTest, IdenticalDifferentCategory) {
  std::vector<DetectedObject> d{det(0, 20, 1, 0.9), det(0, 20, 2, 0.8)};
  EXPECT_EQ(spherical_nms(d).size(), 2u);
}

TEST(SphericalNmsTest, GreedyChain) {
  // IoU(a, b) ~ 0.7, IoU(a, c) = 0.2.
  const DetectedObject a = det(0, 60, 0, 0.9);
  const DetectedObject b = det(60.0 * 0.3 / 1.7, 60, 0, 0.8);
  const DetectedObject c = det(-40, 60, 0, 0.7);
  ASSERT_NEAR(sph_iou(a.box, b.box), 0.7, 0.01);
  ASSERT_NEAR(sph_iou(a.box, c.box), 0.2, 0.01);
  std::vector<DetectedObject> d{c, b, a};
  const auto kept = spherical_nms(d);
  ASSERT_EQ(kept.size(), 2u);
  EXPECT_EQ(kept[0], a);
  EXPECT_EQ(kept[1], c);
}

TEST(SphericalNmsTest, ThresholdIsExclusive) {
  const DetectedObject a = det(0, 60, 0, 0.9);
  const DetectedObject b = det(20, 60, 0, 0.8);
  const double iou = sph_iou(a.box, b.box);
  std::vector<DetectedObject> d{a, b};
  EXPECT_EQ(spherical_nms(d, iou).size(), 2u);
  EXPECT_EQ(spherical_nms(d, iou - 1e-9).size(), 1u);
}

TEST(SphericalNmsTest, Empty) { EXPECT_TRUE(spherical_nms({}).empty()); }

TEST(GreedyMatchTest, HighestConfidenceFirst) {
  std::vector<DetectedObject> truths{det(0, 20, 0, 1.0)};
  std::vector<DetectedObject> dets{det(2, 20, 0, 0.6), det(1, 20, 0, 0.9)};
  const auto m = greedy_match(dets, truths, 0.5);
  ASSERT_EQ(m.size(), 2u);
  EXPECT_FALSE(m[0].truth.has_value());
  ASSERT_TRUE(m[1].truth.has_value());
  EXPECT_EQ(*m[1].truth, 0u);
  EXPECT_GT(m[1].iou, 0.5);
}

TEST(GreedyMatchTest, CategoryAndThreshold) {
  std::vector<DetectedObject> truths{det(0, 20, 0, 1.0), det(90, 20, 1, 1.0)};
  std::vector<DetectedObject> dets{det(0, 20, 1, 0.9), det(95, 20, 1, 0.8)};
  const auto m = greedy_match(dets, truths, 0.5);
  EXPECT_FALSE(m[0].truth.has_value());
  ASSERT_TRUE(m[1].truth.has_value());
  EXPECT_EQ(*m[1].truth, 1u);
  const auto strict = greedy_match(dets, truths, 0.9);
  EXPECT_FALSE(strict[1].truth.has_value());
}

}  // namespace
}  // namespace omnisense
