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

#include <cmath>
#include <vector>

#include <gtest/gtest.h>

namespace omnisense {
namespace {

ModelProfile flat_model(double a, int side = 640) {
  ModelProfile m;
  m.index = 3;
  m.name = "flat";
  m.input_side = side;
  m.placement = Placement::kRemote;
  m.gav.assign(3, a);
  return m;
}

DetectedObject truth_at(double lon_deg, double lat_deg, double noa, int category = 0) {
  const SphericalBox b = SphericalBox::from_degrees(lon_deg, lat_deg, 1, 1);
  // Square box of the requested normalized area.
  const double side = std::sqrt(noa * kSphereArea);
  return {SphericalBox(b.lon(), b.lat(), side, side), category, 1.0, 0};
}

TEST(DetectorViewTest, Footprints) {
  const DetectorView erp = DetectorView::equirect(640);
  EXPECT_TRUE(erp.is_equirect());
  EXPECT_DOUBLE_EQ(erp.solid_angle(), kSphereArea);
  EXPECT_DOUBLE_EQ(erp.pixel_count(), 640.0 * 640.0);
  // NOA 1e-5 .. 1e-4 on a 640 x 640 input: 4 to 41 pixels.
  EXPECT_NEAR(erp.footprint(1e-5 * kSphereArea), 4.096, 1e-9);
  EXPECT_NEAR(erp.footprint(1e-4 * kSphereArea), 40.96, 1e-9);

  PerspectiveGrid g({0, 0}, deg2rad(60), 640);
  const DetectorView pv = DetectorView::perspective(g);
  EXPECT_FALSE(pv.is_equirect());
  EXPECT_DOUBLE_EQ(pv.solid_angle(), g.solid_angle());
  EXPECT_TRUE(pv.contains({0.1, 0.1}));
  EXPECT_FALSE(pv.contains({kPi / 2, 0}));
}

TEST(ApparentSizeTest, MagnificationRaisesLevel) {
  SizeClassifier cls;
  const double sa = 1e-3 * kSphereArea;
  EXPECT_EQ(apparent_size_level(DetectorView::equirect(640), sa, cls), SizeLevel::kSmall);
  PerspectiveGrid g({0, 0}, deg2rad(60), 640);
  EXPECT_EQ(apparent_size_level(DetectorView::perspective(g), sa, cls), SizeLevel::kMedium);
}

TEST(SimulateDetectionTest, CertainAndImpossible) {
  const std::vector<DetectedObject> truth{truth_at(0, 0, 1e-3), truth_at(40, 10, 2e-3)};
  DetectorParams params;
  const auto all = simulate_detection(flat_model(1.0), DetectorView::equirect(640), truth,
                                      params, DetectionKey{1, 0, 0});
  ASSERT_EQ(all.size(), 2u);
  for (const auto& d : all) {
    EXPECT_GT(d.confidence, 0.5);
    EXPECT_LE(d.confidence, 1.0);
  }
  EXPECT_EQ(all[0].box, truth[0].box);
  EXPECT_TRUE(simulate_detection(flat_model(0.0), DetectorView::equirect(640), truth, params,
                                 DetectionKey{1, 0, 0})
                  .empty());
}

TEST(SimulateDetectionTest, BinomialRate) {
  std::vector<DetectedObject> truth;
  for (int k = 0; k < 100; ++k) truth.push_back(truth_at(-170 + 3.4 * k, 0, 1e-3));
  DetectorParams params;
  int hits = 0;
  for (int f = 0; f < 100; ++f) {
    hits += static_cast<int>(simulate_detection(flat_model(0.3), DetectorView::equirect(640),
                                                truth, params, DetectionKey{7, f, 0})
                                 .size());
  }
  const double rate = hits / 1e4;
  EXPECT_NEAR(rate, 0.3, 3 * std::sqrt(0.3 * 0.7 / 1e4));
}

TEST(SimulateDetectionTest, TinyObjectMissedInErpFoundInSroi) {
  // 8 pixels in a 640 ERP input; about 100 in a 60 degree view.
  const std::vector<DetectedObject> truth{truth_at(5, 3, 2e-5)};
  DetectorParams params;
  const ModelProfile m = flat_model(1.0);
  EXPECT_TRUE(
      simulate_detection(m, DetectorView::equirect(640), truth, params, {1, 0, 0}).empty());
  PerspectiveGrid g({0, 0}, deg2rad(60), 640);
  EXPECT_EQ(
      simulate_detection(m, DetectorView::perspective(g), truth, params, {1, 0, 0}).size(),
      1u);
}

TEST(SimulateDetectionTest, OutsideViewIgnored) {
  const std::vector<DetectedObject> truth{truth_at(120, 0, 1e-3)};
  PerspectiveGrid g({0, 0}, deg2rad(60), 640);
  EXPECT_TRUE(simulate_detection(flat_model(1.0), DetectorView::perspective(g), truth,
                                 DetectorParams{}, {1, 0, 0})
                  .empty());
}

TEST(SimulateDetectionTest, SharedDrawsAcrossPasses) {
  std::vector<DetectedObject> truth;
  for (int k = 0; k < 40; ++k) truth.push_back(truth_at(-20 + k, 0, 1e-3));
  PerspectiveGrid g({0, 0}, deg2rad(90), 640);
  const auto a = simulate_detection(flat_model(0.5), DetectorView::perspective(g), truth,
                                    DetectorParams{}, {3, 9, 0});
  const auto b = simulate_detection(flat_model(0.5), DetectorView::perspective(g), truth,
                                    DetectorParams{}, {3, 9, 5});
  EXPECT_EQ(a, b);
}

TEST(SimulateDetectionTest, FalsePositives) {
  DetectorParams params;
  params.false_positive_rate = 3.0;
  const std::vector<DetectedObject> none;
  int total = 0;
  for (int f = 0; f < 200; ++f) {
    const auto d = simulate_detection(flat_model(0.5), DetectorView::equirect(640), none,
                                      params, {4, f, 0});
    total += static_cast<int>(d.size());
    for (const auto& o : d) EXPECT_NO_THROW(validate(o, 1));
  }
  EXPECT_NEAR(total / 200.0, 3.0, 0.5);
}

}  // namespace
}  // namespace omnisense
