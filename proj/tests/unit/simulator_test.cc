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


#include "omnisense/simulator.h"

#include <cmath>
#include <vector>

#include <gtest/gtest.h>
#include "omnisense/error.h"
#include "omnisense/random.h"

namespace omnisense {
namespace {

TraceFrame frame_with(std::int64_t index, std::vector<DetectedObject> objects) {
  for (auto& o : objects) o.frame_index = index;
  return {index, std::move(objects)};
}

DetectedObject object(double lon_deg, double lat_deg, double size_deg, int category = 0) {
  return {SphericalBox::from_degrees(lon_deg, lat_deg, size_deg, size_deg), category, 1.0, 0};
}

std::vector<TraceFrame> small_trace(int frames, std::uint64_t seed = 3) {
  TraceParams p;
  p.num_frames = frames;
  return generate_trace(p, seed).frames;
}

TEST(MethodTest, ParseAndLabel) {
  EXPECT_EQ(parse_method("omnisense"), Method{});
  EXPECT_EQ(parse_method("erp:4"), (Method{MethodKind::kErp, 4}));
  EXPECT_EQ(parse_method("cubemap:2"), (Method{MethodKind::kCubemap, 2}));
  EXPECT_EQ(parse_method("cubemap:2").label(), "cubemap:2");
  EXPECT_THROW(parse_method("erp"), ConfigError);
  EXPECT_THROW(parse_method("erp:x"), ConfigError);
  EXPECT_THROW(parse_method("tiles:3"), ConfigError);
}

TEST(SimConfigTest, Defaults) {
  SimConfig cfg;
  EXPECT_DOUBLE_EQ(cfg.bandwidth_bps, 17.9e6);
  EXPECT_EQ(cfg.network_window, 7);
  EXPECT_DOUBLE_EQ(cfg.nms_threshold, 0.6);
  EXPECT_EQ(cfg.detector.min_pixels, 16);
  EXPECT_EQ(cfg.resolved_discovery_model(), 5);
  cfg.discovery_model = 3;
  EXPECT_EQ(cfg.resolved_discovery_model(), 3);
  EXPECT_NO_THROW(cfg.validate());
  cfg.budget_s = 0;
  EXPECT_THROW(cfg.validate(), ConfigError);
}

TEST(SimulatePipelineTest, WorkedExample) {
  std::vector<TaskRecord> tasks;
  const double dp[] = {2, 1, 3, 1}, di[] = {3, 4, 2, 3};
  for (int k = 0; k < 4; ++k) tasks.push_back({k, 1, dp[k], di[k], 0.0});
  EXPECT_EQ(simulate_pipeline(tasks), 14.0);
  EXPECT_EQ(simulate_pipeline({}), 0.0);
}

TEST(SimulatePipelineTest, MatchesRecurrence) {
  Rng rng(12);
  for (int t = 0; t < 500; ++t) {
    const int n = static_cast<int>(rng.below(8));
    std::vector<TaskRecord> tasks;
    std::vector<double> dp, di;
    for (int k = 0; k < n; ++k) {
      dp.push_back(rng.uniform(0.0, 0.3));
      di.push_back(rng.uniform(0.0, 0.3));
      tasks.push_back({k, 1, dp.back(), di.back(), 0.0});
    }
    EXPECT_NEAR(simulate_pipeline(tasks), pipelined_latency(dp, di), 1e-12);
  }
}

TEST(RunnerTest, FirstFrameIsDiscovery) {
  SimConfig cfg;
  OmniSenseRunner runner(cfg);
  const auto trace = small_trace(3);
  const FrameResult r0 = runner.run_frame(trace[0]);
  EXPECT_TRUE(r0.discovery);
  ASSERT_EQ(r0.tasks.size(), 1u);
  EXPECT_EQ(r0.tasks[0].model, 5);
  EXPECT_EQ(r0.tasks[0].sroi, -1);
  const FrameResult r1 = runner.run_frame(trace[1]);
  EXPECT_FALSE(r1.discovery);
}

TEST(RunnerTest, EmptySceneCostsOnlyOverhead) {
  SimConfig cfg;
  cfg.frame_overhead_s = 0.01;
  cfg.predictor.discovery_window = 100;
  OmniSenseRunner runner(cfg);
  runner.run_frame(frame_with(0, {}));
  const FrameResult r = runner.run_frame(frame_with(1, {}));
  EXPECT_FALSE(r.discovery);
  EXPECT_TRUE(r.detections.empty());
  EXPECT_EQ(r.num_srois, 0);
  EXPECT_DOUBLE_EQ(r.e2e_latency_s, 0.01);
}

TEST(RunnerTest, ExecutedLatencyMatchesPlanEstimate) {
  SimConfig cfg;
  cfg.budget_s = 1.5;
  OmniSenseRunner runner(cfg);
  int checked = 0;
  for (const auto& f : small_trace(60)) {
    const FrameResult r = runner.run_frame(f);
    if (r.discovery) continue;
    EXPECT_NEAR(r.exec_latency_s, r.exec_plan.estimated_latency_s, 1e-9) << f.index;
    EXPECT_LE(r.exec_latency_s, cfg.budget_s + 1e-9);
    ++checked;
  }
  EXPECT_GT(checked, 30);
}

TEST(RunnerTest, SpecialSroiKeepsLargestDetection) {
  SimConfig cfg;
  cfg.budget_s = 10.0;
  cfg.models = default_model_set();
  for (auto& m : cfg.models.models) {
    if (!m.is_skip()) std::fill(m.gav.begin(), m.gav.end(), 1.0);
  }
  OmniSenseRunner runner(cfg);
  // One oversized object plus a small one inside its footprint.
  const std::vector<DetectedObject> scene{object(0, 0, 80), object(10, 5, 4)};
  runner.run_frame(frame_with(0, scene));
  const FrameResult r = runner.run_frame(frame_with(1, scene));
  ASSERT_FALSE(r.discovery);
  ASSERT_GE(r.num_srois, 1);
  EXPECT_TRUE(r.srois[0].special);
  bool found_large = false;
  for (const auto& d : r.detections) found_large = found_large || d.box.fov_h() > deg2rad(70);
  EXPECT_TRUE(found_large);
}

TEST(BaselineTest, ErpMissesTinyObjectThatSroiFinds) {
  SimConfig cfg;
  for (auto& m : cfg.models.models) {
    if (!m.is_skip()) std::fill(m.gav.begin(), m.gav.end(), 1.0);
  }
  // 2e-5 NOA: 8 pixels at 640 x 640 ERP.
  const double side = std::sqrt(2e-5 * kSphereArea);
  const DetectedObject tiny{SphericalBox(0.1, 0.05, side, side), 0, 1.0, 0};
  const TraceFrame f = frame_with(0, {tiny});
  EXPECT_TRUE(run_erp_baseline(f, 3, cfg).detections.empty());
  const SRoI s{SphericalBox(0.1, 0.05, deg2rad(60), deg2rad(60)), {}, 1.0, {}, false};
  const auto found = simulate_detection(
      cfg.models.at(3), DetectorView::perspective(sroi_grid(s, 640, cfg)), f.objects,
      cfg.detector, {1, 0, 0});
  EXPECT_EQ(found.size(), 1u);
}

TEST(BaselineTest, CubemapFaceCenteredObject) {
  SimConfig cfg;
  for (auto& m : cfg.models.models) {
    if (!m.is_skip()) std::fill(m.gav.begin(), m.gav.end(), 1.0);
  }
  const TraceFrame f = frame_with(0, {object(90, 0, 10)});
  const FrameResult r = run_cubemap_baseline(f, 2, cfg);
  EXPECT_EQ(r.detections.size(), 1u);
  EXPECT_EQ(r.tasks.size(), 6u);
  SimConfig serial = cfg;
  serial.cubemap_serial = true;
  EXPECT_GT(run_cubemap_baseline(f, 2, serial).e2e_latency_s, r.e2e_latency_s);
}

TEST(RealizedNetworkTest, DeterministicWithoutJitter) {
  SimConfig cfg;
  const ModelProfile& m = cfg.models.at(2);
  const double d = realized_network_delay(m, cfg, 5, 1);
  EXPECT_DOUBLE_EQ(d, transfer_delay_s(512, 1.5, 17.9e6, 0.0));
  EXPECT_EQ(realized_network_delay(cfg.models.at(1), cfg, 5, 1), 0.0);
  cfg.network_jitter = 0.3;
  EXPECT_NE(realized_network_delay(m, cfg, 5, 1), d);
  EXPECT_EQ(realized_network_delay(m, cfg, 5, 1), realized_network_delay(m, cfg, 5, 1));
}

TEST(RunExperimentTest, EmptyTraceAndDeterminism) {
  SimConfig cfg;
  const ExperimentResult empty = run_experiment({}, cfg, Method{});
  EXPECT_TRUE(empty.frames.empty());
  EXPECT_FALSE(empty.summary.mean_latency_s.has_value());
  EXPECT_FALSE(empty.summary.sph_map.has_value());

  const auto trace = small_trace(20);
  const ExperimentResult a = run_experiment(trace, cfg, Method{});
  const ExperimentResult b = run_experiment(trace, cfg, Method{});
  EXPECT_EQ(a.summary.mean_latency_s, b.summary.mean_latency_s);
  EXPECT_EQ(a.summary.sph_map, b.summary.sph_map);
  ASSERT_EQ(a.frames.size(), b.frames.size());
  for (std::size_t k = 0; k < a.frames.size(); ++k) {
    EXPECT_EQ(a.frames[k].detections, b.frames[k].detections);
  }
  EXPECT_GE(a.summary.discovery_frames, 1);
  EXPECT_THROW(run_experiment(trace, cfg, Method{MethodKind::kErp, 6}), ConfigError);
}

}  // namespace
}  // namespace omnisense
