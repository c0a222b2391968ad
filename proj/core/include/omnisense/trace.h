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

#ifndef OMNISENSE_TRACE_H_
#define OMNISENSE_TRACE_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string_view>
#include <vector>

#include "omnisense/model_profile.h"
#include "omnisense/sphere.h"

namespace omnisense {

struct TraceFrame {
  std::int64_t index = 0;
  std::vector<DetectedObject> objects;
};

// Ground truth for a synthetic video. Objects carry confidence 1.
struct SceneTrace {
  int width = 3840;
  int height = 1920;
  std::uint64_t seed = 0;
  std::vector<TraceFrame> frames;
};

// Latitude band (radians) objects spawn in, chosen with probability
// proportional to weight.
struct LatBand {
  double lat_min = 0.0;
  double lat_max = 0.0;
  double weight = 1.0;
};

// Birth-death object process. Angles are radians; rates are per frame.
struct TraceParams {
  int num_frames = 300;
  int n_categories = kDefaultCategories;
  // Categories objects are drawn from, with relative weights.
  std::vector<int> categories{0, 2, 1, 3, 5, 7, 9};
  std::vector<double> category_weights{0.40, 0.25, 0.10, 0.10, 0.05, 0.05, 0.05};
  std::vector<LatBand> lat_bands{{deg2rad(-25.0), deg2rad(5.0), 0.8},
                                 {deg2rad(5.0), deg2rad(30.0), 0.2}};
  // Objects cluster around these longitudes with probability hotspot_prob.
  std::vector<double> hotspot_lons{deg2rad(-120.0), deg2rad(0.0), deg2rad(100.0)};
  double hotspot_prob = 0.9;
  double hotspot_spread = deg2rad(12.0);  // normal sd
  // Log-uniform normalized area.
  double noa_min = 1e-5;
  double noa_max = 2e-2;
  // Occasional objects too wide for an SRoI.
  double oversize_prob = 0.02;
  double oversize_noa_min = 0.05;
  double oversize_noa_max = 0.12;
  // fov_h / fov_v, log-uniform.
  double aspect_min = 0.6;
  double aspect_max = 2.0;
  int initial_objects = 12;
  double birth_rate = 0.2;
  double mean_lifetime = 60.0;  // frames, geometric
  double drift_sd = deg2rad(0.3);  // per-object longitude speed sd, rad/frame
  // Freezes the initial population: no births, deaths or drift.
  bool stationary = false;

  void validate() const;
};

// Box of the given normalized area and aspect ratio centered at (lon, lat).
SphericalBox box_with_area(double lon, double lat, double noa, double aspect);

SceneTrace generate_trace(const TraceParams& params, std::uint64_t seed);

// JSON lines, one frame per line, angles in degrees:
//   {"frame": k, "objects": [{"lon", "lat", "fov_h", "fov_v", "category",
//                              "confidence"}]}
// "confidence" is optional on read (default 1).
void write_trace_jsonl(std::ostream& out, std::span<const TraceFrame> frames);
std::vector<TraceFrame> read_trace_jsonl(std::istream& in, int n_categories,
                                         std::string_view what = "trace");
std::vector<TraceFrame> load_trace_jsonl(const std::filesystem::path& path,
                                         int n_categories);

TraceParams parse_trace_params(std::string_view json_text);
TraceParams load_trace_params(const std::filesystem::path& path);

}  // namespace omnisense

#endif  // OMNISENSE_TRACE_H_
