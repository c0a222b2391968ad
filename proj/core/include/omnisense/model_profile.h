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

#ifndef OMNISENSE_MODEL_PROFILE_H_
#define OMNISENSE_MODEL_PROFILE_H_

#include <deque>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "omnisense/size_classifier.h"
#include "omnisense/sphere.h"

namespace omnisense {

inline constexpr int kDefaultCategories = 80;
inline constexpr double kDefaultBandwidthBps = 17.9e6;
inline constexpr int kDefaultNetworkWindow = 7;

enum class Placement { kLocal, kRemote };

std::string_view to_string(Placement p);
// Throws ConfigError for anything but "local" / "remote".
Placement parse_placement(std::string_view s);

// Image compression applied to remote-bound perspective images.
enum class Compression { kLossless, kQ100, kQ75, kQ50, kQ25 };

inline constexpr Compression kAllCompressions[] = {
    Compression::kLossless, Compression::kQ100, Compression::kQ75,
    Compression::kQ50, Compression::kQ25};

std::string_view to_string(Compression c);
// Accepts "lossless", "q100", "q75", "q50", "q25".
Compression parse_compression(std::string_view s);
double default_bytes_per_pixel(Compression c);

// One detector variant. Index 0 is reserved for the skip option, whose gav and
// latencies are all zero.
struct ModelProfile {
  int index = 0;
  std::string name;
  int input_side = 0;
  Placement placement = Placement::kLocal;
  // General accuracy vector, 3n entries laid out by cell_index().
  std::vector<double> gav;
  double infer_latency_s = 0.0;
  // Device-side projection time per perspective-image side length.
  std::map<int, double> projection_latency_s;
  // Encoding time per side length and compression setting (remote only).
  std::map<int, std::map<Compression, double>> encode_latency_s;
  std::map<Compression, double> bytes_per_pixel;

  bool is_skip() const { return index == 0; }
  int categories() const { return static_cast<int>(gav.size()) / kSizeLevels; }
  double accuracy(SizeLevel level, int category) const {
    return gav[cell_index(level, category, categories())];
  }

  static ModelProfile skip(int n_categories);

  // Throws ConfigError for NaN/negative values, gav entries outside [0, 1],
  // or a gav whose length is not 3 * n_categories.
  void validate(int n_categories) const;
};

// Ordered model set; models[0] is always the skip profile.
struct ModelSet {
  int categories = kDefaultCategories;
  std::vector<ModelProfile> models;

  int size() const { return static_cast<int>(models.size()); }
  const ModelProfile& at(int index) const;
  // Index of the remote model with the highest mean gav, or -1.
  int most_accurate_remote() const;
  void validate() const;
};

// Five-variant profile set shaped after the scaled-YOLOv4 family (input sides
// 416/512/640/896/1280, the smallest on the device). Accuracy and latency
// grow together; per-category difficulty offsets are deterministic.
ModelSet default_model_set(int n_categories = kDefaultCategories);

// Passive network profiler: the last `window` delivery delays per model.
class NetworkState {
 public:
  explicit NetworkState(double bandwidth_bps = kDefaultBandwidthBps,
                        double rtt_s = 0.0, int window = kDefaultNetworkWindow);

  void record(int model_index, double delay_s);
  std::optional<double> mean_delay(int model_index) const;
  std::span<const double> samples(int model_index) const;

  double bandwidth_bps() const { return bandwidth_bps_; }
  double rtt_s() const { return rtt_s_; }
  int window() const { return window_; }

 private:
  double bandwidth_bps_;
  double rtt_s_;
  int window_;
  std::map<int, std::vector<double>> samples_;
};

struct DelayEstimate {
  double preprocess_s = 0.0;  // projection + optional encoding
  double inference_s = 0.0;   // network delivery + model inference

  double total_s() const { return preprocess_s + inference_s; }
};

// Dot product gav . ccv; 0 for the skip model. Throws ConfigError on a length
// mismatch.
double estimate_accuracy(const ModelProfile& model, std::span<const double> ccv);
// alpha * gav . ccv.
double weighted_accuracy(const ModelProfile& model, std::span<const double> ccv,
                         double alpha);

// Wire time of a side x side image: side^2 * bpp * 8 / bandwidth + rtt.
double transfer_delay_s(int side, double bytes_per_pixel, double bandwidth_bps,
                        double rtt_s);

// 0 for local models; otherwise the windowed mean, or the analytic transfer
// time when no sample has been observed yet.
double estimate_network_delay(const ModelProfile& model, const NetworkState& net,
                              Compression compression = Compression::kLossless);

// Throws ConfigError when the model has no entry for its own input side or
// for the requested compression.
DelayEstimate estimate_delay(const ModelProfile& model, const NetworkState& net,
                             Compression compression = Compression::kLossless);

double projection_latency(const ModelProfile& model);
double encode_latency(const ModelProfile& model, Compression compression);
double bytes_per_pixel(const ModelProfile& model, Compression compression);

// Ground truth and detections of one profiling image.
struct LabeledFrame {
  std::vector<DetectedObject> truths;
  std::vector<DetectedObject> detections;
};

// Offline gav profiling: per (size level, category) recall, matching each
// detection (descending confidence) to the unmatched same-category truth with
// the highest SphIoU >= iou_threshold. Cells without truth instances are 0.
std::vector<double> profile_gav(std::span<const LabeledFrame> frames,
                                const SizeClassifier& cls, int n_categories,
                                double iou_threshold = 0.5);

}  // namespace omnisense

#endif  // OMNISENSE_MODEL_PROFILE_H_
