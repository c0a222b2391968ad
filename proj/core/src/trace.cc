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

#include "omnisense/trace.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <string>

#include "io_internal.h"
#include "omnisense/error.h"
#include "omnisense/random.h"

namespace omnisense {

using detail::json;

namespace {

std::size_t pick_weighted(Rng& rng, std::span<const double> weights) {
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  double u = rng.uniform() * total;
  for (std::size_t k = 0; k < weights.size(); ++k) {
    if (u < weights[k]) return k;
    u -= weights[k];
  }
  return weights.size() - 1;
}

double log_uniform(Rng& rng, double lo, double hi) {
  return std::exp(rng.uniform(std::log(lo), std::log(hi)));
}

struct LiveObject {
  SphericalBox box;
  int category = 0;
  double speed = 0.0;
};

LiveObject spawn(const TraceParams& p, Rng& rng) {
  const int category = p.categories[pick_weighted(rng, p.category_weights)];
  std::vector<double> band_weights;
  for (const auto& b : p.lat_bands) band_weights.push_back(b.weight);
  const LatBand& band = p.lat_bands[pick_weighted(rng, band_weights)];
  const double lat = rng.uniform(band.lat_min, band.lat_max);
  double lon;
  if (!p.hotspot_lons.empty() && rng.uniform() < p.hotspot_prob) {
    const double hub = p.hotspot_lons[rng.below(p.hotspot_lons.size())];
    lon = wrap_lon(hub + p.hotspot_spread * rng.normal());
  } else {
    lon = rng.uniform(-kPi, kPi);
  }
  const bool oversize = rng.uniform() < p.oversize_prob;
  const double noa = oversize ? rng.uniform(p.oversize_noa_min, p.oversize_noa_max)
                              : log_uniform(rng, p.noa_min, p.noa_max);
  const double aspect = log_uniform(rng, p.aspect_min, p.aspect_max);
  const double speed = p.drift_sd * rng.normal();
  return {box_with_area(lon, lat, noa, aspect), category, speed};
}

}  // namespace

void TraceParams::validate() const {
  if (num_frames < 0) throw ConfigError("trace num_frames must be >= 0");
  if (n_categories < 1) throw ConfigError("trace n_categories must be >= 1");
  if (categories.empty() || categories.size() != category_weights.size()) {
    throw ConfigError("trace categories and category_weights must be non-empty and aligned");
  }
  for (int c : categories) {
    if (c < 0 || c >= n_categories) throw ConfigError("trace category out of range");
  }
  for (double w : category_weights) {
    if (!(w >= 0.0)) throw ConfigError("trace category weights must be >= 0");
  }
  if (!(std::accumulate(category_weights.begin(), category_weights.end(), 0.0) > 0.0)) {
    throw ConfigError("trace category weights must not all be zero");
  }
  if (lat_bands.empty()) throw ConfigError("trace needs at least one latitude band");
  double band_total = 0.0;
  for (const auto& b : lat_bands) {
    if (!(b.lat_min <= b.lat_max) || b.lat_min < -kHalfPi || b.lat_max > kHalfPi ||
        !(b.weight >= 0.0)) {
      throw ConfigError("trace latitude band is invalid");
    }
    band_total += b.weight;
  }
  if (!(band_total > 0.0)) throw ConfigError("trace latitude band weights must not all be zero");
  if (!(hotspot_prob >= 0.0 && hotspot_prob <= 1.0)) {
    throw ConfigError("trace hotspot_prob must lie in [0, 1]");
  }
  if (!(hotspot_spread >= 0.0)) throw ConfigError("trace hotspot_spread must be >= 0");
  if (!(noa_min > 0.0 && noa_min <= noa_max && noa_max <= 1.0)) {
    throw ConfigError("trace needs 0 < noa_min <= noa_max <= 1");
  }
  if (!(oversize_prob >= 0.0 && oversize_prob <= 1.0)) {
    throw ConfigError("trace oversize_prob must lie in [0, 1]");
  }
  if (!(oversize_noa_min > 0.0 && oversize_noa_min <= oversize_noa_max &&
        oversize_noa_max <= 1.0)) {
    throw ConfigError("trace needs 0 < oversize_noa_min <= oversize_noa_max <= 1");
  }
  if (!(aspect_min > 0.0 && aspect_min <= aspect_max)) {
    throw ConfigError("trace needs 0 < aspect_min <= aspect_max");
  }
  if (initial_objects < 0) throw ConfigError("trace initial_objects must be >= 0");
  if (!(birth_rate >= 0.0)) throw ConfigError("trace birth_rate must be >= 0");
  if (!(mean_lifetime >= 1.0)) throw ConfigError("trace mean_lifetime must be >= 1");
  if (!(drift_sd >= 0.0)) throw ConfigError("trace drift_sd must be >= 0");
}

SphericalBox box_with_area(double lon, double lat, double noa, double aspect) {
  if (!(noa > 0.0 && noa <= 1.0) || !(aspect > 0.0)) {
    throw DomainError("box_with_area: need 0 < noa <= 1 and aspect > 0");
  }
  const double area = noa * kSphereArea;
  // 2 * aspect * v * sin(v / 2) grows with v; solve it by bisection.
  const double v_max = std::min(kPi, kTwoPi / aspect);
  auto area_of = [aspect](double v) { return 2.0 * aspect * v * std::sin(0.5 * v); };
  double lo = 0.0;
  double hi = v_max;
  if (area_of(hi) <= area) {
    lo = hi;
  } else {
    for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
      const double mid = 0.5 * (lo + hi);
      (area_of(mid) < area ? lo : hi) = mid;
    }
  }
  const double fov_v = std::max(0.5 * (lo + hi), 1e-12);
  const double fov_h = std::min(aspect * fov_v, kTwoPi);
  return SphericalBox(wrap_lon(lon), std::clamp(lat, -kHalfPi, kHalfPi), fov_h, fov_v);
}

SceneTrace generate_trace(const TraceParams& params, std::uint64_t seed) {
  params.validate();
  SceneTrace trace;
  trace.seed = seed;
  Rng rng(seed);
  std::vector<LiveObject> live;
  for (int k = 0; k < params.initial_objects; ++k) live.push_back(spawn(params, rng));

  const double death_p = 1.0 / params.mean_lifetime;
  for (int f = 0; f < params.num_frames; ++f) {
    if (f > 0 && !params.stationary) {
      std::vector<LiveObject> survivors;
      for (auto& o : live) {
        if (rng.uniform() < death_p) continue;
        o.box = SphericalBox(wrap_lon(o.box.lon() + o.speed), o.box.lat(), o.box.fov_h(),
                             o.box.fov_v());
        survivors.push_back(o);
      }
      live = std::move(survivors);
      const int births = rng.poisson(params.birth_rate);
      for (int k = 0; k < births; ++k) live.push_back(spawn(params, rng));
    }
    TraceFrame frame;
    frame.index = f;
    for (const auto& o : live) frame.objects.push_back({o.box, o.category, 1.0, f});
    trace.frames.push_back(std::move(frame));
  }
  return trace;
}

void write_trace_jsonl(std::ostream& out, std::span<const TraceFrame> frames) {
  for (const auto& frame : frames) {
    json objects = json::array();
    for (const auto& o : frame.objects) {
      json j{{"lon", rad2deg(o.box.lon())},
             {"lat", rad2deg(o.box.lat())},
             {"fov_h", rad2deg(o.box.fov_h())},
             {"fov_v", rad2deg(o.box.fov_v())},
             {"category", o.category}};
      if (o.confidence != 1.0) j["confidence"] = o.confidence;
      objects.push_back(std::move(j));
    }
    out << json{{"frame", frame.index}, {"objects", objects}}.dump() << '\n';
  }
}

std::vector<TraceFrame> read_trace_jsonl(std::istream& in, int n_categories,
                                         std::string_view what) {
  std::vector<TraceFrame> frames;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::string where = std::string(what) + " line " + std::to_string(line_no);
    const json root = detail::parse_text(line, where);
    try {
      detail::check_keys(root, "", {"frame", "objects"});
      TraceFrame frame;
      frame.index = detail::as_int(detail::require(root, "frame", ""), "frame");
      if (frame.index < 0) detail::fail("frame", "must be >= 0");
      if (!frames.empty() && frame.index <= frames.back().index) {
        detail::fail("frame", "frame indices must be strictly increasing");
      }
      const json& objects = detail::require(root, "objects", "");
      detail::expect_array(objects, "objects");
      for (std::size_t k = 0; k < objects.size(); ++k) {
        const std::string p = detail::index("objects", k);
        const json& o = objects[k];
        detail::check_keys(o, p, {"lon", "lat", "fov_h", "fov_v", "category", "confidence"});
        auto num = [&](std::string_view key) {
          return detail::as_number(detail::require(o, key, p), detail::join(p, key));
        };
        DetectedObject obj{SphericalBox(0.0, 0.0, 1.0, 1.0), 0, 1.0, frame.index};
        try {
          obj.box = SphericalBox::from_degrees(num("lon"), num("lat"), num("fov_h"),
                                               num("fov_v"));
        } catch (const DomainError& e) {
          detail::fail(p, e.what());
        }
        const std::int64_t c =
            detail::as_int(detail::require(o, "category", p), detail::join(p, "category"));
        if (c < 0 || c >= n_categories) {
          detail::fail(detail::join(p, "category"), "out of range");
        }
        obj.category = static_cast<int>(c);
        if (o.contains("confidence")) {
          obj.confidence = detail::as_number(o["confidence"], detail::join(p, "confidence"));
          if (obj.confidence < 0.0 || obj.confidence > 1.0) {
            detail::fail(detail::join(p, "confidence"), "must lie in [0, 1]");
          }
        }
        frame.objects.push_back(obj);
      }
      frames.push_back(std::move(frame));
    } catch (const ConfigError& e) {
      throw ConfigError(where + ": " + e.what());
    }
  }
  return frames;
}

std::vector<TraceFrame> load_trace_jsonl(const std::filesystem::path& path,
                                         int n_categories) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open '" + path.string() + "'");
  return read_trace_jsonl(in, n_categories, path.string());
}

namespace detail {

TraceParams trace_params_from_json(const json& root, const std::string& path) {
  check_keys(root, path,
             {"version", "num_frames", "n_categories", "categories", "category_weights",
              "lat_bands", "hotspot_lons", "hotspot_prob", "hotspot_spread", "noa_min",
              "noa_max", "oversize_prob", "oversize_noa_min", "oversize_noa_max",
              "aspect_min", "aspect_max", "initial_objects", "birth_rate",
              "mean_lifetime", "drift_sd", "stationary"});
  check_version(root, false);
  TraceParams p;
  auto number = [&](std::string_view key, double& out, bool degrees = false) {
    if (!root.contains(std::string(key))) return;
    const double v = as_number(root[std::string(key)], join(path, key));
    out = degrees ? deg2rad(v) : v;
  };
  auto integer = [&](std::string_view key, int& out) {
    if (!root.contains(std::string(key))) return;
    out = static_cast<int>(as_int(root[std::string(key)], join(path, key)));
  };
  auto numbers = [&](std::string_view key, bool degrees) {
    const std::string p = join(path, key);
    const json& arr = root[std::string(key)];
    expect_array(arr, p);
    std::vector<double> out;
    for (std::size_t k = 0; k < arr.size(); ++k) {
      const double v = as_number(arr[k], index(p, k));
      out.push_back(degrees ? deg2rad(v) : v);
    }
    return out;
  };
  integer("num_frames", p.num_frames);
  integer("n_categories", p.n_categories);
  if (root.contains("categories")) {
    const std::string cp = join(path, "categories");
    const json& arr = root["categories"];
    expect_array(arr, cp);
    p.categories.clear();
    for (std::size_t k = 0; k < arr.size(); ++k) {
      p.categories.push_back(static_cast<int>(as_int(arr[k], index(cp, k))));
    }
  }
  if (root.contains("category_weights")) p.category_weights = numbers("category_weights", false);
  if (root.contains("lat_bands")) {
    const std::string bp = join(path, "lat_bands");
    const json& arr = root["lat_bands"];
    expect_array(arr, bp);
    p.lat_bands.clear();
    for (std::size_t k = 0; k < arr.size(); ++k) {
      const std::string ip = index(bp, k);
      check_keys(arr[k], ip, {"lat_min", "lat_max", "weight"});
      LatBand b;
      b.lat_min = deg2rad(as_number(require(arr[k], "lat_min", ip), join(ip, "lat_min")));
      b.lat_max = deg2rad(as_number(require(arr[k], "lat_max", ip), join(ip, "lat_max")));
      if (arr[k].contains("weight")) b.weight = as_number(arr[k]["weight"], join(ip, "weight"));
      p.lat_bands.push_back(b);
    }
  }
  if (root.contains("hotspot_lons")) p.hotspot_lons = numbers("hotspot_lons", true);
  number("hotspot_prob", p.hotspot_prob);
  number("hotspot_spread", p.hotspot_spread, true);
  number("noa_min", p.noa_min);
  number("noa_max", p.noa_max);
  number("oversize_prob", p.oversize_prob);
  number("oversize_noa_min", p.oversize_noa_min);
  number("oversize_noa_max", p.oversize_noa_max);
  number("aspect_min", p.aspect_min);
  number("aspect_max", p.aspect_max);
  integer("initial_objects", p.initial_objects);
  number("birth_rate", p.birth_rate);
  number("mean_lifetime", p.mean_lifetime);
  number("drift_sd", p.drift_sd, true);
  if (root.contains("stationary")) p.stationary = as_bool(root["stationary"], join(path, "stationary"));
  try {
    p.validate();
  } catch (const ConfigError& e) {
    fail(path.empty() ? "<root>" : path, e.what());
  }
  return p;
}

}  // namespace detail

TraceParams parse_trace_params(std::string_view json_text) {
  return detail::trace_params_from_json(
      detail::parse_text(std::string(json_text), "trace parameters"), "");
}

TraceParams load_trace_params(const std::filesystem::path& path) {
  return parse_trace_params(detail::read_file(path));
}

}  // namespace omnisense
