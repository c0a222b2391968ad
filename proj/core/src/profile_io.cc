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

#include "omnisense/profile_io.h"

#include <fstream>
#include <sstream>

#include "io_internal.h"

namespace omnisense {
namespace detail {
namespace {

int parse_side_key(const std::string& key, const std::string& path) {
  try {
    std::size_t pos = 0;
    const int side = std::stoi(key, &pos);
    if (pos == key.size() && side > 0) return side;
  } catch (const std::exception&) {
  }
  fail(path, "keys must be positive integer side lengths");
}

Compression parse_compression_at(const std::string& key, const std::string& path) {
  try {
    return parse_compression(key);
  } catch (const ConfigError&) {
    fail(join(path, key), "unknown compression setting");
  }
}

ModelProfile model_from_json(const json& j, int model_index, int n, const std::string& path) {
  check_keys(j, path,
             {"name", "input_side", "placement", "gav", "infer_latency_s",
              "projection_latency_s", "encode_latency_s", "bytes_per_pixel"});
  ModelProfile m;
  m.index = model_index;
  m.name = as_string(require(j, "name", path), join(path, "name"));
  if (m.name.empty() || m.name == "skip") fail(join(path, "name"), "reserved or empty name");
  const auto side = as_int(require(j, "input_side", path), join(path, "input_side"));
  if (side <= 0) fail(join(path, "input_side"), "must be positive");
  m.input_side = static_cast<int>(side);
  const std::string placement = as_string(require(j, "placement", path), join(path, "placement"));
  try {
    m.placement = parse_placement(placement);
  } catch (const ConfigError&) {
    fail(join(path, "placement"), "expected \"local\" or \"remote\"");
  }

  const std::string gav_path = join(path, "gav");
  const json& gav = require(j, "gav", path);
  expect_array(gav, gav_path);
  if (gav.size() != static_cast<std::size_t>(kSizeLevels)) {
    fail(gav_path, "expected 3 rows (small, medium, large)");
  }
  m.gav.assign(static_cast<std::size_t>(kSizeLevels) * n, 0.0);
  for (int level = 0; level < kSizeLevels; ++level) {
    const std::string row_path = index(gav_path, static_cast<std::size_t>(level));
    const json& row = gav[static_cast<std::size_t>(level)];
    expect_array(row, row_path);
    if (row.size() != static_cast<std::size_t>(n)) {
      fail(row_path, "expected " + std::to_string(n) + " entries");
    }
    for (int c = 0; c < n; ++c) {
      const std::string p = index(row_path, static_cast<std::size_t>(c));
      const double a = as_non_negative(row[static_cast<std::size_t>(c)], p);
      if (a > 1.0) fail(p, "accuracy must lie in [0, 1]");
      m.gav[static_cast<std::size_t>(level * n + c)] = a;
    }
  }

  m.infer_latency_s =
      as_non_negative(require(j, "infer_latency_s", path), join(path, "infer_latency_s"));

  const std::string proj_path = join(path, "projection_latency_s");
  const json& proj = require(j, "projection_latency_s", path);
  expect_object(proj, proj_path);
  for (const auto& [key, v] : proj.items()) {
    m.projection_latency_s[parse_side_key(key, join(proj_path, key))] =
        as_non_negative(v, join(proj_path, key));
  }
  if (const auto it = j.find("encode_latency_s"); it != j.end()) {
    const std::string enc_path = join(path, "encode_latency_s");
    expect_object(*it, enc_path);
    for (const auto& [key, per_c] : it->items()) {
      const std::string side_path = join(enc_path, key);
      const int s = parse_side_key(key, side_path);
      expect_object(per_c, side_path);
      for (const auto& [ckey, v] : per_c.items()) {
        m.encode_latency_s[s][parse_compression_at(ckey, side_path)] =
            as_non_negative(v, join(side_path, ckey));
      }
    }
  }
  if (const auto it = j.find("bytes_per_pixel"); it != j.end()) {
    const std::string bpp_path = join(path, "bytes_per_pixel");
    expect_object(*it, bpp_path);
    for (const auto& [ckey, v] : it->items()) {
      m.bytes_per_pixel[parse_compression_at(ckey, bpp_path)] =
          as_non_negative(v, join(bpp_path, ckey));
    }
  }
  return m;
}

}  // namespace

ModelSet model_set_from_json(const json& root, const std::string& path) {
  check_keys(root, path, {"version", "categories", "models"});
  if (path.empty()) check_version(root, true);
  ModelSet set;
  const auto n = as_int(require(root, "categories", path), join(path, "categories"));
  if (n <= 0) fail(join(path, "categories"), "must be positive");
  set.categories = static_cast<int>(n);
  set.models.push_back(ModelProfile::skip(set.categories));
  const std::string models_path = join(path, "models");
  const json& models = require(root, "models", path);
  expect_array(models, models_path);
  if (models.empty()) fail(models_path, "at least one model is required");
  for (std::size_t i = 0; i < models.size(); ++i) {
    set.models.push_back(model_from_json(models[i], static_cast<int>(i) + 1, set.categories,
                                         index(models_path, i)));
  }
  for (std::size_t i = 1; i < set.models.size(); ++i) {
    for (std::size_t k = 1; k < i; ++k) {
      if (set.models[i].name == set.models[k].name) {
        fail(index(models_path, i - 1) + ".name", "duplicate model name");
      }
    }
  }
  try {
    set.validate();
  } catch (const ConfigError& e) {
    fail(models_path, e.what());
  }
  return set;
}

json model_set_to_json(const ModelSet& set) {
  json models = json::array();
  const int n = set.categories;
  for (const auto& m : set.models) {
    if (m.is_skip()) continue;
    json gav = json::array();
    for (int level = 0; level < kSizeLevels; ++level) {
      json row = json::array();
      for (int c = 0; c < n; ++c) row.push_back(m.gav[static_cast<std::size_t>(level * n + c)]);
      gav.push_back(row);
    }
    json proj = json::object();
    for (const auto& [side, v] : m.projection_latency_s) proj[std::to_string(side)] = v;
    json enc = json::object();
    for (const auto& [side, per_c] : m.encode_latency_s) {
      json inner = json::object();
      for (const auto& [c, v] : per_c) inner[std::string(to_string(c))] = v;
      enc[std::to_string(side)] = inner;
    }
    json bpp = json::object();
    for (const auto& [c, v] : m.bytes_per_pixel) bpp[std::string(to_string(c))] = v;
    models.push_back({{"name", m.name},
                      {"input_side", m.input_side},
                      {"placement", std::string(to_string(m.placement))},
                      {"gav", gav},
                      {"infer_latency_s", m.infer_latency_s},
                      {"projection_latency_s", proj},
                      {"encode_latency_s", enc},
                      {"bytes_per_pixel", bpp}});
  }
  return {{"version", 1}, {"categories", n}, {"models", models}};
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open '" + path.string() + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace detail

ModelSet parse_model_set(std::string_view json_text) {
  return detail::model_set_from_json(
      detail::parse_text(std::string(json_text), "model profile"), "");
}

ModelSet load_model_set(const std::filesystem::path& path) {
  return parse_model_set(detail::read_file(path));
}

std::string serialize_model_set(const ModelSet& set) {
  return detail::model_set_to_json(set).dump(2);
}

}  // namespace omnisense
