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

#ifndef OMNISENSE_SRC_JSON_UTIL_H_
#define OMNISENSE_SRC_JSON_UTIL_H_

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <string_view>

#include "json.hpp"
#include "omnisense/error.h"

namespace omnisense::detail {

using nlohmann::json;

[[noreturn]] inline void fail(const std::string& path, const std::string& what) {
  throw ConfigError("field '" + path + "': " + what);
}

inline std::string join(const std::string& path, std::string_view key) {
  return path.empty() ? std::string(key) : path + "." + std::string(key);
}

inline std::string index(const std::string& path, std::size_t i) {
  return path + "[" + std::to_string(i) + "]";
}

inline void expect_object(const json& v, const std::string& path) {
  if (!v.is_object()) fail(path.empty() ? "<root>" : path, "expected an object");
}

inline void expect_array(const json& v, const std::string& path) {
  if (!v.is_array()) fail(path, "expected an array");
}

inline void check_keys(const json& obj, const std::string& path,
                       std::initializer_list<std::string_view> allowed) {
  expect_object(obj, path);
  for (const auto& [key, _] : obj.items()) {
    bool ok = false;
    for (auto a : allowed) ok = ok || a == key;
    if (!ok) fail(join(path, key), "unknown field");
  }
}

inline const json& require(const json& obj, std::string_view key,
                           const std::string& path) {
  const auto it = obj.find(std::string(key));
  if (it == obj.end()) fail(join(path, key), "missing required field");
  return *it;
}

inline double as_number(const json& v, const std::string& path) {
  if (!v.is_number()) fail(path, "expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) fail(path, "expected a finite number");
  return d;
}

inline double as_non_negative(const json& v, const std::string& path) {
  const double d = as_number(v, path);
  if (d < 0.0) fail(path, "must be non-negative");
  return d;
}

inline double as_positive(const json& v, const std::string& path) {
  const double d = as_number(v, path);
  if (!(d > 0.0)) fail(path, "must be positive");
  return d;
}

inline std::int64_t as_int(const json& v, const std::string& path) {
  if (!v.is_number_integer()) fail(path, "expected an integer");
  return v.get<std::int64_t>();
}

inline std::uint64_t as_uint(const json& v, const std::string& path) {
  if (!v.is_number_integer() || (v.is_number_integer() && !v.is_number_unsigned() &&
                                  v.get<std::int64_t>() < 0)) {
    fail(path, "expected a non-negative integer");
  }
  return v.get<std::uint64_t>();
}

inline std::string as_string(const json& v, const std::string& path) {
  if (!v.is_string()) fail(path, "expected a string");
  return v.get<std::string>();
}

inline bool as_bool(const json& v, const std::string& path) {
  if (!v.is_boolean()) fail(path, "expected true or false");
  return v.get<bool>();
}

inline void check_version(const json& root, bool required) {
  const auto it = root.find("version");
  if (it == root.end()) {
    if (required) fail("version", "missing required field");
    return;
  }
  if (!it->is_number_integer() || it->get<std::int64_t>() != 1) {
    fail("version", "unsupported version (expected 1)");
  }
}

inline json parse_text(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(what + ": malformed JSON: " + e.what());
  }
}

}  // namespace omnisense::detail

#endif  // OMNISENSE_SRC_JSON_UTIL_H_
