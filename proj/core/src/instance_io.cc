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

#include "omnisense/instance_io.h"

#include "io_internal.h"

namespace omnisense {

using detail::json;

namespace {

void read_row(const json& sroi, std::string_view key, const std::string& path, int m,
              int j, Table& table) {
  const std::string p = detail::join(path, key);
  const json& arr = detail::require(sroi, key, path);
  detail::expect_array(arr, p);
  if (arr.size() != static_cast<std::size_t>(m)) {
    detail::fail(p, "expected " + std::to_string(m) + " entries, one per model");
  }
  for (int i = 0; i < m; ++i) {
    const std::string ip = detail::index(p, static_cast<std::size_t>(i));
    const double v = detail::as_non_negative(arr[static_cast<std::size_t>(i)], ip);
    if (i == 0 && v != 0.0) detail::fail(ip, "the skip entry must be 0");
    table(i, j) = v;
  }
}

}  // namespace

PlanRequest parse_instance(std::string_view json_text) {
  const json root = detail::parse_text(std::string(json_text), "allocation instance");
  detail::check_keys(root, "", {"version", "budget_s", "seed", "models", "srois"});
  detail::check_version(root, false);

  PlanRequest req;
  AllocInstance& inst = req.instance;
  inst.budget_s = detail::as_positive(detail::require(root, "budget_s", ""), "budget_s");
  if (root.contains("seed")) req.seed = detail::as_uint(root["seed"], "seed");

  const json& models = detail::require(root, "models", "");
  detail::expect_array(models, "models");
  if (models.empty()) detail::fail("models", "must list at least \"skip\"");
  for (std::size_t i = 0; i < models.size(); ++i) {
    inst.model_names.push_back(detail::as_string(models[i], detail::index("models", i)));
  }
  if (inst.model_names.front() != "skip") detail::fail("models[0]", "must be \"skip\"");
  const int m = static_cast<int>(inst.model_names.size());

  const json& srois = detail::require(root, "srois", "");
  detail::expect_array(srois, "srois");
  const int r = static_cast<int>(srois.size());
  inst.accuracy = Table(m, r);
  inst.preprocess_s = Table(m, r);
  inst.inference_s = Table(m, r);
  for (int j = 0; j < r; ++j) {
    const std::string path = detail::index("srois", static_cast<std::size_t>(j));
    const json& s = srois[static_cast<std::size_t>(j)];
    detail::check_keys(s, path, {"alpha", "ccv", "A", "dP", "dI"});
    if (s.contains("alpha")) {
      const double a = detail::as_non_negative(s["alpha"], detail::join(path, "alpha"));
      if (a > 1.0) detail::fail(detail::join(path, "alpha"), "must lie in [0, 1]");
    }
    if (s.contains("ccv")) {
      const std::string cp = detail::join(path, "ccv");
      detail::expect_array(s["ccv"], cp);
      for (std::size_t k = 0; k < s["ccv"].size(); ++k) {
        detail::as_non_negative(s["ccv"][k], detail::index(cp, k));
      }
    }
    read_row(s, "A", path, m, j, inst.accuracy);
    read_row(s, "dP", path, m, j, inst.preprocess_s);
    read_row(s, "dI", path, m, j, inst.inference_s);
  }
  inst.validate();
  return req;
}

PlanRequest load_instance(const std::filesystem::path& path) {
  return parse_instance(detail::read_file(path));
}

std::string serialize_instance(const AllocInstance& inst, std::uint64_t seed) {
  json root;
  root["version"] = 1;
  root["budget_s"] = inst.budget_s;
  root["seed"] = seed;
  std::vector<std::string> names = inst.model_names;
  if (names.empty()) {
    names.push_back("skip");
    for (int i = 1; i < inst.num_models(); ++i) names.push_back("m" + std::to_string(i));
  }
  root["models"] = names;
  json srois = json::array();
  for (int j = 0; j < inst.num_srois(); ++j) {
    json a = json::array(), dp = json::array(), di = json::array();
    for (int i = 0; i < inst.num_models(); ++i) {
      a.push_back(inst.accuracy(i, j));
      dp.push_back(inst.preprocess_s(i, j));
      di.push_back(inst.inference_s(i, j));
    }
    srois.push_back({{"A", a}, {"dP", dp}, {"dI", di}});
  }
  root["srois"] = srois;
  return root.dump(2);
}

std::string serialize_plan(const AllocInstance& inst, const ExecutionPlan& plan) {
  json root;
  root["version"] = 1;
  root["assignment"] = plan.assignment;
  json names = json::array();
  for (int i : plan.assignment) {
    names.push_back(i >= 0 && i < static_cast<int>(inst.model_names.size())
                        ? inst.model_names[static_cast<std::size_t>(i)]
                        : std::to_string(i));
  }
  root["models"] = names;
  root["order"] = plan.order;
  root["v"] = plan.estimated_accuracy;
  root["latency_s"] = plan.estimated_latency_s;
  root["approximate"] = plan.approximate;
  return root.dump(2);
}

ExecutionPlan parse_plan(std::string_view json_text) {
  const json root = detail::parse_text(std::string(json_text), "plan");
  detail::check_keys(root, "",
                     {"version", "assignment", "models", "order", "v", "latency_s",
                      "approximate"});
  detail::check_version(root, false);
  ExecutionPlan plan;
  auto ints = [&](std::string_view key) {
    const std::string p(key);
    const json& arr = detail::require(root, key, "");
    detail::expect_array(arr, p);
    std::vector<int> out;
    for (std::size_t k = 0; k < arr.size(); ++k) {
      out.push_back(static_cast<int>(detail::as_int(arr[k], detail::index(p, k))));
    }
    return out;
  };
  plan.assignment = ints("assignment");
  plan.order = ints("order");
  plan.estimated_accuracy = detail::as_number(detail::require(root, "v", ""), "v");
  plan.estimated_latency_s =
      detail::as_number(detail::require(root, "latency_s", ""), "latency_s");
  if (root.contains("approximate")) {
    plan.approximate = detail::as_bool(root["approximate"], "approximate");
  }
  return plan;
}

}  // namespace omnisense
