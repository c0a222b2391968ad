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

#include "omnisense/sim_config.h"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "io_internal.h"
#include "omnisense/profile_io.h"

namespace omnisense {

using detail::json;

namespace {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
  const std::filesystem::path path(p);
  return path.is_absolute() || base.empty() ? path : base / path;
}

void parse_predictor(const json& j, PredictorConfig& p) {
  const std::string path = "predictor";
  detail::check_keys(j, path,
                     {"fov_deg", "gamma", "history_frames", "discovery_min_srois",
                      "discovery_window"});
  if (j.contains("fov_deg")) {
    p.fov = deg2rad(detail::as_positive(j["fov_deg"], path + ".fov_deg"));
  }
  if (j.contains("gamma")) p.gamma = detail::as_number(j["gamma"], path + ".gamma");
  if (j.contains("history_frames")) {
    p.history_frames = static_cast<int>(detail::as_int(j["history_frames"], path + ".history_frames"));
  }
  if (j.contains("discovery_min_srois")) {
    p.discovery_min_srois =
        static_cast<int>(detail::as_int(j["discovery_min_srois"], path + ".discovery_min_srois"));
  }
  if (j.contains("discovery_window")) {
    p.discovery_window =
        static_cast<int>(detail::as_int(j["discovery_window"], path + ".discovery_window"));
  }
  try {
    p.validate();
  } catch (const ConfigError& e) {
    detail::fail(path, e.what());
  }
}

void parse_eval(const json& j, EvalConfig& e) {
  const std::string path = "eval";
  detail::check_keys(j, path, {"iou_threshold", "interpolation", "sweep", "categories"});
  if (j.contains("iou_threshold")) {
    e.iou_threshold = detail::as_number(j["iou_threshold"], path + ".iou_threshold");
  }
  if (j.contains("interpolation")) {
    try {
      e.interpolation =
          parse_ap_interpolation(detail::as_string(j["interpolation"], path + ".interpolation"));
    } catch (const ConfigError& err) {
      detail::fail(path + ".interpolation", err.what());
    }
  }
  if (j.contains("sweep")) e.sweep = detail::as_bool(j["sweep"], path + ".sweep");
  if (j.contains("categories")) {
    const json& arr = j["categories"];
    detail::expect_array(arr, path + ".categories");
    for (std::size_t k = 0; k < arr.size(); ++k) {
      e.categories.push_back(
          static_cast<int>(detail::as_int(arr[k], detail::index(path + ".categories", k))));
    }
  }
  try {
    e.validate();
  } catch (const ConfigError& err) {
    detail::fail(path, err.what());
  }
}

int resolve_model_ref(const json& v, const ModelSet& models, const std::string& path) {
  if (v.is_string()) {
    const std::string name = v.get<std::string>();
    for (const auto& m : models.models) {
      if (!m.is_skip() && m.name == name) return m.index;
    }
    detail::fail(path, "no model named '" + name + "'");
  }
  const auto idx = detail::as_int(v, path);
  if (idx < 1 || idx >= models.size()) detail::fail(path, "model index out of range");
  return static_cast<int>(idx);
}

}  // namespace

Experiment parse_experiment(std::string_view json_text, const std::filesystem::path& base_dir) {
  const json root = detail::parse_text(std::string(json_text), "experiment config");
  detail::check_keys(
      root, "",
      {"version", "trace", "trace_params", "trace_seed", "models", "categories", "methods",
       "budget_s", "compression", "bandwidth_bps", "rtt_s", "network_window",
       "network_jitter", "detector_seed", "order_seed", "network_seed", "min_pixels",
       "false_positive_rate", "center_jitter_deg", "discovery_model", "nms_threshold",
       "frame_overhead_s", "cubemap_serial", "max_grid_fov_deg", "state_cap", "predictor",
       "size_thresholds", "eval"});
  detail::check_version(root, true);

  Experiment ex;
  SimConfig& s = ex.sim;

  if (root.contains("models")) {
    if (root.contains("categories")) {
      detail::fail("categories", "only allowed with the built-in model set");
    }
    const json& m = root["models"];
    if (m.is_string()) {
      const auto path = resolve(base_dir, m.get<std::string>());
      try {
        s.models = load_model_set(path);
      } catch (const ConfigError& e) {
        detail::fail("models", e.what());
      }
    } else {
      s.models = detail::model_set_from_json(m, "models");
    }
  } else if (root.contains("categories")) {
    const auto n = detail::as_int(root["categories"], "categories");
    if (n < 1) detail::fail("categories", "must be positive");
    s.models = default_model_set(static_cast<int>(n));
  }

  if (root.contains("methods")) {
    const json& arr = root["methods"];
    detail::expect_array(arr, "methods");
    if (arr.empty()) detail::fail("methods", "at least one method is required");
    ex.methods.clear();
    for (std::size_t k = 0; k < arr.size(); ++k) {
      const std::string p = detail::index("methods", k);
      try {
        const Method m = parse_method(detail::as_string(arr[k], p));
        if (m.kind != MethodKind::kOmniSense && m.model >= s.models.size()) {
          detail::fail(p, "model index out of range");
        }
        ex.methods.push_back(m);
      } catch (const ConfigError& e) {
        if (std::string_view(e.what()).starts_with("field")) throw;
        detail::fail(p, e.what());
      }
    }
  }

  if (root.contains("budget_s")) s.budget_s = detail::as_positive(root["budget_s"], "budget_s");
  if (root.contains("compression")) {
    try {
      s.compression = parse_compression(detail::as_string(root["compression"], "compression"));
    } catch (const ConfigError& e) {
      if (std::string_view(e.what()).starts_with("field")) throw;
      detail::fail("compression", "expected lossless, q100, q75, q50 or q25");
    }
  }
  if (root.contains("bandwidth_bps")) {
    s.bandwidth_bps = detail::as_positive(root["bandwidth_bps"], "bandwidth_bps");
  }
  if (root.contains("rtt_s")) s.rtt_s = detail::as_non_negative(root["rtt_s"], "rtt_s");
  if (root.contains("network_window")) {
    const auto w = detail::as_int(root["network_window"], "network_window");
    if (w < 1) detail::fail("network_window", "must be >= 1");
    s.network_window = static_cast<int>(w);
  }
  if (root.contains("network_jitter")) {
    s.network_jitter = detail::as_non_negative(root["network_jitter"], "network_jitter");
  }
  if (root.contains("detector_seed")) {
    s.detector_seed = detail::as_uint(root["detector_seed"], "detector_seed");
  }
  if (root.contains("order_seed")) s.order_seed = detail::as_uint(root["order_seed"], "order_seed");
  if (root.contains("network_seed")) {
    s.network_seed = detail::as_uint(root["network_seed"], "network_seed");
  }
  if (root.contains("min_pixels")) {
    const auto mp = detail::as_int(root["min_pixels"], "min_pixels");
    if (mp < 0) detail::fail("min_pixels", "must be >= 0");
    s.detector.min_pixels = static_cast<int>(mp);
  }
  if (root.contains("false_positive_rate")) {
    s.detector.false_positive_rate =
        detail::as_non_negative(root["false_positive_rate"], "false_positive_rate");
  }
  if (root.contains("center_jitter_deg")) {
    s.detector.center_jitter =
        deg2rad(detail::as_non_negative(root["center_jitter_deg"], "center_jitter_deg"));
  }
  if (root.contains("discovery_model")) {
    s.discovery_model = resolve_model_ref(root["discovery_model"], s.models, "discovery_model");
  }
  if (root.contains("nms_threshold")) {
    s.nms_threshold = detail::as_positive(root["nms_threshold"], "nms_threshold");
    if (s.nms_threshold > 1.0) detail::fail("nms_threshold", "must lie in (0, 1]");
  }
  if (root.contains("frame_overhead_s")) {
    s.frame_overhead_s = detail::as_non_negative(root["frame_overhead_s"], "frame_overhead_s");
  }
  if (root.contains("cubemap_serial")) {
    s.cubemap_serial = detail::as_bool(root["cubemap_serial"], "cubemap_serial");
  }
  if (root.contains("max_grid_fov_deg")) {
    const double fov = detail::as_positive(root["max_grid_fov_deg"], "max_grid_fov_deg");
    if (fov >= 180.0) detail::fail("max_grid_fov_deg", "must be below 180");
    s.max_grid_fov = deg2rad(fov);
  }
  if (root.contains("state_cap")) s.dp.state_cap = detail::as_uint(root["state_cap"], "state_cap");
  if (root.contains("predictor")) parse_predictor(root["predictor"], s.predictor);
  if (root.contains("size_thresholds")) {
    const json& t = root["size_thresholds"];
    detail::check_keys(t, "size_thresholds", {"small_max", "medium_max"});
    if (t.contains("small_max")) {
      s.detector.classifier.small_max =
          detail::as_positive(t["small_max"], "size_thresholds.small_max");
    }
    if (t.contains("medium_max")) {
      s.detector.classifier.medium_max =
          detail::as_positive(t["medium_max"], "size_thresholds.medium_max");
    }
    try {
      s.detector.classifier.validate();
    } catch (const ConfigError& e) {
      detail::fail("size_thresholds", e.what());
    }
  }
  if (root.contains("eval")) parse_eval(root["eval"], s.eval);

  if (root.contains("trace") && root.contains("trace_params")) {
    detail::fail("trace_params", "give either trace or trace_params, not both");
  }
  if (root.contains("trace")) {
    if (root.contains("trace_seed")) detail::fail("trace_seed", "only used with trace_params");
    const auto path = resolve(base_dir, detail::as_string(root["trace"], "trace"));
    try {
      ex.trace = load_trace_jsonl(path, s.models.categories);
    } catch (const ConfigError& e) {
      detail::fail("trace", e.what());
    }
  } else {
    TraceParams params;
    params.n_categories = s.models.categories;
    if (root.contains("trace_params")) {
      json tp = root["trace_params"];
      if (!tp.contains("n_categories")) tp["n_categories"] = s.models.categories;
      params = detail::trace_params_from_json(tp, "trace_params");
      if (params.n_categories != s.models.categories) {
        detail::fail("trace_params.n_categories", "must match the model set's categories");
      }
    }
    std::uint64_t seed = 1;
    if (root.contains("trace_seed")) seed = detail::as_uint(root["trace_seed"], "trace_seed");
    ex.trace = generate_trace(params, seed).frames;
  }

  try {
    s.validate();
  } catch (const ConfigError& e) {
    detail::fail("<root>", e.what());
  }
  return ex;
}

Experiment load_experiment(const std::filesystem::path& path) {
  return parse_experiment(detail::read_file(path), path.parent_path());
}

std::string results_csv(std::span<const MethodRun> runs) {
  std::ostringstream os;
  os << "frame,method,latency_s,plan,n_detections\n";
  for (const auto& run : runs) {
    const std::string label = run.method.label();
    for (const auto& f : run.result.frames) {
      os << f.frame << ',' << label << ',' << format_double(f.e2e_latency_s) << ',' << f.plan
         << ',' << f.detections.size() << '\n';
    }
  }
  return os.str();
}

std::string summary_json(std::span<const MethodRun> runs) {
  json methods = json::array();
  for (const auto& run : runs) {
    const ExperimentSummary& s = run.result.summary;
    json ap = json::object();
    for (const auto& [c, v] : s.per_category_ap) ap[std::to_string(c)] = v;
    methods.push_back({{"method", s.method},
                       {"frames", s.frames},
                       {"mean_latency_s", s.mean_latency_s ? json(*s.mean_latency_s) : json()},
                       {"sph_map", s.sph_map ? json(*s.sph_map) : json()},
                       {"per_category_ap", ap},
                       {"discovery_frames", s.discovery_frames},
                       {"mean_estimated_accuracy", s.mean_estimated_accuracy}});
  }
  return json{{"version", 1}, {"methods", methods}}.dump(2) + "\n";
}

std::string detections_file_name(const Method& method) {
  std::string label = method.label();
  for (char& c : label) {
    if (c == ':') c = '_';
  }
  return "detections_" + label + ".jsonl";
}

void write_results(const std::filesystem::path& out_dir, std::span<const MethodRun> runs) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw Error("cannot create '" + out_dir.string() + "': " + ec.message());
  auto write = [&](const std::string& name, const std::string& body) {
    std::ofstream out(out_dir / name, std::ios::binary);
    out << body;
    if (!out) throw Error("cannot write '" + (out_dir / name).string() + "'");
  };
  write("results.csv", results_csv(runs));
  write("summary.json", summary_json(runs));
  for (const auto& run : runs) {
    std::vector<TraceFrame> frames;
    for (const auto& f : run.result.frames) frames.push_back({f.frame, f.detections});
    std::ostringstream os;
    write_trace_jsonl(os, frames);
    write(detections_file_name(run.method), os.str());
  }
}

std::vector<ResultRow> parse_results_csv(std::string_view text) {
  std::vector<ResultRow> rows;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line_no == 1) {
      if (line != "frame,method,latency_s,plan,n_detections") {
        throw ConfigError("results csv: unexpected header");
      }
      continue;
    }
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (cells.size() != 5) {
      throw ConfigError("results csv line " + std::to_string(line_no) + ": expected 5 cells");
    }
    try {
      rows.push_back({std::stoll(cells[0]), cells[1], std::stod(cells[2]), cells[3],
                      std::stoi(cells[4])});
    } catch (const std::exception&) {
      throw ConfigError("results csv line " + std::to_string(line_no) + ": malformed number");
    }
  }
  return rows;
}

}  // namespace omnisense
