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

// omnisense: simulate, plan, eval, trace-gen and geometry helpers.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "omnisense/allocator.h"
#include "omnisense/error.h"
#include "omnisense/evaluation.h"
#include "omnisense/instance_io.h"
#include "omnisense/projection.h"
#include "omnisense/sim_config.h"
#include "omnisense/trace.h"

namespace {

using namespace omnisense;

constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

std::string fmt(double v, int digits = 6) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.*g", digits, v);
  return buf;
}

int cmd_simulate(const std::string& config, const std::string& out_dir) {
  const Experiment ex = load_experiment(config);
  std::vector<MethodRun> runs;
  for (const Method& m : ex.methods) {
    runs.push_back({m, run_experiment(ex.trace, ex.sim, m)});
    const ExperimentSummary& s = runs.back().result.summary;
    std::cout << s.method << ": frames=" << s.frames
              << " mean_latency_s=" << (s.mean_latency_s ? fmt(*s.mean_latency_s) : "n/a")
              << " sph_map=" << (s.sph_map ? fmt(*s.sph_map) : "n/a") << '\n';
  }
  write_results(out_dir, runs);
  return 0;
}

int cmd_plan(const std::string& instance, bool no_prune, bool all_orders) {
  const PlanRequest req = load_instance(instance);
  DpOptions opts;
  opts.prune_dominated = !no_prune;
  const ExecutionPlan plan = all_orders ? best_over_all_orders(req.instance, opts)
                                        : solve(req.instance, req.seed, opts);
  std::cout << serialize_plan(req.instance, plan) << '\n';
  return 0;
}

std::map<std::int64_t, std::vector<DetectedObject>> by_frame(std::vector<TraceFrame> frames) {
  std::map<std::int64_t, std::vector<DetectedObject>> out;
  for (auto& f : frames) out[f.index] = std::move(f.objects);
  return out;
}

int cmd_eval(const std::string& dets_path, const std::string& truth_path,
             const std::string& results_path, int categories, EvalConfig cfg) {
  auto truth = by_frame(load_trace_jsonl(truth_path, categories));
  auto dets = by_frame(load_trace_jsonl(dets_path, categories));
  for (const auto& [frame, _] : dets) {
    if (!truth.count(frame)) {
      throw ConfigError("detections reference frame " + std::to_string(frame) +
                        " which is absent from the truth file");
    }
  }
  std::vector<std::vector<DetectedObject>> d;
  std::vector<std::vector<DetectedObject>> t;
  for (auto& [frame, objs] : truth) {
    t.push_back(std::move(objs));
    auto it = dets.find(frame);
    d.push_back(it == dets.end() ? std::vector<DetectedObject>{} : std::move(it->second));
  }
  const MapResult m = sph_map(d, t, cfg);
  std::cout << "frames " << t.size() << '\n';
  std::cout << "sph_map " << fmt(m.map) << '\n';
  for (const auto& [c, ap] : m.per_category_ap) {
    std::cout << "ap category " << c << ' ' << fmt(ap) << '\n';
  }
  if (!results_path.empty()) {
    std::ifstream in(results_path);
    if (!in) throw ConfigError("cannot open '" + results_path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    std::map<std::string, std::vector<double>> latencies;
    for (const auto& row : parse_results_csv(ss.str())) latencies[row.method].push_back(row.latency_s);
    for (const auto& [method, v] : latencies) {
      std::cout << "mean_latency_s " << method << ' ' << fmt(mean_e2e_latency(v)) << '\n';
    }
  }
  return 0;
}

int cmd_trace_gen(const std::string& params_path, std::uint64_t seed, const std::string& out) {
  const TraceParams params = params_path.empty() ? TraceParams{} : load_trace_params(params_path);
  const SceneTrace trace = generate_trace(params, seed);
  std::ofstream os(out, std::ios::binary);
  if (!os) throw Error("cannot write '" + out + "'");
  write_trace_jsonl(os, trace.frames);
  std::size_t objects = 0;
  for (const auto& f : trace.frames) objects += f.objects.size();
  std::cout << "wrote " << trace.frames.size() << " frames, " << objects << " objects\n";
  return 0;
}

SphericalBox box_arg(const std::vector<double>& v, std::size_t at) {
  return SphericalBox::from_degrees(v[at], v[at + 1], v[at + 2], v[at + 3]);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"OmniSense 360-degree video analytics simulator"};
  app.require_subcommand(1);

  std::string config, out_dir;
  auto* simulate = app.add_subcommand("simulate", "run an experiment and write results");
  simulate->add_option("--config", config, "experiment JSON")->required()->check(CLI::ExistingFile);
  simulate->add_option("--out", out_dir, "output directory")->required();

  std::string instance;
  bool no_prune = false, all_orders = false;
  auto* plan = app.add_subcommand("plan", "solve one allocation instance");
  plan->add_option("--instance", instance, "instance JSON")->required()->check(CLI::ExistingFile);
  plan->add_flag("--no-prune", no_prune, "disable dominance pruning");
  plan->add_flag("--all-orders", all_orders, "search every processing order (r <= 8)");

  std::string dets_path, truth_path, results_path;
  int categories = 80;
  EvalConfig eval_cfg;
  std::string interpolation = "101-point";
  auto* eval = app.add_subcommand("eval", "Sph-mAP of detections against truth");
  eval->add_option("--dets", dets_path, "detections JSONL")->required()->check(CLI::ExistingFile);
  eval->add_option("--truth", truth_path, "truth JSONL")->required()->check(CLI::ExistingFile);
  eval->add_option("--results", results_path, "results.csv for the latency report");
  eval->add_option("--categories", categories, "category count")->check(CLI::PositiveNumber);
  eval->add_option("--iou", eval_cfg.iou_threshold, "IoU threshold");
  eval->add_option("--interpolation", interpolation, "all-points or 101-point");
  eval->add_flag("--sweep", eval_cfg.sweep, "average over IoU 0.50:0.05:0.95");

  std::string params_path, trace_out;
  std::uint64_t seed = 1;
  auto* trace_gen = app.add_subcommand("trace-gen", "generate a synthetic trace");
  trace_gen->add_option("--params", params_path, "trace parameter JSON (defaults if omitted)")
      ->check(CLI::ExistingFile);
  trace_gen->add_option("--seed", seed, "generator seed");
  trace_gen->add_option("--out", trace_out, "output JSONL")->required();

  auto* geom = app.add_subcommand("geom", "geometry helpers (angles in degrees)");
  geom->require_subcommand(1);
  std::vector<double> nums;
  auto* g_area = geom->add_subcommand("area", "area and NOA of lon lat fov_h fov_v");
  g_area->add_option("box", nums)->expected(4)->required();
  auto* g_iou = geom->add_subcommand("iou", "SphIoU of two boxes (8 numbers)");
  g_iou->add_option("boxes", nums)->expected(8)->required();
  auto* g_project = geom->add_subcommand("project", "gnomonic: center_lon center_lat lon lat");
  g_project->add_option("coords", nums)->expected(4)->required();
  auto* g_unproject = geom->add_subcommand("unproject", "gnomonic inverse: center_lon center_lat x y");
  g_unproject->add_option("coords", nums)->expected(4)->required();
  auto* g_erp = geom->add_subcommand("erp", "ERP pixel to sphere: u v width height");
  g_erp->add_option("pixel", nums)->expected(4)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*simulate) return cmd_simulate(config, out_dir);
    if (*plan) return cmd_plan(instance, no_prune, all_orders);
    if (*eval) {
      eval_cfg.interpolation = parse_ap_interpolation(interpolation);
      return cmd_eval(dets_path, truth_path, results_path, categories, eval_cfg);
    }
    if (*trace_gen) return cmd_trace_gen(params_path, seed, trace_out);
    if (*g_area) {
      const SphericalBox b = box_arg(nums, 0);
      std::cout << "area_sr " << fmt(sph_area(b), 12) << "\nnoa " << fmt(normalized_area(b), 12)
                << '\n';
    } else if (*g_iou) {
      std::cout << "iou " << fmt(sph_iou(box_arg(nums, 0), box_arg(nums, 4)), 12) << '\n';
    } else if (*g_project) {
      const PlanarPoint p = gnomonic_project({deg2rad(nums[0]), deg2rad(nums[1])},
                                             {deg2rad(nums[2]), deg2rad(nums[3])});
      std::cout << "x " << fmt(p.x, 12) << "\ny " << fmt(p.y, 12) << '\n';
    } else if (*g_unproject) {
      const SphericalCoord c =
          gnomonic_unproject({deg2rad(nums[0]), deg2rad(nums[1])}, {nums[2], nums[3]});
      std::cout << "lon " << fmt(rad2deg(c.lon), 12) << "\nlat " << fmt(rad2deg(c.lat), 12)
                << '\n';
    } else if (*g_erp) {
      const SphericalCoord c = erp_to_sph(nums[0], nums[1], static_cast<int>(nums[2]),
                                          static_cast<int>(nums[3]));
      std::cout << "lon " << fmt(rad2deg(c.lon), 12) << "\nlat " << fmt(rad2deg(c.lat), 12)
                << '\n';
    }
    return 0;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
}
