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


// Runs the omnisense binary end to end.

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>
#include "omnisense/instance_io.h"
#include "omnisense/trace.h"
#include "support/fixtures.h"

namespace omnisense {
namespace {

namespace fs = std::filesystem;

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run(const std::string& args) {
  const std::string cmd = std::string(OMNISENSE_CLI_PATH) + " " + args + " 2>&1";
  RunResult r;
  FILE* p = popen(cmd.c_str(), "r");
  if (p == nullptr) return r;
  char buf[4096];
  while (std::fgets(buf, sizeof(buf), p) != nullptr) r.out += buf;
  const int status = pclose(p);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("omnisense_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  void write(const std::string& name, const std::string& text) {
    std::ofstream(dir_ / name, std::ios::binary) << text;
  }
  fs::path dir_;
};

TEST_F(CliTest, PlanMatchesLibrary) {
  const AllocInstance inst = testing::random_instance(4, 5, 0.8, 2024);
  write("inst.json", serialize_instance(inst, 11));
  const RunResult r = run("plan --instance " + (dir_ / "inst.json").string());
  ASSERT_EQ(r.exit_code, 0) << r.out;
  const ExecutionPlan cli = parse_plan(r.out);
  const ExecutionPlan lib = solve(inst, 11);
  EXPECT_EQ(cli.estimated_accuracy, lib.estimated_accuracy);
  EXPECT_EQ(cli.assignment, lib.assignment);

  const RunResult all = run("plan --all-orders --instance " + (dir_ / "inst.json").string());
  ASSERT_EQ(all.exit_code, 0) << all.out;
  EXPECT_GE(parse_plan(all.out).estimated_accuracy, lib.estimated_accuracy);
}

TEST_F(CliTest, SimulateIsByteIdentical) {
  write("exp.json", R"({"version": 1, "trace_params": {"num_frames": 12}, "trace_seed": 4,
                        "methods": ["omnisense", "erp:3", "cubemap:2"], "budget_s": 1.0})");
  const std::string cfg = (dir_ / "exp.json").string();
  ASSERT_EQ(run("simulate --config " + cfg + " --out " + (dir_ / "a").string()).exit_code, 0);
  ASSERT_EQ(run("simulate --config " + cfg + " --out " + (dir_ / "b").string()).exit_code, 0);
  int files = 0;
  for (const auto& e : fs::directory_iterator(dir_ / "a")) {
    EXPECT_EQ(slurp(e.path()), slurp(dir_ / "b" / e.path().filename())) << e.path();
    ++files;
  }
  EXPECT_EQ(files, 5);
}

TEST_F(CliTest, EvalPerfectDetections) {
  const std::string truth = (dir_ / "truth.jsonl").string();
  ASSERT_EQ(run("trace-gen --seed 3 --out " + truth).exit_code, 0);
  const RunResult r = run("eval --dets " + truth + " --truth " + truth);
  ASSERT_EQ(r.exit_code, 0) << r.out;
  EXPECT_NE(r.out.find("sph_map 1\n"), std::string::npos) << r.out;
}

TEST_F(CliTest, MalformedConfigNamesField) {
  write("bad.json", R"({"version": 1, "budget_s": -2})");
  const RunResult r = run("simulate --config " + (dir_ / "bad.json").string() + " --out " +
                          (dir_ / "o").string());
  EXPECT_EQ(r.exit_code, 2);
  EXPECT_NE(r.out.find("budget_s"), std::string::npos) << r.out;

  write("bad_inst.json", R"({"budget_s": 1, "models": ["skip", "a"],
                            "srois": [{"A": [0, "x"], "dP": [0, 1], "dI": [0, 1]}]})");
  const RunResult p = run("plan --instance " + (dir_ / "bad_inst.json").string());
  EXPECT_EQ(p.exit_code, 2);
  EXPECT_NE(p.out.find("srois[0].A[1]"), std::string::npos) << p.out;
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(run("").exit_code, 2);
  EXPECT_EQ(run("plan").exit_code, 2);
  EXPECT_EQ(run("--help").exit_code, 0);
}

TEST_F(CliTest, GeometryHelpers) {
  const RunResult a = run("geom area 0 0 360 180");
  ASSERT_EQ(a.exit_code, 0);
  EXPECT_NE(a.out.find("noa 1\n"), std::string::npos) << a.out;
  const RunResult p = run("geom project 0 0 10 0");
  EXPECT_NE(p.out.find("x 0.176326980708"), std::string::npos) << p.out;
  const RunResult bad = run("geom project 0 0 90 0");
  EXPECT_EQ(bad.exit_code, 3);
}

}  // namespace
}  // namespace omnisense
