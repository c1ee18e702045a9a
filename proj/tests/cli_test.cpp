// Copyright 2026 The twinbeam Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "twinbeam/cli.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

const std::string config_dir = TWINBEAM_CONFIG_DIR;

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "twinbeam");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = twinbeam::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path scratch_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("twinbeam_cli_test_" + name);
  std::filesystem::remove_all(dir);
  return dir;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST(cli, simulate_spectrum_writes_traces) {
  const auto dir = scratch_dir("spectrum");
  const auto r = run_cli({"simulate-spectrum", "--config", config_dir + "/paper.cfg", "--out", dir.string()});
  EXPECT_EQ(r.code, 0) << r.err;
  for (const char* name : {"probe.csv", "conjugate.csv", "difference.csv", "snl.csv", "summary.json",
                           "manifest.json"}) {
    EXPECT_TRUE(std::filesystem::exists(dir / name)) << name;
  }
  EXPECT_NE(r.err.find("config_hash "), std::string::npos);
  EXPECT_NE(r.err.find("seed 20190807"), std::string::npos);
  std::filesystem::remove_all(dir);
}

TEST(cli, seed_override_is_recorded) {
  const auto dir = scratch_dir("seed");
  const auto r = run_cli({"simulate-audio", "--config", config_dir + "/paper.cfg", "--out", dir.string(),
                          "--seed", "17"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto summary = twinbeam::ordered_json::parse(read_file(dir / "summary.json"));
  EXPECT_EQ(summary["seed"], 17);
  EXPECT_NE(r.err.find("seed 17"), std::string::npos);
  std::filesystem::remove_all(dir);
}

TEST(cli, repeated_runs_are_identical) {
  const auto a = scratch_dir("rep_a");
  const auto b = scratch_dir("rep_b");
  ASSERT_EQ(run_cli({"sweep-angle", "--config", config_dir + "/paper.cfg", "--out", a.string()}).code, 0);
  ASSERT_EQ(run_cli({"sweep-angle", "--config", config_dir + "/paper.cfg", "--out", b.string()}).code, 0);
  EXPECT_EQ(read_file(a / "manifest.json"), read_file(b / "manifest.json"));
  std::filesystem::remove_all(a);
  std::filesystem::remove_all(b);
}

TEST(cli, validate_config_reports_the_key) {
  const auto good = run_cli({"validate-config", "--config", config_dir + "/paper.cfg"});
  EXPECT_EQ(good.code, 0);
  const auto bad = run_cli({"validate-config", "--config", config_dir + "/bad_transmission.cfg"});
  EXPECT_EQ(bad.code, 1);
  EXPECT_NE(bad.err.find("losses.polarizer_transmission"), std::string::npos) << bad.err;
}

TEST(cli, design_etalons_feasible_and_infeasible) {
  const auto dir = scratch_dir("design");
  const auto ok = run_cli({"design-etalons", "--config", config_dir + "/paper.cfg", "--min-extinction-db", "40",
                           "--out", dir.string()});
  EXPECT_EQ(ok.code, 0) << ok.err;
  const auto report = twinbeam::ordered_json::parse(read_file(dir / "etalon_design.json"));
  EXPECT_TRUE(report["feasible"].get<bool>());
  EXPECT_GE(report["report"]["transmission"].get<double>(), 0.85);
  const auto too_much = run_cli({"design-etalons", "--config", config_dir + "/paper.cfg",
                                 "--min-extinction-db", "200", "--out", dir.string()});
  EXPECT_EQ(too_much.code, 2);
  EXPECT_NE(too_much.err.find("infeasible"), std::string::npos);
  std::filesystem::remove_all(dir);
}

TEST(cli, usage_errors) {
  EXPECT_EQ(run_cli({}).code, 1);
  EXPECT_EQ(run_cli({"simulate-spectrum", "--config", config_dir + "/paper.cfg", "--out", "x", "--bogus"}).code,
            1);
  EXPECT_EQ(run_cli({"simulate-spectrum", "-c", config_dir + "/paper.cfg"}).code, 1);
  EXPECT_EQ(run_cli({"simulate-spectrum", "validate-config", "--config", "a"}).code, 1);
}

TEST(cli, io_errors_exit_3) {
  EXPECT_EQ(run_cli({"validate-config", "--config", config_dir + "/missing.cfg"}).code, 3);
}

TEST(cli, help_mentions_schema_version) {
  const auto r = run_cli({"simulate-spectrum", "--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE((r.out + r.err).find("schema_version 1"), std::string::npos);
}
