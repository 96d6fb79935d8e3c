// Copyright 2026 The mbloch Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "mbloch/io.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct RunResult {
  int rc = -1;
  std::string out;
};

RunResult run(const std::string& args) {
  const std::string cmd = std::string(MBLOCH_CLI_PATH) + " " + args + " 2>/dev/null";
  RunResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return r;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.rc = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

class Cli : public ::testing::Test {
protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("mbloch_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  std::vector<mbloch::io::CsvRow> read(const std::string& name) const {
    std::ifstream is(path(name));
    return mbloch::io::read_csv(is);
  }

private:
  fs::path dir_;
};

} // namespace

TEST_F(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(run("").rc, 2);
  EXPECT_EQ(run("simulate --dt=-1").rc, 2);
  EXPECT_EQ(run("simulate --no-such-flag 1").rc, 2);
  EXPECT_EQ(run("simulate --method euler").rc, 2);
  EXPECT_EQ(run("homoclinic --c -1").rc, 2);
  EXPECT_EQ(run("homoclinic --c 0").rc, 2);
  EXPECT_EQ(run("homoclinic --sign x").rc, 2);
  EXPECT_EQ(run("periodic --x2 0").rc, 2);
  EXPECT_EQ(run("rank --point 1,2,3").rc, 2);
  EXPECT_EQ(run("rank --point 1,2,3,4,nan").rc, 2);
  EXPECT_EQ(run("invariant-probe --m1 1,1,0").rc, 2);
  EXPECT_EQ(run("classify").rc, 2);
  EXPECT_EQ(run("verify --level slow").rc, 2);
}

TEST_F(Cli, HelpExitsZero) {
  const RunResult r = run("--help");
  EXPECT_EQ(r.rc, 0);
  EXPECT_NE(r.out.find("simulate"), std::string::npos);
}

TEST_F(Cli, SimulateEquilibriumIsConstant) {
  const RunResult r = run("simulate --z -1 --t-end 2 --method rk4 --dt 0.01 --out " + path("eq.csv"));
  ASSERT_EQ(r.rc, 0);
  const json j = json::parse(r.out);
  EXPECT_EQ(j["status"], "ok");
  EXPECT_EQ(j["drift"]["max_abs_dH"].get<double>(), 0.0);
  const auto rows = read("eq.csv");
  ASSERT_EQ(rows.size(), 201u);
  EXPECT_EQ(rows.back().t, 2.0);
  for (const auto& row : rows) EXPECT_EQ(row.state, (mbloch::State5{0, 0, 0, 0, -1}));
}

TEST_F(Cli, SimulateEquilibriumDefaultsToRk45) {
  const RunResult r = run("simulate --z -1 --t-end 10 --out " + path("eq10.csv"));
  ASSERT_EQ(r.rc, 0);
  const json j = json::parse(r.out);
  EXPECT_EQ(j["drift"]["max_abs_dH"].get<double>(), 0.0);
  EXPECT_EQ(j["drift"]["max_abs_dI"].get<double>(), 0.0);
  EXPECT_EQ(j["drift"]["max_abs_dC"].get<double>(), 0.0);
  const auto rows = read("eq10.csv");
  ASSERT_FALSE(rows.empty());
  EXPECT_EQ(rows.back().t, 10.0);
  for (const auto& row : rows) EXPECT_EQ(row.state, (mbloch::State5{0, 0, 0, 0, -1}));
}

TEST_F(Cli, SimulateHomoclinicStartConservesInvariants) {
  const RunResult r = run("simulate --x1 2 --z -1 --method rk45 --tol 1e-10 --t-end 3 --out " + path("h.csv"));
  ASSERT_EQ(r.rc, 0);
  const json j = json::parse(r.out);
  for (const char* k : {"max_abs_dH", "max_abs_dI", "max_abs_dC"}) {
    EXPECT_LT(j["drift"][k].get<double>(), 1e-9) << k;
  }
  const auto rows = read("h.csv");
  ASSERT_GT(rows.size(), 2u);
  EXPECT_EQ(rows.front().state, (mbloch::State5{2, 0, 0, 0, -1}));
}

TEST_F(Cli, SimulateOverflowExitsOneWithPartialCsv) {
  const RunResult r = run("simulate --x1 1e200 --z 1e200 --out " + path("bad.csv"));
  EXPECT_EQ(r.rc, 1);
  const json j = json::parse(r.out);
  EXPECT_EQ(j["status"], "error");
  EXPECT_EQ(j["error"]["kind"], "overflow");
  EXPECT_EQ(read("bad.csv").size(), 1u);
}

TEST_F(Cli, NegativeValuesParse) {
  const RunResult r = run("simulate --x1 -0.5 --y2 -1e-3 --t-end 0.1");
  EXPECT_EQ(r.rc, 0);
  const RunResult h = run("homoclinic --sign - --c 2 --t-min -1 --t-max 1 --dt 0.5 --out " + path("m.csv"));
  ASSERT_EQ(h.rc, 0);
  const auto rows = read("m.csv");
  ASSERT_EQ(rows.size(), 5u);
  EXPECT_LT(rows[2].state.x1, 0.0);
}

TEST_F(Cli, ClassifyKinds) {
  const json pos = json::parse(run("classify --c 1").out);
  EXPECT_EQ(pos["kind"], "focus-focus");
  EXPECT_EQ(pos["stable"], "unstable");
  const json neg = json::parse(run("classify --c -1").out);
  EXPECT_EQ(neg["kind"], "center-center");
  EXPECT_EQ(neg["stable"], "stable");
  const RunResult zero = run("classify --c 0");
  ASSERT_EQ(zero.rc, 0);
  const json z = json::parse(zero.out);
  EXPECT_EQ(z["kind"], "degenerate");
  EXPECT_EQ(z["stable"], "stable");
  EXPECT_TRUE(z["certificate"]["unique_solution"].get<bool>());
}

TEST_F(Cli, HomoclinicTable) {
  const RunResult r = run("homoclinic --c 1 --theta0 0 --sign + --out " + path("h.csv"));
  ASSERT_EQ(r.rc, 0);
  const json j = json::parse(r.out);
  EXPECT_TRUE(j["passed"].get<bool>());
  const auto rows = read("h.csv");
  ASSERT_FALSE(rows.empty());
  EXPECT_EQ(rows.front().t, -10.0);
  for (const auto& row : rows) {
    EXPECT_NEAR(row.conserved.H, 0.5, 1e-12);
    EXPECT_NEAR(row.conserved.C, 1.0, 1e-12);
  }
}

TEST_F(Cli, PeriodicTable) {
  const RunResult r = run("periodic --x1 1 --y1 1 --x2 1 --out " + path("p.csv"));
  ASSERT_EQ(r.rc, 0);
  const json j = json::parse(r.out);
  EXPECT_TRUE(j["passed"].get<bool>());
  EXPECT_EQ(j["omega"].get<double>(), 1.0);
  const auto rows = read("p.csv");
  ASSERT_FALSE(rows.empty());
  EXPECT_EQ(rows.front().state, (mbloch::State5{1, 1, 1, -1, -1}));
  for (const auto& row : rows) EXPECT_EQ(row.state.z, -1.0);
}

TEST_F(Cli, RankReports) {
  EXPECT_EQ(json::parse(run("rank --point 1,2,3,4,5").out)["rank"], 3);
  const json m1 = json::parse(run("rank --point 1,1,1,-1,-1").out);
  EXPECT_EQ(m1["rank"], 2);
  EXPECT_TRUE(m1["in_M1"].get<bool>());
  EXPECT_EQ(json::parse(run("rank --point 0,0,0,0,-1").out)["rank"], 1);
}

TEST_F(Cli, InvariantProbe) {
  const RunResult r = run("invariant-probe --m1 0,1,1 --t-end 20");
  ASSERT_EQ(r.rc, 0);
  const json j = json::parse(r.out);
  EXPECT_EQ(j["puncture_count"], 6);
  EXPECT_EQ(j["predicted_punctures"], 6);
  EXPECT_LT(j["max_distance_to_union"].get<double>(), 1e-6);
}

TEST_F(Cli, VerifyLevels) {
  EXPECT_EQ(run("verify --seed 42 --level quick").rc, 0);
  const RunResult full = run("verify --seed 42 --level full");
  ASSERT_EQ(full.rc, 0);
  EXPECT_EQ(json::parse(full.out)["level"], "full");
}

TEST_F(Cli, VerifyIsDeterministic) {
  const RunResult a = run("verify --level quick --seed 7");
  const RunResult b = run("verify --level quick --seed 7");
  ASSERT_EQ(a.rc, 0);
  EXPECT_EQ(a.out, b.out);
  const json j = json::parse(a.out);
  EXPECT_TRUE(j["passed"].get<bool>());
  EXPECT_EQ(j["seed"], 7);
  EXPECT_GE(j["checks"].size(), 20u);
}
