// Copyright 2026 The elnet Authors
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


// Drives the elnet binary end to end.

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "elnet/io.hpp"
#include "json.hpp"

namespace elnet {
namespace {

namespace fs = std::filesystem;

struct Outcome {
  int code = -1;
  std::string out, err;
};

fs::path scratch() {
  static const fs::path dir = [] {
    const fs::path d = fs::temp_directory_path() / ("elnet_cli_test_" + std::to_string(::getpid()));
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

Outcome elnet(const std::string& args) {
  const fs::path o = scratch() / "stdout.txt", e = scratch() / "stderr.txt";
  const std::string cmd = std::string(ELNET_CLI_PATH) + " " + args + " >" + o.string() + " 2>" +
                          e.string();
  const int status = std::system(cmd.c_str());
  Outcome r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = read_text(o.string());
  r.err = read_text(e.string());
  return r;
}

std::string fixture(const std::string& name) {
  return (fs::path(ELNET_FIXTURE_DIR) / (name + ".json")).string();
}

bool contains(const std::string& s, const std::string& what) {
  return s.find(what) != std::string::npos;
}

// Column `name` of a diagnostics CSV.
std::vector<double> column(const std::string& csv, const std::string& name) {
  std::istringstream in(csv);
  std::string line, cell;
  std::getline(in, line);
  std::istringstream h(line);
  int idx = -1;
  for (int i = 0; std::getline(h, cell, ','); ++i)
    if (cell == name) idx = i;
  std::vector<double> out;
  if (idx < 0) return out;
  while (std::getline(in, line)) {
    std::istringstream r(line);
    for (int i = 0; std::getline(r, cell, ','); ++i)
      if (i == idx) out.push_back(std::stod(cell));
  }
  return out;
}

TEST(Check, EquilibriumPasses) {
  const Outcome r = elnet("check " + fixture("triod_equilibrium"));
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(contains(r.out, "PASS (NC) span dimension 2"));
  EXPECT_TRUE(contains(r.out, "parabolicity margin"));
  EXPECT_FALSE(contains(r.out, "FAIL"));
}

TEST(Check, AllCompatibleFixturesPass) {
  for (const char* name : {"triod_bent", "q4_spatial", "clamped_arc"})
    EXPECT_EQ(elnet(std::string("check ") + fixture(name)).code, 0) << name;
  EXPECT_EQ(elnet("check --order1 " + fixture("clamped_arc")).code, 0);
}

TEST(Check, Order1FlagsTheBentTriodRate) {
  // The bent spokes are built for the order-zero conditions only.
  const Outcome r = elnet("check --order1 " + fixture("triod_bent"));
  EXPECT_EQ(r.code, 1);
  EXPECT_TRUE(contains(r.out, "FAIL junction_sum_rate"));
}

TEST(Check, CollinearFlagsNc) {
  const Outcome r = elnet("check " + fixture("collinear_bad"));
  EXPECT_EQ(r.code, 1);
  EXPECT_TRUE(contains(r.out, "FAIL (NC)"));
  EXPECT_TRUE(contains(r.err, "(NC)"));
}

TEST(Check, CompatwoNamesThePair) {
  const Outcome r = elnet("check " + fixture("compatwo_bad"));
  EXPECT_EQ(r.code, 1);
  EXPECT_TRUE(contains(r.out, "FAIL compatwo curve 1,2 x=0"));
  EXPECT_TRUE(contains(r.err, "curve 1 and curve 2"));
}

TEST(Check, JsonReportParses) {
  const Outcome r = elnet("check --json " + fixture("collinear_bad"));
  EXPECT_EQ(r.code, 1);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_FALSE(j["nc_ok"].get<bool>());
  EXPECT_EQ(j["span_dimension"].get<int>(), 1);
}

TEST(Check, IoAndParseFailuresExitThree) {
  EXPECT_EQ(elnet("check /nonexistent/net.json").code, 3);
  const fs::path bad = scratch() / "bad.json";
  write_text(bad.string(), "{\n\"n\": 2,\n\"q\": 3,,\n}\n");
  const Outcome r = elnet("check " + bad.string());
  EXPECT_EQ(r.code, 3);
  EXPECT_TRUE(contains(r.err, "line 3")) << r.err;
}

TEST(Usage, BadArgumentsExitOne) {
  EXPECT_EQ(elnet("").code, 1);
  EXPECT_EQ(elnet("frobnicate").code, 1);
  EXPECT_EQ(elnet("simulate " + fixture("triod_bent") + " --stride 0").code, 1);
  EXPECT_EQ(elnet("simulate " + fixture("triod_bent") + " --strict --warn").code, 1);
  EXPECT_EQ(elnet("convergence --mode sideways").code, 1);
}

TEST(Simulate, EquilibriumEnergyConstant) {
  const fs::path out = scratch() / "eq";
  const Outcome r = elnet("simulate " + fixture("triod_equilibrium") + " --dt 1e-5 --t-end 0.01 --stride 250 --out " +
                      out.string());
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(contains(r.out, "steps 1000"));
  const auto e = column(read_text((out / "diagnostics.csv").string()), "energy_total");
  ASSERT_EQ(e.size(), 1001u);
  EXPECT_LE(*std::max_element(e.begin(), e.end()) - *std::min_element(e.begin(), e.end()), 1e-8);
  const TrajectoryFile t = parse_trajectory(read_text((out / "trajectory.json").string()));
  EXPECT_EQ(t.snapshots.size(), 5u);
  EXPECT_EQ(t.snapshots.back().step, 1000);
}

TEST(Simulate, PerturbedEnergyNonIncreasingAndDeterministic) {
  const fs::path a = scratch() / "bent_a", b = scratch() / "bent_b";
  const std::string args = "simulate " + fixture("triod_bent") + " --dt 1e-5 --t-end 2e-3 --stride 50 --svg --out ";
  ASSERT_EQ(elnet(args + a.string()).code, 0);
  ASSERT_EQ(elnet(args + b.string()).code, 0);
  const std::string csv = read_text((a / "diagnostics.csv").string());
  const auto e = column(csv, "energy_total");
  ASSERT_EQ(e.size(), 201u);
  for (std::size_t k = 1; k < e.size(); ++k) EXPECT_LE(e[k], e[k - 1] + 1e-8 * (1 + e[0]));
  EXPECT_LT(e.back(), e.front());
  EXPECT_EQ(csv, read_text((b / "diagnostics.csv").string()));
  EXPECT_EQ(read_text((a / "trajectory.json").string()), read_text((b / "trajectory.json").string()));
  EXPECT_TRUE(fs::exists(a / "frames" / "frame_000000.svg"));
  EXPECT_TRUE(fs::exists(a / "frames" / "frame_000200.svg"));
  EXPECT_EQ(read_text((a / "frames" / "frame_000100.svg").string()),
            read_text((b / "frames" / "frame_000100.svg").string()));
}

TEST(Simulate, ConfigFileAndOverrides) {
  const fs::path cfg = scratch() / "run.json", out = scratch() / "cfg";
  write_text(cfg.string(), R"({"solver": {"dt": 1e-5, "t_end": 1e-4, "snapshot_stride": 5},
                              "output": {"dir": "ignored", "csv": false}})");
  const Outcome r = elnet("simulate " + fixture("triod_bent") + " --config " + cfg.string() +
                      " --t-end 5e-5 --out " + out.string());
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(contains(r.out, "steps 5 "));
  EXPECT_FALSE(fs::exists(out / "diagnostics.csv"));
  EXPECT_TRUE(fs::exists(out / "trajectory.json"));
  write_text(cfg.string(), R"({"solver": {"dt": "small"}})");
  EXPECT_EQ(elnet("simulate " + fixture("triod_bent") + " --config " + cfg.string()).code, 3);
}

TEST(Simulate, SvgRejectedForSpatialNetwork) {
  const Outcome r = elnet("simulate " + fixture("q4_spatial") + " --svg --out " + (scratch() / "q4").string());
  EXPECT_EQ(r.code, 1);
  EXPECT_TRUE(contains(r.err, "n = 2"));
  EXPECT_TRUE(contains(r.err, "n = 3"));
  EXPECT_FALSE(fs::exists(scratch() / "q4"));
}

TEST(Simulate, StrictRejectsCollinearBeforeAnyStep) {
  const fs::path out = scratch() / "collinear";
  const Outcome r = elnet("simulate " + fixture("collinear_bad") + " --strict --out " + out.string());
  EXPECT_EQ(r.code, 1);
  EXPECT_TRUE(contains(r.err, "(NC)"));
  EXPECT_FALSE(fs::exists(out));
}

TEST(Simulate, WarnModeRunsIntoSolverFailure) {
  const fs::path out = scratch() / "collinear_warn";
  const Outcome r = elnet("simulate " + fixture("collinear_bad") + " --warn --out " + out.string());
  EXPECT_EQ(r.code, 2);
  EXPECT_TRUE(contains(r.err, "warning: preflight failed"));
  EXPECT_TRUE(contains(r.err, "t = 0"));
  EXPECT_TRUE(fs::exists(out / "trajectory.json"));
}

TEST(Simulate, GuardFailureFlushesLastGoodState) {
  const fs::path cfg = scratch() / "guard.json", out = scratch() / "guard";
  write_text(cfg.string(), R"({"solver": {"dt": 1e-5, "t_end": 5e-3, "delta_guard_factor": 0.98}})");
  const Outcome r = elnet("simulate " + fixture("triod_bent") + " --config " + cfg.string() +
                      " --stride 1000 --out " + out.string());
  EXPECT_EQ(r.code, 2);
  EXPECT_TRUE(contains(r.err, "regularity guard"));
  EXPECT_TRUE(contains(r.err, "last good state"));
  const TrajectoryFile t = parse_trajectory(read_text((out / "trajectory.json").string()));
  ASSERT_EQ(t.snapshots.size(), 2u);
  EXPECT_EQ(t.snapshots.back().step, 3);
  EXPECT_NEAR(t.snapshots.back().state.time, 3e-5, 1e-18);
}

TEST(Convergence, SmallSpatialStudyIsDeterministic) {
  const fs::path a = scratch() / "conv_a.json", b = scratch() / "conv_b.json";
  const std::string args = "convergence --levels 16,32 --reference 64 --dt 1e-5 --t-end 1e-4 --out ";
  const Outcome r = elnet(args + a.string());
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(contains(r.out, "mode space"));
  EXPECT_TRUE(contains(r.out, "fitted order"));
  ASSERT_EQ(elnet(args + b.string()).code, 0);
  EXPECT_EQ(read_text(a.string()), read_text(b.string()));
  const auto j = nlohmann::json::parse(read_text(a.string()));
  EXPECT_EQ(j["levels"].size(), 2u);
}

TEST(Convergence, NetworkFileAndErrors) {
  const Outcome r = elnet("convergence --network " + fixture("clamped_arc") +
                      " --levels 16,32 --reference 64 --t-end 1e-4");
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(elnet("convergence --scenario nosuch").code, 1);
  EXPECT_EQ(elnet("convergence --levels 32,16 --reference 64").code, 1);
}

TEST(Equivalence, SameFilePassesOtherFails) {
  const fs::path eq = scratch() / "eqv_eq", bent = scratch() / "eqv_bent";
  const std::string opts = " --dt 1e-5 --t-end 2e-4 --out ";
  ASSERT_EQ(elnet("simulate " + fixture("triod_equilibrium") + opts + eq.string()).code, 0);
  ASSERT_EQ(elnet("simulate " + fixture("triod_bent") + opts + bent.string()).code, 0);
  const std::string ta = (bent / "trajectory.json").string();
  const fs::path report = scratch() / "eqv.json";
  Outcome r = elnet("equivalence --a " + ta + " --b " + ta + " --out " + report.string());
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(contains(r.out, "PASS deviation 0 "));
  EXPECT_EQ(nlohmann::json::parse(read_text(report.string()))["diffeomorphisms"].size(), 3u);
  r = elnet("equivalence --a " + ta + " --b " + (eq / "trajectory.json").string());
  EXPECT_EQ(r.code, 1);
  EXPECT_TRUE(contains(r.out, "FAIL deviation"));
  EXPECT_EQ(elnet("equivalence --a " + ta + " --b /nonexistent.json").code, 3);
}

}  // namespace
}  // namespace elnet
