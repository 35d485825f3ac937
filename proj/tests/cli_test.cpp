// Copyright 2026 The ChiralForge Authors
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

// End-to-end tests of the command layer: exit codes, report files,
// determinism, and the on-disk mode cache.  In-process tests drive
// cli::run() directly; a few subprocess tests exercise the built binary's
// argument parsing (path injected as CHIRALFORGE_BIN).

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>
#include <json.hpp>

#include "chiralforge/cli/run.hpp"

namespace fs = std::filesystem;
using chiralforge::cli::RunConfig;
using chiralforge::cli::run;
using nlohmann::json;

namespace {

// Fresh scratch directory per test, removed on teardown.
class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("chiralforge-cli-" +
            std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
            "-" + ::testing::UnitTest::GetInstance()
                      ->current_test_info()
                      ->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& leaf) const {
    return (dir_ / leaf).string();
  }

  static std::string slurp(const std::string& p) {
    std::ifstream in(p);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  static json report_at(const std::string& p) {
    return json::parse(slurp(p));
  }

  fs::path dir_;
};

RunConfig braiding_config() {
  RunConfig cfg;
  cfg.command = "verify";
  cfg.suite = "braiding";
  cfg.alpha = chiralforge::exact::Rational(1);
  cfg.beta = chiralforge::exact::Rational(1);
  cfg.beta_set = true;
  cfg.cutoff = 4;
  return cfg;
}

TEST_F(CliTest, BraidingPassesWithZeroWorstViolation) {
  RunConfig cfg = braiding_config();
  cfg.out_path = path("report.json");
  EXPECT_EQ(run(cfg), 0);
  const json r = report_at(cfg.out_path);
  EXPECT_EQ(r.at("status"), "pass");
  EXPECT_EQ(r.at("worst_violation"), "0");
  EXPECT_EQ(r.at("suite"), "braiding");
  EXPECT_EQ(r.at("schema_version"), "1");
  EXPECT_GT(r.at("comparisons").get<long>(), 0);
}

TEST_F(CliTest, MutationFailsWithExitOne) {
  RunConfig cfg = braiding_config();
  cfg.mutate = "eplus-sign";
  cfg.out_path = path("report.json");
  EXPECT_EQ(run(cfg), 1);
  const json r = report_at(cfg.out_path);
  EXPECT_EQ(r.at("status"), "fail");
  EXPECT_NE(r.at("worst_violation"), "0");
}

TEST_F(CliTest, UnknownMutationIsUsageError) {
  RunConfig cfg = braiding_config();
  cfg.mutate = "not-a-mutation";
  EXPECT_EQ(run(cfg), 2);
}

TEST_F(CliTest, MissingSectorSpecIsUsageError) {
  RunConfig cfg;
  cfg.command = "sectors";
  cfg.suite = "check-1d";
  EXPECT_EQ(run(cfg), 2);
}

TEST_F(CliTest, SectorSuitesRunFromSpecFiles) {
  RunConfig cfg;
  cfg.command = "sectors";
  cfg.suite = "check-2d";
  cfg.spec_path = std::string(CHIRALFORGE_DATA_DIR) + "/u1_conjugate.json";
  cfg.out_path = path("r2d.json");
  EXPECT_EQ(run(cfg), 0);
  EXPECT_EQ(report_at(cfg.out_path).at("suite"), "sectors-2d-extension");

  cfg.suite = "check-1d";
  cfg.spec_path = std::string(CHIRALFORGE_DATA_DIR) + "/even_lattice_z.json";
  cfg.out_path = path("r1d.json");
  EXPECT_EQ(run(cfg), 0);

  cfg.suite = "lr";
  cfg.spec_path = std::string(CHIRALFORGE_DATA_DIR) + "/even_lattice_z2.json";
  cfg.out_path = path("rlr.json");
  EXPECT_EQ(run(cfg), 0);
  cfg.mutate = "single-leg-eps";
  EXPECT_EQ(run(cfg), 1);
  cfg.mutate.clear();

  cfg.suite = "shift-fields";
  cfg.spec_path = std::string(CHIRALFORGE_DATA_DIR) + "/even_lattice_z.json";
  cfg.out_path = path("rshift.json");
  cfg.m_range = 6;
  EXPECT_EQ(run(cfg), 0);
  const json r = report_at(cfg.out_path);
  EXPECT_EQ(r.at("suite"), "sectors-shift-fields");
  EXPECT_EQ(r.at("details").at("intertwiner").at("status"), "pass");
}

TEST_F(CliTest, MalformedSpecFileIsUsageError) {
  const std::string bad = path("bad.json");
  std::ofstream(bad) << "{ not json";
  RunConfig cfg;
  cfg.command = "sectors";
  cfg.suite = "check-1d";
  cfg.spec_path = bad;
  EXPECT_EQ(run(cfg), 2);
}

TEST_F(CliTest, TwodimSuitesRun) {
  RunConfig cfg;
  cfg.command = "twodim";
  cfg.suite = "locality";
  cfg.alpha = chiralforge::exact::Rational(1);
  cfg.cutoff = 2;
  cfg.samples = 200;
  cfg.out_path = path("loc.json");
  EXPECT_EQ(run(cfg), 0);
  EXPECT_EQ(report_at(cfg.out_path).at("suite"), "twodim-locality");

  cfg.suite = "smear";
  cfg.cutoff = 4;
  cfg.out_path = path("smear.json");
  EXPECT_EQ(run(cfg), 0);
  const json sm = report_at(cfg.out_path);
  EXPECT_EQ(sm.at("suite"), "twodim-smear");
  EXPECT_GT(sm.at("details").at("left").at("total_const").get<double>(), 0.0);

  cfg.suite = "commutator-decay";
  cfg.cutoffs = {4, 6};
  cfg.out_path = path("decay.json");
  EXPECT_EQ(run(cfg), 0);
  const json d = report_at(cfg.out_path);
  EXPECT_TRUE(d.at("details").at("spacelike").get<bool>());
  EXPECT_TRUE(d.at("details").at("strictly_decreasing").get<bool>());
}

TEST_F(CliTest, BadConfigurationsAreUsageErrors) {
  RunConfig cfg;
  cfg.command = "twodim";
  cfg.suite = "no-such-suite";
  EXPECT_EQ(run(cfg), 2);

  cfg.command = "verify";
  cfg.suite = "heisenberg";
  cfg.tol = 0.0;
  EXPECT_EQ(run(cfg), 2);

  cfg.suite = "braiding";
  cfg.tol = 1e-9;
  cfg.jobs = 0;
  EXPECT_EQ(run(cfg), 2);
}

TEST_F(CliTest, ReportsAreDeterministicUpToElapsed) {
  auto normalized = [](const std::string& p) {
    json r = json::parse(CliTest::slurp(p));
    r.erase("elapsed_s");
    return r.dump(2);
  };
  RunConfig cfg = braiding_config();
  cfg.seed = 7;
  cfg.out_path = path("a.json");
  ASSERT_EQ(run(cfg), 0);
  cfg.out_path = path("b.json");
  ASSERT_EQ(run(cfg), 0);
  EXPECT_EQ(normalized(path("a.json")), normalized(path("b.json")));

  // Randomized sector sampling is seed-pinned too.
  RunConfig sec;
  sec.command = "sectors";
  sec.suite = "check-1d";
  sec.spec_path = std::string(CHIRALFORGE_DATA_DIR) + "/even_lattice_z.json";
  sec.seed = 42;
  sec.out_path = path("s1.json");
  ASSERT_EQ(run(sec), 0);
  sec.out_path = path("s2.json");
  ASSERT_EQ(run(sec), 0);
  EXPECT_EQ(normalized(path("s1.json")), normalized(path("s2.json")));
}

TEST_F(CliTest, DiskCacheColdWarmAndCorrupt) {
  const std::string cache = path("cache");
  RunConfig cfg = braiding_config();
  cfg.cache_dir = cache;
  cfg.out_path = path("cold.json");
  ASSERT_EQ(run(cfg), 0);

  // Cold run populated the cache with mode files.
  std::size_t files = 0;
  for (const auto& e : fs::directory_iterator(cache)) {
    EXPECT_EQ(e.path().extension(), ".json");
    ++files;
  }
  ASSERT_GT(files, 0u);

  // Warm run: same result from cached modes.
  cfg.out_path = path("warm.json");
  ASSERT_EQ(run(cfg), 0);
  json cold = report_at(path("cold.json"));
  json warm = report_at(path("warm.json"));
  cold.erase("elapsed_s");
  warm.erase("elapsed_s");
  EXPECT_EQ(cold.dump(), warm.dump());

  // Corrupt every cache entry: the run must rebuild and still pass.
  for (const auto& e : fs::directory_iterator(cache)) {
    std::ofstream(e.path()) << "{ \"garbage\": true";
  }
  cfg.out_path = path("rebuilt.json");
  ASSERT_EQ(run(cfg), 0);
  json rebuilt = report_at(path("rebuilt.json"));
  rebuilt.erase("elapsed_s");
  EXPECT_EQ(cold.dump(), rebuilt.dump());
}

TEST_F(CliTest, VerifySuiteDefaultsRun) {
  RunConfig cfg;
  cfg.command = "verify";
  cfg.suite = "heisenberg";
  cfg.alpha = chiralforge::exact::Rational(1);
  cfg.cutoff = 4;
  cfg.m_range = 3;
  cfg.out_path = path("h.json");
  EXPECT_EQ(run(cfg), 0);

  cfg.suite = "chain";
  cfg.cutoff = 4;
  cfg.m_range = 2;
  cfg.out_path = path("c.json");
  EXPECT_EQ(run(cfg), 0);
  EXPECT_EQ(report_at(cfg.out_path).at("suite"), "chain");

  cfg.suite = "energy";
  cfg.cutoff = 4;
  cfg.out_path = path("e.json");
  EXPECT_EQ(run(cfg), 0);
}

TEST_F(CliTest, ChainReadsTestFunctionFile) {
  RunConfig cfg;
  cfg.command = "verify";
  cfg.suite = "chain";
  cfg.alpha = chiralforge::exact::Rational(1);
  cfg.beta = chiralforge::exact::Rational(0);
  cfg.beta_set = true;
  cfg.cutoff = 4;
  cfg.m_range = 2;
  const auto f = chiralforge::props::gaussian_test_function(
      chiralforge::exact::Rational(-1, 2), -4, 4, 0.0, 1.5);
  const std::string fn = path("fn.json");
  std::ofstream(fn) << f.to_json().dump(2);
  cfg.test_fn = fn;
  cfg.out_path = path("chain.json");
  EXPECT_EQ(run(cfg), 0);
}

// ---------------------------------------------------------------------------
// Subprocess tests of the installed binary (argument parsing and exit codes
// as seen by a shell).
// ---------------------------------------------------------------------------

int run_binary(const std::string& args) {
  const std::string cmd = std::string(CHIRALFORGE_BIN) + " " + args +
                          " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

TEST(CliBinary, HelpExitsZero) { EXPECT_EQ(run_binary("--help"), 0); }

TEST(CliBinary, MissingSubcommandIsUsageError) {
  EXPECT_EQ(run_binary(""), 2);
  EXPECT_EQ(run_binary("verify"), 2);
  EXPECT_EQ(run_binary("frobnicate"), 2);
}

TEST(CliBinary, BadFlagValueIsUsageError) {
  EXPECT_EQ(run_binary("verify braiding --alpha nope"), 2);
  EXPECT_EQ(run_binary("verify braiding --jobs 0"), 2);
  EXPECT_EQ(run_binary("verify braiding --tol -1"), 2);
}

TEST(CliBinary, BraidingRoundTrip) {
  EXPECT_EQ(run_binary("verify braiding --alpha 1 --beta -1 --cutoff 3"), 0);
  EXPECT_EQ(run_binary(
                "verify braiding --alpha 1 --beta 1 --cutoff 3 --mutate "
                "sugawara-shift"),
            1);
}

TEST(CliBinary, SectorSpecFromFile) {
  EXPECT_EQ(run_binary(std::string("sectors check-2d --spec ") +
                       CHIRALFORGE_DATA_DIR + "/u1_conjugate.json"),
            0);
}

}  // namespace
