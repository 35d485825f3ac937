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

// Command-line front end.  Every subcommand runs one verification suite and
// writes a JSON report (stdout by default, --out <file> otherwise); a
// one-line PASS/FAIL summary goes to stderr.  Exit codes: 0 when all
// assertions hold, 1 when the suite ran and found a violation, 2 for usage
// or configuration errors.

#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "chiralforge/cli/run.hpp"
#include "chiralforge/exact/rational.hpp"

namespace {

struct ParsedFlags {
  chiralforge::cli::RunConfig cfg;
  std::string alpha_str = "1";
  std::string beta_str;  // empty = not given
};

// Flags shared by every leaf subcommand.  Suites ignore the ones that do
// not apply to them.
void add_common_flags(CLI::App* sub, ParsedFlags& f) {
  sub->add_option("--alpha", f.alpha_str,
                  "charge alpha as a rational, e.g. 1 or -3/2");
  sub->add_option("--beta", f.beta_str, "charge beta as a rational");
  sub->add_option("--cutoff", f.cfg.cutoff,
                  "grading cutoff N (suite default when omitted)");
  sub->add_option("--m-range", f.cfg.m_range,
                  "mode-index range / window size (suite default when "
                  "omitted)");
  sub->add_option("--tol", f.cfg.tol, "floating-point tolerance")
      ->check(CLI::PositiveNumber);
  sub->add_option("--cache-dir", f.cfg.cache_dir,
                  "directory for the on-disk mode cache (overrides "
                  "CHIRALFORGE_CACHE)");
  sub->add_option("--out", f.cfg.out_path, "write the JSON report here");
  sub->add_option("--jobs", f.cfg.jobs, "worker threads")
      ->check(CLI::PositiveNumber);
  sub->add_option("--seed", f.cfg.seed, "seed for randomized sampling");
  sub->add_option("--mutate", f.cfg.mutate,
                  "deliberately perturb the computation (falsification "
                  "control): none, eplus-sign, sugawara-shift, "
                  "calpha-offset, binomial-truncation");
}

CLI::App* leaf(CLI::App* parent, ParsedFlags& f, const std::string& command,
               const std::string& suite, const std::string& help) {
  CLI::App* sub = parent->add_subcommand(suite, help);
  add_common_flags(sub, f);
  sub->callback([&f, command, suite] {
    f.cfg.command = command;
    f.cfg.suite = suite;
  });
  return sub;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "chiralforge: exact-arithmetic verification of charged free-boson "
      "modules, vertex-operator modes, and sector admissibility"};
  app.require_subcommand(1);
  ParsedFlags f;

  // ---- verify -------------------------------------------------------------
  CLI::App* verify = app.add_subcommand(
      "verify", "algebraic identities on charged modules");
  verify->require_subcommand(1);
  leaf(verify, f, "verify", "heisenberg",
       "current-mode commutators [J_m, J_n] = m delta_{m+n}");
  leaf(verify, f, "verify", "virasoro",
       "Sugawara Virasoro relations at central charge 1");
  leaf(verify, f, "verify", "braiding",
       "two-sided braiding relation for a pair of charged fields");
  leaf(verify, f, "verify", "primarity",
       "primary-field commutators [L_m, Y(alpha)]");
  leaf(verify, f, "verify", "locality",
       "relative locality of a charged field against the current");
  leaf(verify, f, "verify", "energy",
       "quadratic-form energy bounds for smeared modes");
  CLI::App* chain = leaf(verify, f, "verify", "chain",
                         "iterated commutators [L, [L, ... [L, Y(f)]]] stay "
                         "bounded");
  chain->add_option("--test-fn", f.cfg.test_fn,
                    "JSON test-function file (default: centered gaussian)");
  leaf(verify, f, "verify", "normal-product",
       "normal-ordered product bounds for two charged fields");

  // ---- sectors ------------------------------------------------------------
  CLI::App* sectors = app.add_subcommand(
      "sectors", "group-theoretic admissibility certificates");
  sectors->require_subcommand(1);
  for (const auto& [name, help] :
       {std::pair<const char*, const char*>{
            "check-1d", "one-dimensional gluing admissibility"},
        {"check-2d", "two-dimensional braiding-cancellation admissibility"},
        {"lr", "pointed Longo-Rehren Q-system construction"},
        {"shift-fields", "shift-field commutation and intertwiner checks"}}) {
    CLI::App* sub = leaf(sectors, f, "sectors", name, help);
    sub->add_option("--spec", f.cfg.spec_path, "sector-spec JSON file");
  }

  // ---- twodim -------------------------------------------------------------
  CLI::App* twodim = app.add_subcommand(
      "twodim", "two-dimensional (left x right) extensions");
  twodim->require_subcommand(1);
  CLI::App* tl = leaf(twodim, f, "twodim", "locality",
                      "2d commutator vanishing for a pair of local fields");
  tl->add_option("--samples", f.cfg.samples,
                 "random tensor-tuple sample budget")
      ->check(CLI::PositiveNumber);
  CLI::App* sm = leaf(twodim, f, "twodim", "smear",
                      "smear a 2d field against left/right profiles");
  sm->add_option("--f-left", f.cfg.f_left, "left-mover profile JSON file");
  sm->add_option("--f-right", f.cfg.f_right, "right-mover profile JSON file");
  CLI::App* cd = leaf(twodim, f, "twodim", "commutator-decay",
                      "smeared commutator norms across a cutoff ladder");
  cd->add_option("--cutoffs", f.cfg.cutoffs,
                 "comma-separated cutoff ladder (default 4,6,8)")
      ->delimiter(',');
  cd->add_option("--fa-left", f.cfg.fa_left, "field A left profile JSON");
  cd->add_option("--fa-right", f.cfg.fa_right, "field A right profile JSON");
  cd->add_option("--fb-left", f.cfg.fb_left, "field B left profile JSON");
  cd->add_option("--fb-right", f.cfg.fb_right, "field B right profile JSON");

  // ---- demo ---------------------------------------------------------------
  CLI::App* demo = app.add_subcommand(
      "demo", "run the full verification battery at working cutoffs");
  add_common_flags(demo, f);
  demo->callback([&f] {
    f.cfg.command = "demo";
    f.cfg.suite = "demo";
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help / --version
    app.exit(e);
    return 2;
  }

  try {
    f.cfg.alpha = chiralforge::exact::Rational::from_string(f.alpha_str);
    if (!f.beta_str.empty()) {
      f.cfg.beta = chiralforge::exact::Rational::from_string(f.beta_str);
      f.cfg.beta_set = true;
    }
  } catch (const chiralforge::ConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return chiralforge::cli::run(f.cfg);
}
