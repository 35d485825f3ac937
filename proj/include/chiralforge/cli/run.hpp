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

#ifndef CHIRALFORGE_CLI_RUN_HPP
#define CHIRALFORGE_CLI_RUN_HPP

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "chiralforge/common.hpp"
#include "chiralforge/exact/rational.hpp"
#include "chiralforge/props/algebra.hpp"
#include "chiralforge/props/braiding.hpp"
#include "chiralforge/props/commutators.hpp"
#include "chiralforge/props/energy.hpp"
#include "chiralforge/props/report.hpp"
#include "chiralforge/props/testfn.hpp"
#include "chiralforge/sectors/gluing.hpp"
#include "chiralforge/sectors/qsystem.hpp"
#include "chiralforge/sectors/shift_fields.hpp"
#include "chiralforge/sectors/spec.hpp"
#include "chiralforge/twodim/field.hpp"
#include "chiralforge/twodim/smearing.hpp"
#include "chiralforge/vertex/serialize.hpp"
#include "chiralforge/vertex/series.hpp"

namespace chiralforge::cli {

// One invocation's worth of configuration.  Negative cutoff / m_range mean
// "use the suite's default"; string fields are empty when not given.
struct RunConfig {
  std::string command;  // verify | sectors | twodim | demo
  std::string suite;    // subcommand within the command

  exact::Rational alpha{1};
  exact::Rational beta{1};
  bool beta_set = false;  // lets suites with asymmetric defaults tell

  int cutoff = -1;
  int m_range = -1;
  std::vector<int> cutoffs;  // commutator-decay ladder; empty = {4, 6, 8}
  double tol = 1e-9;
  std::string cache_dir;  // overrides CHIRALFORGE_CACHE when non-empty
  std::string out_path;   // report file; empty = stdout
  int jobs = 1;
  std::uint64_t seed = 1;
  std::string mutate;     // mutation name; empty or "none" = off
  std::string spec_path;  // sector-spec JSON file

  // Test-function files (twodim smear / commutator-decay, verify chain).
  std::string f_left, f_right;
  std::string fa_left, fa_right, fb_left, fb_right;
  std::string test_fn;
  int samples = 1200;  // randomized tensor-tuple budget (twodim locality)
};

namespace detail {

inline int defaulted(int value, int fallback) {
  return value < 0 ? fallback : value;
}

inline Mutation parse_mutation(const std::string& name) {
  if (name.empty()) return Mutation::kNone;
  auto m = mutation_from_string(name);
  if (!m) throw ConfigError("unknown mutation '" + name + "'");
  return *m;
}

inline nlohmann::json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open file '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("file '" + path + "' is not valid JSON: " + e.what());
  }
  return j;
}

inline props::TestFunction load_test_function(const std::string& path) {
  return props::TestFunction::from_json(load_json_file(path));
}

// Default smearing profile on the mode grid of a charge-alpha leg over the
// vacuum: a centered gaussian wide enough to exercise several levels.
inline props::TestFunction default_leg_function(const exact::Rational& alpha,
                                                double theta0) {
  const exact::Rational offset = -(alpha * alpha) / exact::Rational(2);
  return props::gaussian_test_function(offset, -10, 10, theta0, 2.5);
}

inline props::TestFunction leg_function(const std::string& path,
                                        const exact::Rational& alpha,
                                        double theta0) {
  if (path.empty()) return default_leg_function(alpha, theta0);
  return load_test_function(path);
}

inline void require_positive_tol(double tol) {
  if (!(tol > 0.0)) throw ConfigError("tolerance must be > 0");
}

// ---------------------------------------------------------------------------
// Suite dispatch
// ---------------------------------------------------------------------------

inline props::VerificationReport run_verify(const RunConfig& cfg,
                                            vertex::ModeCache* cache) {
  const Mutation mutation = parse_mutation(cfg.mutate);
  const std::vector<exact::Rational> charges{exact::Rational(0), cfg.alpha};

  if (cfg.suite == "heisenberg") {
    require_positive_tol(cfg.tol);
    return props::check_heisenberg(charges, defaulted(cfg.m_range, 6),
                                   defaulted(cfg.cutoff, 8), cfg.tol,
                                   cfg.jobs);
  }
  if (cfg.suite == "virasoro") {
    require_positive_tol(cfg.tol);
    return props::check_virasoro(charges, defaulted(cfg.m_range, 4),
                                 defaulted(cfg.cutoff, 8), cfg.tol, cfg.jobs,
                                 mutation);
  }
  if (cfg.suite == "braiding") {
    return props::check_braiding(cfg.alpha, cfg.beta,
                                 defaulted(cfg.cutoff, 4), mutation, cfg.jobs,
                                 cache);
  }
  if (cfg.suite == "primarity") {
    return props::check_primarity(cfg.alpha, defaulted(cfg.m_range, 3),
                                  defaulted(cfg.cutoff, 4), mutation,
                                  cfg.jobs, cache);
  }
  if (cfg.suite == "locality") {
    return props::check_relative_locality(cfg.alpha,
                                          defaulted(cfg.m_range, 3),
                                          defaulted(cfg.cutoff, 5), mutation,
                                          cfg.jobs, cache);
  }
  if (cfg.suite == "energy") {
    require_positive_tol(cfg.tol);
    return props::check_energy_bounds(cfg.alpha, defaulted(cfg.cutoff, 8),
                                      cfg.tol, cfg.jobs, cache);
  }
  if (cfg.suite == "chain") {
    require_positive_tol(cfg.tol);
    const exact::Rational beta = cfg.beta_set ? cfg.beta : exact::Rational(0);
    props::TestFunction f;
    if (cfg.test_fn.empty()) {
      const exact::Rational offset =
          -(cfg.alpha * beta) - (cfg.alpha * cfg.alpha) / exact::Rational(2);
      f = props::gaussian_test_function(offset, -6, 6, 0.0, 2.0);
    } else {
      f = load_test_function(cfg.test_fn);
    }
    const int k_max = defaulted(cfg.m_range, 3);
    return props::check_commutator_chain(cfg.alpha, beta, f, k_max,
                                         defaulted(cfg.cutoff, 6), cfg.tol,
                                         cache);
  }
  if (cfg.suite == "normal-product") {
    require_positive_tol(cfg.tol);
    return props::check_normal_product_bound(cfg.alpha, cfg.beta,
                                             defaulted(cfg.cutoff, 3),
                                             cfg.tol, cfg.jobs, cache);
  }
  throw ConfigError("unknown verify suite '" + cfg.suite + "'");
}

inline props::VerificationReport run_sectors(const RunConfig& cfg) {
  if (cfg.spec_path.empty()) {
    throw ConfigError("sectors commands need --spec <file.json>");
  }
  const nlohmann::json j = load_json_file(cfg.spec_path);

  if (cfg.suite == "check-1d") {
    return sectors::check_1d_gluing(sectors::SectorSpec::from_json(j),
                                    cfg.seed);
  }
  if (cfg.suite == "check-2d") {
    return sectors::check_2d_extension(sectors::TwoSidedSpec::from_json(j),
                                       cfg.seed);
  }
  if (cfg.suite == "lr") {
    sectors::QMutation qm = sectors::QMutation::kNone;
    if (!cfg.mutate.empty() && cfg.mutate != "none") {
      if (cfg.mutate != "single-leg-eps") {
        throw ConfigError("unknown Q-system mutation '" + cfg.mutate +
                          "' (expected 'single-leg-eps')");
      }
      qm = sectors::QMutation::kSingleLegEps;
    }
    auto [q, report] =
        sectors::lr_qsystem(sectors::SectorSpec::from_json(j), qm);
    (void)q;
    return report;
  }
  if (cfg.suite == "shift-fields") {
    sectors::AbelianGroup group =
        j.contains("group") ? sectors::AbelianGroup::from_json(j.at("group"))
                            : sectors::AbelianGroup::from_json(j);
    sectors::ShiftFieldTable table(group, defaulted(cfg.m_range, 8));
    props::VerificationReport report =
        sectors::check_shift_field_commutation(table);
    props::VerificationReport inter =
        sectors::charged_intertwiner_shiftcheck(table);
    report.passed = report.passed && inter.passed;
    report.comparisons += inter.comparisons;
    if (report.worst_violation == "0") {
      report.worst_violation = inter.worst_violation;
    }
    report.details["intertwiner"] = inter.to_json();
    return report;
  }
  throw ConfigError("unknown sectors suite '" + cfg.suite + "'");
}

inline props::VerificationReport run_twodim(const RunConfig& cfg,
                                            vertex::ModeCache* cache) {
  if (cfg.suite == "locality") {
    const twodim::TwoDimField a(cfg.alpha, -cfg.alpha, "sigma_a");
    const exact::Rational b_left = cfg.beta_set ? cfg.beta : -cfg.alpha;
    const twodim::TwoDimField b(b_left, -b_left, "sigma_b");
    return twodim::check_2d_locality(a, b, defaulted(cfg.cutoff, 3),
                                     static_cast<unsigned>(cfg.seed),
                                     cfg.samples, cfg.jobs, cache);
  }
  if (cfg.suite == "smear") {
    require_positive_tol(cfg.tol);
    props::Stopwatch timer;
    const twodim::TwoDimField field(cfg.alpha, -cfg.alpha, "sigma");
    const props::TestFunction fl = leg_function(cfg.f_left, cfg.alpha, 1.0);
    const props::TestFunction fr = leg_function(cfg.f_right, -cfg.alpha, -1.0);
    const int N = defaulted(cfg.cutoff, 6);
    const twodim::EnvelopeTable envelopes = twodim::fit_envelope_table(
        {cfg.alpha, -cfg.alpha}, std::min(N, 4), cfg.tol, cache);
    const twodim::Smeared2d sm = twodim::smear_2d(
        field, fl, fr, N, envelopes, exact::Rational(0), exact::Rational(0),
        cache, cfg.jobs);
    props::VerificationReport report;
    report.suite = "twodim-smear";
    report.params["field"] = field.to_string();
    report.params["cutoff"] = N;
    report.params["f_left"] = fl.to_json();
    report.params["f_right"] = fr.to_json();
    auto leg_json = [](const twodim::SmearedLeg& leg) {
      return nlohmann::ordered_json{{"charge", leg.alpha.to_string()},
                                    {"source", leg.source.to_string()},
                                    {"rows", leg.matrix.rows},
                                    {"cols", leg.matrix.cols},
                                    {"window_const", leg.window_const},
                                    {"tail_const", leg.tail_const},
                                    {"total_const", leg.total_const()}};
    };
    report.details["left"] = leg_json(sm.left);
    report.details["right"] = leg_json(sm.right);
    report.details["combined_tail"] = sm.combined_tail();
    report.passed = true;
    report.comparisons = 2;
    report.elapsed_s = timer.seconds();
    return report;
  }
  if (cfg.suite == "commutator-decay") {
    require_positive_tol(cfg.tol);
    const twodim::TwoDimField a(cfg.alpha, -cfg.alpha, "sigma_a");
    const exact::Rational b_left = cfg.beta_set ? cfg.beta : cfg.alpha;
    const twodim::TwoDimField b(b_left, -b_left, "sigma_b");
    // Defaults: a spacelike-separated pair of gaussian profiles (left
    // orderings opposite to right orderings).
    const props::TestFunction fla = leg_function(cfg.fa_left, cfg.alpha, 1.0);
    const props::TestFunction fra =
        leg_function(cfg.fa_right, -cfg.alpha, -1.0);
    const props::TestFunction flb = leg_function(cfg.fb_left, b_left, -1.0);
    const props::TestFunction frb = leg_function(cfg.fb_right, -b_left, 1.0);
    std::vector<int> ladder = cfg.cutoffs;
    if (ladder.empty()) ladder = {4, 6, 8};
    const twodim::EnvelopeTable envelopes = twodim::fit_envelope_table(
        {cfg.alpha, -cfg.alpha, b_left, -b_left}, 4, cfg.tol, cache);
    return twodim::commutator_decay(a, b, fla, fra, flb, frb, ladder,
                                    envelopes, cache, cfg.jobs);
  }
  throw ConfigError("unknown twodim suite '" + cfg.suite + "'");
}

// ---------------------------------------------------------------------------
// Demo battery: the full verification sweep at working cutoff 6.
// ---------------------------------------------------------------------------

inline std::vector<props::VerificationReport> run_demo(
    const RunConfig& cfg, vertex::ModeCache* cache) {
  using exact::Rational;
  std::vector<props::VerificationReport> reports;
  const int N = defaulted(cfg.cutoff, 6);
  const std::vector<Rational> charges{Rational(0), Rational(1)};
  auto note = [&](props::VerificationReport r) {
    std::fprintf(stderr, "[%s] %-22s worst %-12s %9ld comparisons  %.2fs\n",
                 r.passed ? "PASS" : "FAIL", r.suite.c_str(),
                 r.worst_violation.c_str(), r.comparisons, r.elapsed_s);
    reports.push_back(std::move(r));
  };

  note(props::check_heisenberg(charges, 6, N, cfg.tol, cfg.jobs));
  note(props::check_virasoro(charges, 4, N, cfg.tol, cfg.jobs));
  note(props::check_gram(charges, 10, cfg.jobs));
  for (const auto& [a, b] :
       std::vector<std::pair<Rational, Rational>>{{Rational(1), Rational(1)},
                                                  {Rational(1), Rational(-1)},
                                                  {Rational(1), Rational(2)},
                                                  {Rational(1, 2),
                                                   Rational(1, 2)}}) {
    note(props::check_braiding(a, b, N, Mutation::kNone, cfg.jobs, cache));
  }
  for (const Rational& a : {Rational(1), Rational(2)}) {
    note(props::check_primarity(a, 3, N, Mutation::kNone, cfg.jobs, cache));
    note(props::check_relative_locality(a, 3, N, Mutation::kNone, cfg.jobs,
                                        cache));
  }
  note(props::check_energy_bounds(Rational(1), N, cfg.tol, cfg.jobs, cache));
  {
    props::TestFunction f = props::gaussian_test_function(
        Rational(-1, 2), -6, 6, 0.0, 2.0);
    note(props::check_commutator_chain(Rational(1), Rational(0), f, 3, N,
                                       cfg.tol, cache));
  }
  note(props::check_normal_product_bound(Rational(1), Rational(1), N,
                                         cfg.tol, cfg.jobs, cache));

  // Sector certificates over the integer lattice and its Z_2 quotient.
  {
    sectors::AbelianGroup z(1, {});
    sectors::SectorSpec even(
        z, {sectors::KappaSpec::from_gram("even-lattice", z,
                                          {{Rational(2)}})});
    note(sectors::check_1d_gluing(even, cfg.seed));

    sectors::SectorSpec left(
        z, {sectors::KappaSpec::from_charges("sigma", z, {Rational(1)})});
    sectors::SectorSpec right(
        z, {sectors::KappaSpec::from_charges("sigma-bar", z,
                                             {Rational(-1)})});
    note(sectors::check_2d_extension(left, right, cfg.seed));

    sectors::AbelianGroup z2(0, {2});
    sectors::SectorSpec lat2(
        z2, {sectors::KappaSpec::from_gram("lat", z2, {{Rational(2)}})});
    auto [q, qreport] = sectors::lr_qsystem(lat2);
    (void)q;
    note(std::move(qreport));

    sectors::ShiftFieldTable table(z, 6);
    note(sectors::check_shift_field_commutation(table));
    note(sectors::charged_intertwiner_shiftcheck(table));
  }

  // Two-dimensional extension: locality and smeared-commutator decay.
  {
    const twodim::TwoDimField sa(Rational(1), Rational(-1), "sigma");
    const twodim::TwoDimField sb(Rational(-1), Rational(1), "sigma-bar");
    note(twodim::check_2d_locality(sa, sb, 3,
                                   static_cast<unsigned>(cfg.seed),
                                   cfg.samples, cfg.jobs, cache));
    const props::TestFunction fla = default_leg_function(Rational(1), 1.0);
    const props::TestFunction fra = default_leg_function(Rational(-1), -1.0);
    const props::TestFunction flb = default_leg_function(Rational(1), -1.0);
    const props::TestFunction frb = default_leg_function(Rational(-1), 1.0);
    const twodim::EnvelopeTable envelopes = twodim::fit_envelope_table(
        {Rational(1), Rational(-1)}, 4, cfg.tol, cache);
    note(twodim::commutator_decay(sa, sa, fla, fra, flb, frb, {4, 6},
                                  envelopes, cache, cfg.jobs));
  }
  return reports;
}

inline props::VerificationReport fold_demo(
    std::vector<props::VerificationReport> reports, double elapsed) {
  props::VerificationReport top;
  top.suite = "demo";
  top.passed = true;
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  long failures = 0;
  for (auto& r : reports) {
    top.passed = top.passed && r.passed;
    top.comparisons += r.comparisons;
    if (!r.passed) ++failures;
    arr.push_back(r.to_json());
  }
  top.worst_violation =
      failures == 0 ? "0" : std::to_string(failures) + " failing suites";
  top.params["suites"] = static_cast<long>(reports.size());
  top.details["reports"] = std::move(arr);
  top.elapsed_s = elapsed;
  return top;
}

}  // namespace detail

// Cache directory resolution: explicit flag, then CHIRALFORGE_CACHE, then
// no persistent cache.
inline std::string effective_cache_dir(const RunConfig& cfg) {
  if (!cfg.cache_dir.empty()) return cfg.cache_dir;
  if (auto env = vertex::env_cache_dir()) return *env;
  return "";
}

inline void emit_report(const props::VerificationReport& report,
                        const RunConfig& cfg) {
  std::fprintf(stderr, "[%s] %s: worst %s, %ld comparisons, %.2fs\n",
               report.passed ? "PASS" : "FAIL", report.suite.c_str(),
               report.worst_violation.c_str(), report.comparisons,
               report.elapsed_s);
  const std::string text = report.to_json().dump(2);
  if (cfg.out_path.empty()) {
    std::printf("%s\n", text.c_str());
    return;
  }
  std::ofstream out(cfg.out_path);
  if (!out) throw ConfigError("cannot write report to '" + cfg.out_path + "'");
  out << text << "\n";
  std::fprintf(stderr, "report written to %s\n", cfg.out_path.c_str());
}

// Executes one configured command.  Exit codes: 0 all assertions passed,
// 1 suite ran and failed (report still emitted), 2 configuration error.
inline int run(const RunConfig& cfg) {
  try {
    if (cfg.jobs < 1) throw ConfigError("--jobs must be >= 1");
    vertex::ModeCache cache;
    const std::string dir = effective_cache_dir(cfg);
    if (!dir.empty()) {
      cache.set_builder([dir](const exact::Rational& a, const exact::Rational& s,
                              const exact::Rational& b, int n, Mutation m) {
        return vertex::cached_vertex_mode(dir, a, s, b, n, m);
      });
    }

    props::VerificationReport report;
    if (cfg.command == "verify") {
      report = detail::run_verify(cfg, &cache);
    } else if (cfg.command == "sectors") {
      report = detail::run_sectors(cfg);
    } else if (cfg.command == "twodim") {
      report = detail::run_twodim(cfg, &cache);
    } else if (cfg.command == "demo") {
      props::Stopwatch timer;
      std::vector<props::VerificationReport> reports =
          detail::run_demo(cfg, &cache);
      report = detail::fold_demo(std::move(reports), timer.seconds());
    } else {
      throw ConfigError("unknown command '" + cfg.command + "'");
    }
    report.seed = cfg.seed;
    emit_report(report, cfg);
    return report.passed ? 0 : 1;
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const TruncationOverflow& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}

}  // namespace chiralforge::cli

#endif  // CHIRALFORGE_CLI_RUN_HPP
