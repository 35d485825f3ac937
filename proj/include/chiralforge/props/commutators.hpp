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
//
// Commutator suites for vertex-operator modes:
//   primarity          [L_m, Y_{a,s}] = ((D-1)m - s) Y_{a,m+s},  D = a^2/2,
//   relative locality  [J_m, Y_{a,s}] = a Y_{a,m+s}.
// Both are exact identities checked on every basis vector up to the grading
// cutoff, over the sectors {0, a} and a window of mode drops; intermediates
// are kept inside a widened working cutoff so nothing ever truncates.

#ifndef CHIRALFORGE_PROPS_COMMUTATORS_HPP
#define CHIRALFORGE_PROPS_COMMUTATORS_HPP

#include <string>
#include <vector>

#include "chiralforge/common.hpp"
#include "chiralforge/exact/rational.hpp"
#include "chiralforge/fock/module.hpp"
#include "chiralforge/props/parallel.hpp"
#include "chiralforge/props/report.hpp"
#include "chiralforge/vertex/series.hpp"

namespace chiralforge::props {

namespace detail {

inline std::vector<exact::Rational> mode_sectors(const exact::Rational& alpha) {
  std::vector<exact::Rational> sectors{exact::Rational(0)};
  if (!alpha.is_zero()) sectors.push_back(alpha);
  return sectors;
}

// Shared loop for the two commutator identities.  `generator_apply` applies
// the algebra element X_m; `coefficient(m, s)` gives the scalar in
// [X_m, Y_{a,s}] = coefficient * Y_{a,m+s}.
template <typename GeneratorApply, typename Coefficient>
VerificationReport check_mode_commutator(
    const std::string& suite, const exact::Rational& alpha, int m_range, int N,
    Mutation mutation, int jobs, vertex::ModeCache* cache,
    GeneratorApply&& generator_apply, Coefficient&& coefficient) {
  if (N < 0 || m_range < 0) throw ConfigError("cutoff and m_range must be >= 0");
  Stopwatch timer;
  VerificationReport report;
  report.suite = suite;
  report.params["alpha"] = alpha.to_string();
  report.params["m_range"] = m_range;
  report.params["cutoff"] = N;
  report.params["mutation"] = to_string(mutation);

  if (cache == nullptr) cache = &vertex::ModeCache::global();
  const int W = 2 * N + m_range;  // widened working cutoff
  fock::FockTruncation work{W};
  const exact::Rational D = alpha * alpha / exact::Rational(2);

  struct Task {
    exact::Rational sector;
    int t;  // level drop of the tested mode on its sector
    int m;
  };
  std::vector<Task> tasks;
  for (const auto& sector : detail::mode_sectors(alpha)) {
    for (int t = -N; t <= N; ++t) {
      for (int m = -m_range; m <= m_range; ++m) {
        tasks.push_back({sector, t, m});
      }
    }
  }

  std::vector<ExactViolation> task_violation(tasks.size());
  std::vector<long> task_comparisons(tasks.size(), 0);
  parallel_for(tasks.size(), jobs, [&](std::size_t i) {
    const Task& task = tasks[i];
    const exact::Rational s =
        exact::Rational(task.t) - alpha * task.sector - D;
    auto mode = cache->get(alpha, s, task.sector, W, mutation);
    auto shifted = cache->get(alpha, s + exact::Rational(task.m), task.sector,
                              W, mutation);
    for (int l = 0; l <= N; ++l) {
      for (const auto& p : fock::partitions_of(l)) {
        fock::FockVector v = fock::FockVector::basis(task.sector, p);
        fock::FockVector resid = generator_apply(task.m, mode->apply(v), work);
        resid -= mode->apply(generator_apply(task.m, v, work));
        resid -= shifted->apply(v).scaled(coefficient(task.m, s));
        task_violation[i].observe(resid.max_abs());
        ++task_comparisons[i];
      }
    }
  });

  ExactViolation exact_v;
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    exact_v.merge(task_violation[i]);
    report.comparisons += task_comparisons[i];
  }
  report.passed = exact_v.clean();
  report.worst_violation = exact_v.to_string();
  report.elapsed_s = timer.seconds();
  return report;
}

}  // namespace detail

// Primarity suite: the modes of the charge-`alpha` field transform as a
// primary field of conformal weight D = alpha^2/2 under the Sugawara
// Virasoro action.
inline VerificationReport check_primarity(const exact::Rational& alpha,
                                          int m_range, int N,
                                          Mutation mutation = Mutation::kNone,
                                          int jobs = 1,
                                          vertex::ModeCache* cache = nullptr) {
  const exact::Rational D = alpha * alpha / exact::Rational(2);
  return detail::check_mode_commutator(
      "primarity", alpha, m_range, N, mutation, jobs, cache,
      [mutation](int m, const fock::FockVector& v,
                 const fock::FockTruncation& work) {
        return fock::apply_l(m, v, work, mutation);
      },
      [D](int m, const exact::Rational& s) {
        return (D - exact::Rational(1)) * exact::Rational(m) - s;
      });
}

// Relative locality suite: the modes of the charge-`alpha` field shift by
// the charge pairing under the current action.
inline VerificationReport check_relative_locality(
    const exact::Rational& alpha, int m_range, int N,
    Mutation mutation = Mutation::kNone, int jobs = 1,
    vertex::ModeCache* cache = nullptr) {
  return detail::check_mode_commutator(
      "relative-locality", alpha, m_range, N, mutation, jobs, cache,
      [](int m, const fock::FockVector& v, const fock::FockTruncation& work) {
        return fock::apply_j(m, v, work);
      },
      [alpha](int, const exact::Rational&) { return alpha; });
}

}  // namespace chiralforge::props

#endif  // CHIRALFORGE_PROPS_COMMUTATORS_HPP
