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
// Verification suites for the current-algebra layer: Heisenberg relations,
// Sugawara Virasoro relations, Gram diagonality, and the current/Virasoro
// energy bounds.  Exact identities are checked in rational arithmetic and
// must produce worst_violation == 0; norm inequalities are checked in floats
// against a declared tolerance.

#ifndef CHIRALFORGE_PROPS_ALGEBRA_HPP
#define CHIRALFORGE_PROPS_ALGEBRA_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <mutex>
#include <string>
#include <vector>

#include "chiralforge/common.hpp"
#include "chiralforge/exact/rational.hpp"
#include "chiralforge/fock/module.hpp"
#include "chiralforge/props/parallel.hpp"
#include "chiralforge/props/report.hpp"

namespace chiralforge::props {

namespace detail {

inline std::vector<fock::FockVector> basis_through_level(
    const exact::Rational& charge, int max_level) {
  std::vector<fock::FockVector> basis;
  for (int l = 0; l <= max_level; ++l) {
    for (const auto& p : fock::partitions_of(l)) {
      basis.push_back(fock::FockVector::basis(charge, p));
    }
  }
  return basis;
}

// Exact squared norm of a vector in its charged module.
inline exact::Rational norm_sq(const fock::FockVector& v) {
  return fock::inner(v, v);
}

// Exact value of <v, (L0 + shift) v> using the degree grading (charge^2/2 +
// level); avoids re-deriving L0 through the Sugawara sum.
inline exact::Rational energy_quadratic(const fock::FockVector& v,
                                        const exact::Rational& shift) {
  exact::Rational total(0);
  for (const auto& [p, c] : v.terms()) {
    exact::Rational deg = fock::degree(v.charge(), fock::level(p));
    total += (deg + shift) * c * c * fock::basis_norm(p);
  }
  return total;
}

inline std::string charges_label(const std::vector<exact::Rational>& charges) {
  std::string out;
  for (std::size_t i = 0; i < charges.size(); ++i) {
    if (i) out += ",";
    out += charges[i].to_string();
  }
  return out;
}

}  // namespace detail

// Heisenberg suite: [J_m, J_n] = m δ_{m+n}, J_n* = J_{-n}, and the current
// energy bound ||J_n v|| <= (|n|+1) ||(L0+1)^{1/2} v|| (floats, tol).
inline VerificationReport check_heisenberg(
    const std::vector<exact::Rational>& charges, int m_max, int cutoff,
    double tol = 1e-9, int jobs = 1) {
  if (m_max < 0 || cutoff < 0) throw ConfigError("m_max and cutoff must be >= 0");
  Stopwatch timer;
  VerificationReport report;
  report.suite = "heisenberg";
  report.params["charges"] = detail::charges_label(charges);
  report.params["m_max"] = m_max;
  report.params["cutoff"] = cutoff;
  report.params["tol"] = tol;

  // Headroom so that no intermediate J application can overflow.
  fock::FockTruncation work{cutoff + 2 * m_max};

  struct Task {
    exact::Rational charge;
    int m;
    int n;
  };
  std::vector<Task> tasks;
  for (const auto& q : charges) {
    for (int m = -m_max; m <= m_max; ++m) {
      for (int n = -m_max; n <= m_max; ++n) {
        tasks.push_back({q, m, n});
      }
    }
  }

  std::vector<ExactViolation> task_violation(tasks.size());
  std::vector<long> task_comparisons(tasks.size(), 0);
  parallel_for(tasks.size(), jobs, [&](std::size_t i) {
    const Task& t = tasks[i];
    auto basis = detail::basis_through_level(t.charge, cutoff);
    for (const auto& v : basis) {
      fock::FockVector lhs = fock::apply_j(t.m, fock::apply_j(t.n, v, work), work);
      lhs -= fock::apply_j(t.n, fock::apply_j(t.m, v, work), work);
      if (t.m + t.n == 0) lhs -= v.scaled(exact::Rational(t.m));
      task_violation[i].observe(lhs.max_abs());
      ++task_comparisons[i];
    }
  });

  ExactViolation exact_v;
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    exact_v.merge(task_violation[i]);
    report.comparisons += task_comparisons[i];
  }

  // Adjointness <J_{-n} v, w> = <v, J_n w> on all basis pairs per level.
  for (const auto& q : charges) {
    auto basis = detail::basis_through_level(q, cutoff);
    for (int n = 0; n <= m_max; ++n) {
      for (const auto& v : basis) {
        for (const auto& w : basis) {
          exact::Rational lhs = fock::inner(fock::apply_j(-n, v, work), w);
          exact::Rational rhs = fock::inner(v, fock::apply_j(n, w, work));
          exact_v.observe(lhs - rhs);
          ++report.comparisons;
        }
      }
    }
  }

  // Current energy bound, computed from exact norms and compared in floats.
  FloatViolation float_v;
  for (const auto& q : charges) {
    auto basis = detail::basis_through_level(q, cutoff);
    for (int n = -m_max; n <= m_max; ++n) {
      for (const auto& v : basis) {
        double lhs = std::sqrt(detail::norm_sq(fock::apply_j(n, v, work)).to_double());
        double rhs = (std::abs(n) + 1) *
                     std::sqrt(detail::energy_quadratic(v, exact::Rational(1)).to_double());
        float_v.observe(lhs - rhs);
        ++report.comparisons;
      }
    }
  }

  report.passed = exact_v.clean() && float_v.within(tol);
  report.worst_violation =
      exact_v.clean() ? std::to_string(float_v.worst()) : exact_v.to_string();
  report.details["exact_violation"] = exact_v.to_string();
  report.details["j_bound_excess"] = float_v.worst();
  report.elapsed_s = timer.seconds();
  return report;
}

// Virasoro suite: [L_m, L_n] = (m-n) L_{m+n} + δ_{m+n} (m^3-m)/12 (central
// charge 1), the mixed relation [L_m, J_j] = -j J_{j+m}, L_n* = L_{-n}, and
// the Virasoro energy bound ||L_n v|| <= sqrt(13/12)(1+|n|^{3/2})||(L0+1)v||.
inline VerificationReport check_virasoro(
    const std::vector<exact::Rational>& charges, int m_max, int cutoff,
    double tol = 1e-9, int jobs = 1, Mutation mutation = Mutation::kNone) {
  if (m_max < 0 || cutoff < 0) throw ConfigError("m_max and cutoff must be >= 0");
  Stopwatch timer;
  VerificationReport report;
  report.suite = "virasoro";
  report.params["charges"] = detail::charges_label(charges);
  report.params["m_max"] = m_max;
  report.params["cutoff"] = cutoff;
  report.params["tol"] = tol;
  report.params["mutation"] = to_string(mutation);

  fock::FockTruncation work{cutoff + 2 * m_max};

  struct Task {
    exact::Rational charge;
    int m;
    int n;
  };
  std::vector<Task> tasks;
  for (const auto& q : charges) {
    for (int m = -m_max; m <= m_max; ++m) {
      for (int n = -m_max; n <= m_max; ++n) {
        tasks.push_back({q, m, n});
      }
    }
  }

  std::vector<ExactViolation> task_violation(tasks.size());
  std::vector<long> task_comparisons(tasks.size(), 0);
  parallel_for(tasks.size(), jobs, [&](std::size_t i) {
    const Task& t = tasks[i];
    auto basis = detail::basis_through_level(t.charge, cutoff);
    for (const auto& v : basis) {
      // [L_m, L_n] v
      fock::FockVector lhs =
          fock::apply_l(t.m, fock::apply_l(t.n, v, work, mutation), work, mutation);
      lhs -= fock::apply_l(t.n, fock::apply_l(t.m, v, work, mutation), work, mutation);
      lhs -= fock::apply_l(t.m + t.n, v, work, mutation)
                 .scaled(exact::Rational(t.m - t.n));
      if (t.m + t.n == 0) {
        long mm = t.m;
        lhs -= v.scaled(exact::Rational(mm * mm * mm - mm, 12));
      }
      task_violation[i].observe(lhs.max_abs());

      // Mixed relation [L_m, J_n] v = -n J_{n+m} v (reusing n as the current
      // index).
      fock::FockVector mixed =
          fock::apply_l(t.m, fock::apply_j(t.n, v, work), work, mutation);
      mixed -= fock::apply_j(t.n, fock::apply_l(t.m, v, work, mutation), work);
      mixed -= fock::apply_j(t.n + t.m, v, work).scaled(exact::Rational(-t.n));
      task_violation[i].observe(mixed.max_abs());
      task_comparisons[i] += 2;
    }
  });

  ExactViolation exact_v;
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    exact_v.merge(task_violation[i]);
    report.comparisons += task_comparisons[i];
  }

  // Adjointness <L_{-n} v, w> = <v, L_n w>.
  for (const auto& q : charges) {
    auto basis = detail::basis_through_level(q, cutoff);
    for (int n = 0; n <= m_max; ++n) {
      for (const auto& v : basis) {
        for (const auto& w : basis) {
          exact::Rational lhs =
              fock::inner(fock::apply_l(-n, v, work, mutation), w);
          exact::Rational rhs =
              fock::inner(v, fock::apply_l(n, w, work, mutation));
          exact_v.observe(lhs - rhs);
          ++report.comparisons;
        }
      }
    }
  }

  // Virasoro energy bound in floats.
  FloatViolation float_v;
  const double prefactor = std::sqrt(13.0 / 12.0);
  for (const auto& q : charges) {
    auto basis = detail::basis_through_level(q, cutoff);
    for (int n = -m_max; n <= m_max; ++n) {
      for (const auto& v : basis) {
        double lhs = std::sqrt(
            detail::norm_sq(fock::apply_l(n, v, work, mutation)).to_double());
        // Basis vectors are L0 eigenvectors, so ||(L0+1)v|| = (deg+1)||v||.
        double deg = fock::degree(v.charge(), v.max_level()).to_double();
        double rhs = prefactor * (1.0 + std::pow(std::abs(n), 1.5)) *
                     (deg + 1.0) * std::sqrt(detail::norm_sq(v).to_double());
        float_v.observe(lhs - rhs);
        ++report.comparisons;
      }
    }
  }

  report.passed = exact_v.clean() && float_v.within(tol);
  report.worst_violation =
      exact_v.clean() ? std::to_string(float_v.worst()) : exact_v.to_string();
  report.details["exact_violation"] = exact_v.to_string();
  report.details["l_bound_excess"] = float_v.worst();
  report.elapsed_s = timer.seconds();
  return report;
}

// Gram suite: the level Gram matrix computed by normal-ordering inner
// products must be diagonal with the closed-form entries prod_k k^{m_k} m_k!,
// hence positive definite.
inline VerificationReport check_gram(const std::vector<exact::Rational>& charges,
                                     int max_level, int jobs = 1) {
  if (max_level < 0) throw ConfigError("max_level must be >= 0");
  Stopwatch timer;
  VerificationReport report;
  report.suite = "gram";
  report.params["charges"] = detail::charges_label(charges);
  report.params["max_level"] = max_level;

  struct Task {
    exact::Rational charge;
    int level;
  };
  std::vector<Task> tasks;
  for (const auto& q : charges) {
    for (int l = 0; l <= max_level; ++l) tasks.push_back({q, l});
  }

  std::vector<ExactViolation> task_violation(tasks.size());
  std::vector<long> task_comparisons(tasks.size(), 0);
  parallel_for(tasks.size(), jobs, [&](std::size_t i) {
    const Task& t = tasks[i];
    auto gram = fock::gram(t.charge, t.level);
    auto norms = fock::basis_norms(t.level);
    int dim = static_cast<int>(norms.size());
    for (int r = 0; r < dim; ++r) {
      for (int c = 0; c < dim; ++c) {
        exact::Rational expected = (r == c) ? norms[r] : exact::Rational(0);
        task_violation[i].observe(gram[r][c] - expected);
        ++task_comparisons[i];
      }
      // Positive definiteness of the diagonal entry.
      if (!(norms[r] > exact::Rational(0))) {
        task_violation[i].observe(exact::Rational(1));
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

}  // namespace chiralforge::props

#endif  // CHIRALFORGE_PROPS_ALGEBRA_HPP
