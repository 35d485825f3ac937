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
// The diagonal two-leg Q-system of a pointed family.
//
// For a finite abelian group G of pointed sectors, the canonical diagonal
// object is Theta = (+)_g sigma_g (x) conj(sigma_g), one one-dimensional
// summand per group element.  In the natural intertwiner basis the
// multiplication constants mu(g, h) are all 1, the charged implementers
// psi_g act on the G-graded model space C[G] as phase-weighted shifts
// e_h -> mu(g, h) e_{g+h}, and every quantum dimension is 1.
//
// The verified laws:
//   * unit/counit:      mu(identity, g) = mu(g, identity) = 1,
//   * associativity:    mu(g,h) mu(g+h,k) = mu(h,k) mu(g,h+k)  (2-cocycle),
//   * normalization:    X*X = |G| 1 for X = sum_g psi_g, entrywise as an
//                       exact tally of unit phases (the cross terms
//                       psi_g* psi_h, g != h, change the grading, so only
//                       the |G| diagonal terms land on the scalar part),
//   * commutativity:    B(g,h) mu(h,g) = mu(g,h), where the doubled
//                       braiding B(g,h) = eps_leg1(g,h) * eps_leg2(g,h)
//                       multiplies the first-leg phase eps^+(g,h) of the
//                       family with the conjugated second-leg phase
//                       conj(eps^+(g,h)) — the second leg is antilinearly
//                       conjugated, which is exactly why the diagonal object
//                       braids trivially with itself,
//   * statistics:       B(g,g) = 1 for every summand.
//
// The kSingleLegEps mutation flips the sign of eps_leg1 at one point without
// touching the conjugate leg; commutativity and the statistics check must
// then fail, demonstrating that the second leg's conjugation is load-bearing.

#ifndef CHIRALFORGE_SECTORS_QSYSTEM_HPP
#define CHIRALFORGE_SECTORS_QSYSTEM_HPP

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "chiralforge/common.hpp"
#include "chiralforge/exact/phase.hpp"
#include "chiralforge/exact/rational.hpp"
#include "chiralforge/props/report.hpp"
#include "chiralforge/sectors/gluing.hpp"
#include "chiralforge/sectors/group.hpp"
#include "chiralforge/sectors/spec.hpp"

namespace chiralforge::sectors {

// Single-fault perturbations of the Q-system data.
enum class QMutation {
  kNone,
  // Multiplies the first-leg braiding phase at one point (first generator
  // against itself) by -1, leaving the conjugate leg untouched.
  kSingleLegEps,
};

// The diagonal Q-system data of a pointed family over a finite group.
class PointedQSystem {
 public:
  using Element = AbelianGroup::Element;

  PointedQSystem(AbelianGroup group, const SectorSpec& spec,
                 QMutation mutation = QMutation::kNone)
      : group_(std::move(group)), mutation_(mutation) {
    if (!group_.is_finite()) {
      throw ConfigError("the diagonal Q-system needs a finite group, got " +
                        group_.to_string());
    }
    if (spec.group != group_) {
      throw ConfigError("Q-system group does not match the sector spec");
    }
    elements_ = group_.elements();
    for (const Element& g : elements_) {
      for (const Element& h : elements_) {
        exact::Phase leg1 = exact::Phase::one();
        for (const KappaSpec& k : spec.kappas) leg1 *= k.eps_plus(g, h);
        leg1_[key(g, h)] = leg1;
      }
    }
    if (mutation_ == QMutation::kSingleLegEps) {
      if (group_.order() < 2) {
        throw ConfigError(
            "the single-leg mutation needs a nontrivial group");
      }
      const Element g0 = group_.generator(group_.free_rank());
      leg1_[key(g0, g0)] *= exact::Phase::minus_one();
    }
  }

  const AbelianGroup& group() const { return group_; }
  const std::vector<Element>& elements() const { return elements_; }
  long summands() const { return static_cast<long>(elements_.size()); }
  QMutation mutation() const { return mutation_; }

  // Multiplication structure constants in the canonical intertwiner basis.
  exact::Phase mu(const Element&, const Element&) const {
    return exact::Phase::one();
  }

  // First-leg braiding phase (mutations apply here).
  exact::Phase eps_leg1(const Element& g, const Element& h) const {
    return leg1_.at(key(g, h));
  }

  // Conjugate-leg braiding phase: the second leg is antilinearly conjugated,
  // so its braiding is the complex conjugate of the unmutated first leg.
  exact::Phase eps_leg2(const Element& g, const Element& h) const {
    exact::Phase p = leg1_.at(key(g, h));
    if (mutation_ == QMutation::kSingleLegEps) {
      const Element g0 = group_.generator(group_.free_rank());
      if (group_.reduce(g) == g0 && group_.reduce(h) == g0) {
        // Undo the first-leg mutation: the conjugate leg keeps the honest
        // phase.
        p *= exact::Phase::minus_one();
      }
    }
    return p.conj();
  }

  // Braiding of the doubled summands sigma_g (x) conj(sigma_g).
  exact::Phase doubled_braiding(const Element& g, const Element& h) const {
    return eps_leg1(g, h) * eps_leg2(g, h);
  }

 private:
  std::string key(const Element& g, const Element& h) const {
    return group_.element_to_string(group_.reduce(g)) + "|" +
           group_.element_to_string(group_.reduce(h));
  }

  AbelianGroup group_;
  QMutation mutation_;
  std::vector<Element> elements_;
  std::map<std::string, exact::Phase> leg1_;
};

// Builds the diagonal Q-system of the family and verifies its laws by brute
// force over the finite group.
inline std::pair<PointedQSystem, props::VerificationReport> lr_qsystem(
    const AbelianGroup& group, const SectorSpec& spec,
    QMutation mutation = QMutation::kNone) {
  props::Stopwatch timer;
  PointedQSystem q(group, spec, mutation);

  props::VerificationReport report;
  report.suite = "sectors-lr-qsystem";
  report.params = {{"group", group.to_string()},
                   {"order", group.order()},
                   {"mutation", mutation == QMutation::kNone
                                    ? "none"
                                    : "single-leg-eps"}};

  props::ExactViolation worst;
  long comparisons = 0;
  nlohmann::ordered_json checks = nlohmann::ordered_json::array();
  const auto& elements = q.elements();
  const auto iota = group.identity();

  auto run_check = [&](const std::string& name, auto&& body) {
    props::ExactViolation local;
    long local_comparisons = 0;
    body(local, local_comparisons);
    checks.push_back({{"check", name},
                      {"status", local.clean() ? "pass" : "fail"},
                      {"comparisons", local_comparisons},
                      {"worst", local.to_string()}});
    worst.merge(local);
    comparisons += local_comparisons;
  };

  // Exactly one summand per group element.
  run_check("summand_count", [&](props::ExactViolation& v, long& n) {
    v.observe(exact::Rational(q.summands() - group.order()));
    ++n;
  });

  // Unit and counit: multiplying by the vacuum summand is the identity.
  run_check("unit_counit", [&](props::ExactViolation& v, long& n) {
    for (const auto& g : elements) {
      v.observe(phase_defect(q.mu(iota, g)));
      v.observe(phase_defect(q.mu(g, iota)));
      n += 2;
    }
  });

  // Associativity: the structure constants form a 2-cocycle.
  run_check("associativity", [&](props::ExactViolation& v, long& n) {
    for (const auto& g : elements) {
      for (const auto& h : elements) {
        const auto gh = group.add(g, h);
        for (const auto& k : elements) {
          const exact::Phase lhs = q.mu(g, h) * q.mu(gh, k);
          const exact::Phase rhs = q.mu(h, k) * q.mu(g, group.add(h, k));
          v.observe(phase_defect(lhs * rhs.inverse()));
          ++n;
        }
      }
    }
  });

  // Normalization X*X = |G| 1 for X = sum_g psi_g on the graded model
  // space: psi_g* psi_h maps the grading slot c to c + h - g, so an entry
  // (c', c) receives one phase mu(h, c) conj(mu(g, h + c - g)) for every
  // pair with h - g = c' - c.  The scalar part must tally |G| unit phases
  // on each diagonal slot and every off-diagonal slot must be flagged as a
  // pure grading shift (nonzero charge transfer), never a scalar.
  run_check("normalization", [&](props::ExactViolation& v, long& n) {
    for (const auto& c : elements) {
      // Diagonal entry (c, c): contributions from g = h.
      std::map<std::string, long> tally;  // phase exponent -> count
      long count = 0;
      for (const auto& g : elements) {
        for (const auto& h : elements) {
          if (group.add(h, group.neg(g)) != iota) continue;
          const exact::Phase contribution =
              q.mu(h, c) * q.mu(g, group.add(group.add(h, c), group.neg(g)))
                               .conj();
          ++tally[contribution.exponent().to_string()];
          ++count;
        }
      }
      // All |G| contributions must be the unit phase.
      v.observe(exact::Rational(count - group.order()));
      ++n;
      for (const auto& [exponent, cnt] : tally) {
        if (exponent != "0") {
          v.observe(exact::Rational(cnt));
        }
        ++n;
      }
    }
    // Off-diagonal scalar contributions are structurally impossible: each
    // cross pair shifts the grading by h - g != 0.  Count them to make the
    // claim concrete.
    long cross = 0;
    for (const auto& g : elements) {
      for (const auto& h : elements) {
        if (group.add(h, group.neg(g)) != iota) ++cross;
      }
    }
    v.observe(exact::Rational(cross -
                              group.order() * (group.order() - 1)));
    ++n;
  });

  // Commutativity: B(g,h) mu(h,g) = mu(g,h) with the doubled braiding.
  run_check("commutativity", [&](props::ExactViolation& v, long& n) {
    for (const auto& g : elements) {
      for (const auto& h : elements) {
        const exact::Phase lhs = q.doubled_braiding(g, h) * q.mu(h, g);
        v.observe(phase_defect(lhs * q.mu(g, h).inverse()));
        ++n;
      }
    }
  });

  // Statistics: every doubled summand has statistical phase +1.
  run_check("statistical_phase", [&](props::ExactViolation& v, long& n) {
    for (const auto& g : elements) {
      v.observe(phase_defect(q.doubled_braiding(g, g)));
      ++n;
    }
  });

  bool all_passed = true;
  for (const auto& c : checks) {
    if (c.at("status") != "pass") all_passed = false;
  }
  report.passed = all_passed;
  report.comparisons = comparisons;
  report.worst_violation = worst.to_string();
  report.details["checks"] = checks;
  report.details["summands"] = q.summands();
  report.elapsed_s = timer.seconds();
  return {std::move(q), std::move(report)};
}

inline std::pair<PointedQSystem, props::VerificationReport> lr_qsystem(
    const SectorSpec& spec, QMutation mutation = QMutation::kNone) {
  return lr_qsystem(spec.group, spec, mutation);
}

}  // namespace chiralforge::sectors

#endif  // CHIRALFORGE_SECTORS_QSYSTEM_HPP
