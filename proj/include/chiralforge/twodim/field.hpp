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
// Two-dimensional charged fields on the diagonal Hilbert sum.
//
// A 2d field is a pair of chiral halves acting on distinct tensor legs,
//   psi~(w, z) = psi_L(w) (x) psi_R(z),
// with left charge alpha_L and right charge alpha_R.  The ambient space is
// the diagonal sum (+)_g H_{L(g)} (x) H_{R(g)}: both legs always shift
// together, so the summand labelled by the source charge pair is mapped into
// the summand labelled by the target pair and never off the diagonal.  That
// invariant is structural here: a TwoDimMode is built from one field and one
// source pair, which pins both leg shifts at once.
//
// Locality of two such fields at spacelike separation reorders the left legs
// one way and the right legs the opposite way; the scalar prefactor that
// survives is the combined phase  exp(i*pi*(aL*bL + aR*bR)).  The check below
// gates on that phase being exactly 1 and then compares the reordered mode
// products coefficient-wise.

#ifndef CHIRALFORGE_TWODIM_FIELD_HPP
#define CHIRALFORGE_TWODIM_FIELD_HPP

#include <algorithm>
#include <cstdlib>
#include <map>
#include <memory>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "chiralforge/common.hpp"
#include "chiralforge/exact/phase.hpp"
#include "chiralforge/exact/rational.hpp"
#include "chiralforge/fock/module.hpp"
#include "chiralforge/props/braiding.hpp"
#include "chiralforge/props/parallel.hpp"
#include "chiralforge/props/report.hpp"
#include "chiralforge/vertex/series.hpp"

namespace chiralforge::twodim {

// A two-dimensional field label: left/right chiral charges plus the derived
// conformal data.  Construction enforces the integrality of the spin
// D_L - D_R, the admissibility gate for fields on the diagonal sum.
class TwoDimField {
 public:
  TwoDimField(exact::Rational alpha_left, exact::Rational alpha_right,
              std::string label = "")
      : alpha_left_(std::move(alpha_left)),
        alpha_right_(std::move(alpha_right)),
        label_(std::move(label)) {
    if (!spin().is_integer()) {
      throw ConfigError("2d field (" + alpha_left_.to_string() + ", " +
                        alpha_right_.to_string() +
                        ") has non-integer spin " + spin().to_string());
    }
  }

  const exact::Rational& alpha_left() const { return alpha_left_; }
  const exact::Rational& alpha_right() const { return alpha_right_; }
  const std::string& label() const { return label_; }

  exact::Rational dim_left() const {
    return alpha_left_ * alpha_left_ / exact::Rational(2);
  }
  exact::Rational dim_right() const {
    return alpha_right_ * alpha_right_ / exact::Rational(2);
  }
  exact::Rational spin() const { return dim_left() - dim_right(); }

  std::string to_string() const {
    std::string s =
        "(" + alpha_left_.to_string() + ", " + alpha_right_.to_string() + ")";
    if (!label_.empty()) s += " [" + label_ + "]";
    return s;
  }

 private:
  exact::Rational alpha_left_;
  exact::Rational alpha_right_;
  std::string label_;
};

// Exact vector in one summand H_{left_charge} (x) H_{right_charge} of the
// diagonal sum, indexed by pairs of partitions.
struct TensorVector {
  exact::Rational left_charge;
  exact::Rational right_charge;
  std::map<std::pair<fock::Partition, fock::Partition>, exact::Rational>
      terms;

  static TensorVector zero(exact::Rational lc, exact::Rational rc) {
    return TensorVector{std::move(lc), std::move(rc), {}};
  }

  static TensorVector basis(exact::Rational lc, exact::Rational rc,
                            fock::Partition pl, fock::Partition pr) {
    TensorVector v = zero(std::move(lc), std::move(rc));
    v.terms.emplace(std::make_pair(std::move(pl), std::move(pr)),
                    exact::Rational(1));
    return v;
  }

  // Accumulates  scale * (u (x) v)  into this vector.
  void add_product(const fock::FockVector& u, const fock::FockVector& v,
                   const exact::Rational& scale) {
    if (!(u.charge() == left_charge) || !(v.charge() == right_charge)) {
      throw ConfigError("tensor product charge mismatch");
    }
    if (scale.is_zero()) return;
    for (const auto& [pl, cl] : u.terms()) {
      for (const auto& [pr, cr] : v.terms()) {
        auto key = std::make_pair(pl, pr);
        auto [it, fresh] = terms.try_emplace(key, exact::Rational(0));
        it->second += scale * cl * cr;
        if (it->second.is_zero()) terms.erase(it);
      }
    }
  }

  TensorVector& operator-=(const TensorVector& o) {
    if (!(left_charge == o.left_charge) ||
        !(right_charge == o.right_charge)) {
      throw ConfigError("tensor vector charge mismatch");
    }
    for (const auto& [key, c] : o.terms) {
      auto [it, fresh] = terms.try_emplace(key, exact::Rational(0));
      it->second -= c;
      if (it->second.is_zero()) terms.erase(it);
    }
    return *this;
  }

  exact::Rational max_abs() const {
    exact::Rational m(0);
    for (const auto& [key, c] : terms) m = std::max(m, c.abs());
    return m;
  }

  bool is_zero() const { return terms.empty(); }
};

// One Fourier mode of a 2d field: the tensor product of a left chiral mode
// Y_{aL, sL} and a right chiral mode Y_{aR, sR}, mapping the source summand
// H_{bL} (x) H_{bR} into H_{bL+aL} (x) H_{bR+aR}.  Only build_2d_mode can
// construct one, from a single field, so the two leg shifts are always
// paired and the image stays inside the diagonal sum.
class TwoDimMode {
 public:
  const vertex::ModeMatrix& left() const { return *left_; }
  const vertex::ModeMatrix& right() const { return *right_; }

  exact::Rational source_left() const { return left_->beta; }
  exact::Rational source_right() const { return right_->beta; }
  exact::Rational target_left() const { return left_->target_charge(); }
  exact::Rational target_right() const { return right_->target_charge(); }

  TensorVector apply(const TensorVector& v) const {
    if (!(v.left_charge == source_left()) ||
        !(v.right_charge == source_right())) {
      throw ConfigError("2d mode applied to the wrong diagonal summand");
    }
    TensorVector out = TensorVector::zero(target_left(), target_right());
    for (const auto& [key, c] : v.terms) {
      fock::FockVector ul =
          left_->apply(fock::FockVector::basis(source_left(), key.first));
      fock::FockVector ur =
          right_->apply(fock::FockVector::basis(source_right(), key.second));
      out.add_product(ul, ur, c);
    }
    return out;
  }

 private:
  friend TwoDimMode build_2d_mode(const TwoDimField&, const exact::Rational&,
                                  const exact::Rational&,
                                  const exact::Rational&,
                                  const exact::Rational&, int,
                                  vertex::ModeCache*);
  TwoDimMode(std::shared_ptr<const vertex::ModeMatrix> l,
             std::shared_ptr<const vertex::ModeMatrix> r)
      : left_(std::move(l)), right_(std::move(r)) {}

  std::shared_ptr<const vertex::ModeMatrix> left_;
  std::shared_ptr<const vertex::ModeMatrix> right_;
};

// Builds the (sL, sR) mode of the field on the diagonal summand whose charge
// pair is (source_left, source_right); defaults to the vacuum summand.
// Off-grid mode indices and cutoff violations raise exactly as for chiral
// modes.
inline TwoDimMode build_2d_mode(
    const TwoDimField& field, const exact::Rational& s_left,
    const exact::Rational& s_right,
    const exact::Rational& source_left = exact::Rational(0),
    const exact::Rational& source_right = exact::Rational(0), int cutoff = 6,
    vertex::ModeCache* cache = nullptr) {
  if (cache == nullptr) cache = &vertex::ModeCache::global();
  auto l = cache->get(field.alpha_left(), s_left, source_left, cutoff,
                      Mutation::kNone);
  auto r = cache->get(field.alpha_right(), s_right, source_right, cutoff,
                      Mutation::kNone);
  return TwoDimMode(std::move(l), std::move(r));
}

namespace detail {

// A per-leg exchange task: on the summand with per-leg sector lambda, the
// drop pair (P, Q) of the reordered double sums at source level `level`.
struct LegTask {
  int level;
  int P;
  int Q;
};

inline std::vector<LegTask> leg_tasks(int N) {
  std::vector<LegTask> tasks;
  for (int l = 0; l <= N; ++l) {
    for (int P = l - N; P <= N; ++P) {
      for (int Q = std::max(l - N, l - P - N); Q <= l - P; ++Q) {
        tasks.push_back({l, P, Q});
      }
    }
  }
  return tasks;
}

// Both routes of the chiral exchange sum applied to one basis vector:
//   lhs = sum_n b_n Y_a(Q - n) Y_b(P + n) e_p   (b first, then a)
//   rhs = sum_m b_m Y_b(P - m) Y_a(Q + m) e_p   (a first, then b)
// with b_n = binom(-<a,b>, n) (-1)^n.  Charges are per leg.
struct RouteSums {
  fock::FockVector lhs;
  fock::FockVector rhs;
};

inline RouteSums leg_route_sums(const exact::Rational& a,
                                const exact::Rational& b,
                                const exact::Rational& lambda,
                                const LegTask& task,
                                const fock::Partition& p, int N,
                                vertex::ModeCache* cache) {
  const exact::Rational exponent = -(a * b);
  auto prefactor = [&](int n) -> exact::Rational {
    exact::Rational c = exact::binomial(exponent, n);
    return (n % 2 == 0) ? c : -c;
  };
  const fock::FockVector v = fock::FockVector::basis(lambda, p);
  RouteSums out{fock::FockVector(lambda + a + b),
                fock::FockVector(lambda + a + b)};
  for (int n = 0; n <= task.level - task.P; ++n) {
    auto first = props::detail::braiding_mode(b, task.P + n, lambda, lambda,
                                              N, Mutation::kNone, cache);
    auto second =
        props::detail::braiding_mode(a, task.Q - n, lambda + b, lambda + b, N,
                                     Mutation::kNone, cache);
    out.lhs += second->apply(first->apply(v)).scaled(prefactor(n));
  }
  for (int m = 0; m <= task.level - task.Q; ++m) {
    auto first = props::detail::braiding_mode(a, task.Q + m, lambda, lambda,
                                              N, Mutation::kNone, cache);
    auto second =
        props::detail::braiding_mode(b, task.P - m, lambda + a, lambda + a, N,
                                     Mutation::kNone, cache);
    out.rhs += second->apply(first->apply(v)).scaled(prefactor(m));
  }
  return out;
}

}  // namespace detail

// Verifies two-dimensional locality of the fields A and B at grading cutoff
// N on the diagonal sum.
//
// Gate first: the combined reordering phase exp(i*pi*(aL*bL + aR*bR)) —
// the product of the two per-leg exchange phases under the spacelike
// configuration — must be exactly 1; otherwise the check fails immediately
// and reports the offending phase.  Only then are the reordered mode
// products compared: the per-leg exchange identities are verified
// exhaustively (both routes, every sector/level/drop), and the assembled 2d
// double sums are compared coefficient-wise on the tensor grading for every
// diagonal summand reachable from A and B, exhaustively at total level
// <= N and on a seeded sample of heavier drop tuples.
inline props::VerificationReport check_2d_locality(const TwoDimField& a,
                                            const TwoDimField& b, int N,
                                            unsigned seed = 1,
                                            int max_samples = 1200,
                                            int jobs = 1,
                                            vertex::ModeCache* cache =
                                                nullptr) {
  if (N < 0) throw ConfigError("cutoff must be >= 0");
  props::Stopwatch timer;
  props::VerificationReport report;
  report.suite = "twodim-locality";
  report.params["field_a"] = a.to_string();
  report.params["field_b"] = b.to_string();
  report.params["cutoff"] = N;
  report.params["seed"] = seed;
  report.params["max_samples"] = max_samples;
  report.seed = seed;
  if (cache == nullptr) cache = &vertex::ModeCache::global();

  const exact::Rational aL = a.alpha_left();
  const exact::Rational aR = a.alpha_right();
  const exact::Rational bL = b.alpha_left();
  const exact::Rational bR = b.alpha_right();

  // Combined reordering phase: left legs exchanged one way, right legs the
  // opposite way, scalar prefactors multiplied across the tensor legs.
  const exact::Phase combined =
      exact::Phase(aL * bL) * exact::Phase(aR * bR);
  report.details["combined_phase"] = combined.to_string();
  report.details["phase_gate"] = combined.is_one() ? "pass" : "fail";
  ++report.comparisons;
  if (!combined.is_one()) {
    report.passed = false;
    report.worst_violation = combined.to_string();
    report.elapsed_s = timer.seconds();
    return report;
  }

  // Per-leg exchange identities, exhaustive at cutoff N on each leg.
  props::VerificationReport left = props::check_braiding(aL, bL, N, Mutation::kNone,
                                                  jobs, cache);
  props::VerificationReport right = props::check_braiding(aR, bR, N,
                                                   Mutation::kNone, jobs,
                                                   cache);
  report.details["left_leg"] = {{"status", left.passed ? "pass" : "fail"},
                                {"worst_violation", left.worst_violation}};
  report.details["right_leg"] = {{"status", right.passed ? "pass" : "fail"},
                                 {"worst_violation", right.worst_violation}};
  report.comparisons += left.comparisons + right.comparisons;

  // Diagonal summands reachable from the vacuum by A and B.
  std::vector<std::pair<exact::Rational, exact::Rational>> sectors;
  for (const auto& cand :
       {std::make_pair(exact::Rational(0), exact::Rational(0)),
        std::make_pair(aL, aR), std::make_pair(bL, bR),
        std::make_pair(aL + bL, aR + bR)}) {
    bool seen = false;
    for (const auto& have : sectors) seen = seen || have == cand;
    if (!seen) sectors.push_back(cand);
  }

  // Tensor tuples: a sector pair plus one exchange task per leg.
  const std::vector<detail::LegTask> tasks = detail::leg_tasks(N);
  struct Tuple {
    std::size_t sector;
    std::size_t task_l;
    std::size_t task_r;
  };
  std::vector<Tuple> tuples;
  std::vector<Tuple> pool;
  for (std::size_t si = 0; si < sectors.size(); ++si) {
    for (std::size_t i = 0; i < tasks.size(); ++i) {
      for (std::size_t j = 0; j < tasks.size(); ++j) {
        Tuple t{si, i, j};
        if (tasks[i].level + tasks[j].level <= N &&
            std::abs(tasks[i].P) <= 1 && std::abs(tasks[i].Q) <= 1 &&
            std::abs(tasks[j].P) <= 1 && std::abs(tasks[j].Q) <= 1) {
          tuples.push_back(t);  // always covered
        } else {
          pool.push_back(t);
        }
      }
    }
  }
  const std::size_t exhaustive = tuples.size();
  std::mt19937 rng(seed + 0x2dULL);
  std::size_t budget = max_samples > 0 ? static_cast<std::size_t>(max_samples)
                                       : pool.size();
  if (budget >= pool.size()) {
    tuples.insert(tuples.end(), pool.begin(), pool.end());
  } else {
    for (std::size_t k = 0; k < budget; ++k) {
      std::uniform_int_distribution<std::size_t> pick(k, pool.size() - 1);
      std::swap(pool[k], pool[pick(rng)]);
      tuples.push_back(pool[k]);
    }
  }
  report.details["tensor_tuples"] = tuples.size();
  report.details["tensor_tuples_exhaustive"] = exhaustive;

  // Compare the assembled 2d double sums on every basis pair of each tuple.
  std::vector<exact::Rational> worst(tuples.size(), exact::Rational(0));
  std::vector<long> counts(tuples.size(), 0);
  props::parallel_for(tuples.size(), jobs, [&](std::size_t i) {
    const Tuple& tu = tuples[i];
    const auto& [lamL, lamR] = sectors[tu.sector];
    const detail::LegTask& tl = tasks[tu.task_l];
    const detail::LegTask& tr = tasks[tu.task_r];
    std::vector<detail::RouteSums> right_sums;
    for (const auto& pr : fock::partitions_of(tr.level)) {
      right_sums.push_back(
          detail::leg_route_sums(aR, bR, lamR, tr, pr, N, cache));
    }
    for (const auto& pl : fock::partitions_of(tl.level)) {
      detail::RouteSums rl =
          detail::leg_route_sums(aL, bL, lamL, tl, pl, N, cache);
      for (const detail::RouteSums& rr : right_sums) {
        TensorVector lhs = TensorVector::zero(lamL + aL + bL, lamR + aR + bR);
        TensorVector rhs = lhs;
        lhs.add_product(rl.lhs, rr.lhs, exact::Rational(1));
        rhs.add_product(rl.rhs, rr.rhs, exact::Rational(1));
        lhs -= rhs;
        worst[i] = std::max(worst[i], lhs.max_abs());
        ++counts[i];
      }
    }
  });
  props::ExactViolation tensor_v;
  for (std::size_t i = 0; i < tuples.size(); ++i) {
    tensor_v.observe(worst[i]);
    report.comparisons += counts[i];
  }
  report.details["tensor_violation"] = tensor_v.to_string();

  props::ExactViolation total = tensor_v;
  report.passed = left.passed && right.passed && total.clean();
  report.worst_violation = total.to_string();
  if (!left.passed) report.worst_violation = left.worst_violation;
  if (!right.passed) report.worst_violation = right.worst_violation;
  report.elapsed_s = timer.seconds();
  return report;
}

}  // namespace chiralforge::twodim

#endif  // CHIRALFORGE_TWODIM_FIELD_HPP
