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

#ifndef CHIRALFORGE_FOCK_MODULE_HPP
#define CHIRALFORGE_FOCK_MODULE_HPP

#include <algorithm>
#include <vector>

#include "chiralforge/common.hpp"
#include "chiralforge/exact/rational.hpp"
#include "chiralforge/fock/partition.hpp"
#include "chiralforge/fock/state.hpp"

namespace chiralforge::fock {

/// Hard grading cutoff for a truncated charged module.  Creation operators
/// that would push a state above the cutoff throw TruncationOverflow rather
/// than silently dropping terms, so every computed coefficient is exact.
struct FockTruncation {
  int cutoff = 0;
};

namespace detail {
inline int ceil_div2(int n) { return n >= 0 ? (n + 1) / 2 : -((-n) / 2); }
}  // namespace detail

/// Current mode J_n on a truncated charged module, central element = 1:
///   [J_m, J_n] = m * delta_{m+n},   J_0 = charge,   J_n* = J_{-n}.
/// Positive n removes a part n (with weight n * multiplicity), negative n
/// appends a part |n|, n = 0 scales by the charge.
inline FockVector apply_j(int n, const FockVector& v,
                          const FockTruncation& trunc) {
  if (n == 0) return v.scaled(v.charge());
  FockVector out(v.charge());
  if (n > 0) {
    for (const auto& [p, c] : v.terms()) {
      const long mult = std::count(p.begin(), p.end(), n);
      if (mult == 0) continue;
      Partition q = p;
      q.erase(std::find(q.begin(), q.end(), n));
      out.add_term(q, c * Rational(n) * Rational(mult));
    }
    return out;
  }
  const int k = -n;
  for (const auto& [p, c] : v.terms()) {
    const int new_level = level(p) + k;
    if (new_level > trunc.cutoff) {
      throw TruncationOverflow(new_level, trunc.cutoff);
    }
    Partition q = p;
    q.insert(std::upper_bound(q.begin(), q.end(), k, std::greater<int>()), k);
    out.add_term(q, c);
  }
  return out;
}

/// Virasoro mode from the quadratic (Sugawara) construction at central
/// charge 1:
///   L_n = (1/2) * sum_k :J_{n-k} J_k:
/// The sum is arranged over unordered pairs {a, b} with a + b = n and
/// a <= b; the larger index acts first (that is the normal ordering), and
/// the pair weight is 1 for a < b and 1/2 for a == b.  Pairs with b beyond
/// the top occupied level act as zero and are skipped.
///
/// Mutation::kSugawaraShift drops the {0, 0} pair of L_0, i.e. removes the
/// (1/2) J_0^2 ground-state energy of charged sectors.
inline FockVector apply_l(int n, const FockVector& v,
                          const FockTruncation& trunc,
                          Mutation mutation = Mutation::kNone) {
  FockVector out(v.charge());
  if (v.is_zero()) return out;
  const Rational half(1, 2);
  const int b_min = detail::ceil_div2(n);
  const int b_max = std::max(0, v.max_level());
  for (int b = b_min; b <= b_max; ++b) {
    const int a = n - b;
    if (mutation == Mutation::kSugawaraShift && a == 0 && b == 0) continue;
    FockVector w = apply_j(a, apply_j(b, v, trunc), trunc);
    out += (a == b) ? w.scaled(half) : w;
  }
  return out;
}

/// Exact inner product, fixed by <vacuum, vacuum> = 1, J_n* = J_{-n}, and
/// orthogonality of distinct charge sectors.  Each basis bra is peeled off
/// by moving its modes to the ket side as annihilators.
inline Rational inner(const FockVector& a, const FockVector& b) {
  if (!(a.charge() == b.charge())) return Rational(0);
  const FockTruncation trunc{std::max(a.max_level(), b.max_level())};
  Rational total(0);
  const Partition empty{};
  for (const auto& [p, ca] : a.terms()) {
    FockVector u = b;
    for (int part : p) {
      u = apply_j(part, u, trunc);
      if (u.is_zero()) break;
    }
    const Rational c0 = u.coefficient(empty);
    if (!c0.is_zero()) total += ca * c0;
  }
  return total;
}

/// Squared norm of the ket J_{-p} (vacuum at any charge): the standard
/// symmetric-function weight  z_p = prod_k k^{m_k} m_k!  over the part
/// multiplicities m_k of p.  The full gram() below cross-checks that these
/// are exactly the diagonal entries and that off-diagonal entries vanish.
inline Rational basis_norm(const Partition& p) {
  Rational z(1);
  int run_part = 0;
  int run_len = 0;
  auto flush = [&]() {
    for (int i = 1; i <= run_len; ++i) z *= Rational(run_part) * Rational(i);
  };
  for (int part : p) {
    if (part == run_part) {
      ++run_len;
    } else {
      flush();
      run_part = part;
      run_len = 1;
    }
  }
  flush();
  return z;
}

/// Diagonal Gram weights of the level-n basis, in partitions_of(n) order.
inline std::vector<Rational> basis_norms(int n) {
  const auto& parts = partitions_of(n);
  std::vector<Rational> out;
  out.reserve(parts.size());
  for (const auto& p : parts) out.push_back(basis_norm(p));
  return out;
}

/// Full Gram matrix of the level-n basis of the charge-`charge` module,
/// computed from inner() with no diagonality assumption.
inline std::vector<std::vector<Rational>> gram(const Rational& charge, int n) {
  const auto& parts = partitions_of(n);
  const size_t d = parts.size();
  std::vector<std::vector<Rational>> g(d, std::vector<Rational>(d, Rational(0)));
  std::vector<FockVector> basis;
  basis.reserve(d);
  for (const auto& p : parts) basis.push_back(FockVector::basis(charge, p));
  for (size_t i = 0; i < d; ++i) {
    for (size_t j = i; j < d; ++j) {
      g[i][j] = inner(basis[i], basis[j]);
      g[j][i] = g[i][j];
    }
  }
  return g;
}

/// Conformal degree of a level-n vector at the given charge:
/// charge^2 / 2 + n.  This is the L_0 eigenvalue.
inline Rational degree(const Rational& charge, int n) {
  return charge * charge / Rational(2) + Rational(n);
}

}  // namespace chiralforge::fock

#endif  // CHIRALFORGE_FOCK_MODULE_HPP
