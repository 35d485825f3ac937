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

#ifndef CHIRALFORGE_VERTEX_EXP_MODES_HPP
#define CHIRALFORGE_VERTEX_EXP_MODES_HPP

#include "chiralforge/common.hpp"
#include "chiralforge/exact/rational.hpp"
#include "chiralforge/fock/module.hpp"
#include "chiralforge/fock/partition.hpp"
#include "chiralforge/fock/state.hpp"

namespace chiralforge::vertex {

using exact::Rational;
using fock::FockTruncation;
using fock::FockVector;
using fock::Partition;

/// Weight of the partition mu inside the expanded exponential
/// exp(c * sum_{k>=1} J_{+-k} x^k / k): the coefficient of the monomial
/// J_{+-mu} at order x^{|mu|} is prod_k c^{m_k} / (k^{m_k} m_k!), where m_k
/// is the multiplicity of the part k in mu.
inline Rational exp_partition_weight(const Rational& c, const Partition& mu) {
  Rational w(1);
  int run_part = 0;
  int run_len = 0;
  auto flush = [&]() {
    for (int i = 1; i <= run_len; ++i) {
      w = w * c / (Rational(run_part) * Rational(i));
    }
  };
  for (int part : mu) {
    if (part == run_part) {
      ++run_len;
    } else {
      flush();
      run_part = part;
      run_len = 1;
    }
  }
  flush();
  return w;
}

/// Degree-n component of the annihilator-side exponential
///   E^+_{alpha,n} = sum_{mu |- n} prod_k [(-alpha/k)^{m_k} / m_k!] J_mu,
/// applied to v.  All J_k in the monomial have k > 0, so the level drops by
/// exactly n.  Mutation::kEplusSign flips the sign of the exponent, i.e.
/// uses +alpha in place of -alpha.
inline FockVector eplus_apply(const Rational& alpha, int n,
                              const FockVector& v, const FockTruncation& trunc,
                              Mutation mutation = Mutation::kNone) {
  if (n < 0) throw ConfigError("eplus_apply: negative degree");
  const Rational c = (mutation == Mutation::kEplusSign) ? alpha : -alpha;
  FockVector out(v.charge());
  for (const auto& mu : fock::partitions_of(n)) {
    const Rational w = exp_partition_weight(c, mu);
    FockVector u = v;
    for (int k : mu) {
      u = fock::apply_j(k, u, trunc);
      if (u.is_zero()) break;
    }
    out += u.scaled(w);
  }
  return out;
}

/// Degree-n component of the creator-side exponential
///   E^-_{alpha,n} = sum_{mu |- n} prod_k [(alpha/k)^{m_k} / m_k!] J_{-mu},
/// applied to v.  The level rises by exactly n.
inline FockVector eminus_apply(const Rational& alpha, int n,
                               const FockVector& v,
                               const FockTruncation& trunc) {
  if (n < 0) throw ConfigError("eminus_apply: negative degree");
  FockVector out(v.charge());
  for (const auto& mu : fock::partitions_of(n)) {
    const Rational w = exp_partition_weight(alpha, mu);
    FockVector u = v;
    for (int k : mu) u = fock::apply_j(-k, u, trunc);
    out += u.scaled(w);
  }
  return out;
}

}  // namespace chiralforge::vertex

#endif  // CHIRALFORGE_VERTEX_EXP_MODES_HPP
