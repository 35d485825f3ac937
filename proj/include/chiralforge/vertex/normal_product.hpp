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

#ifndef CHIRALFORGE_VERTEX_NORMAL_PRODUCT_HPP
#define CHIRALFORGE_VERTEX_NORMAL_PRODUCT_HPP

#include <cmath>
#include <memory>
#include <utility>
#include <vector>

#include "chiralforge/common.hpp"
#include "chiralforge/exact/rational.hpp"
#include "chiralforge/vertex/mode_matrix.hpp"
#include "chiralforge/vertex/series.hpp"

namespace chiralforge::vertex {

/// Squared norms of the creator-exponential components on the vacuum:
/// out[n] = <E^-_{alpha,n} vac, E^-_{alpha,n} vac>.  These equal the q^n
/// coefficients of (1-q)^(-alpha^2), the two-point normalization series of
/// the charge-alpha field; for alpha = 1 every coefficient is 1.
inline std::vector<Rational> two_point_coeffs(const Rational& alpha,
                                              int n_max) {
  std::vector<Rational> out;
  out.reserve(n_max + 1);
  const Rational gamma = -(alpha * alpha);
  Rational sign(1);
  for (int n = 0; n <= n_max; ++n) {
    out.push_back(sign * exact::binomial(gamma, static_cast<unsigned>(n)));
    sign = -sign;
  }
  return out;
}

/// Polynomial energy-bound envelope for the modes of one field:
///   || psi(s) Psi ||  <=  c * (1 + |s|)^r * || (L_0 + 1)^p Psi ||.
/// On a degree-e eigenvector this bounds the block norm by
/// c * (1 + |s|)^r * (1 + e)^p.
struct EnergyEnvelope {
  double c = 0.0;
  double r = 0.0;
  double p = 0.0;

  double block_bound(double s, double degree) const {
    return c * std::pow(1.0 + std::abs(s), r) * std::pow(1.0 + degree, p);
  }
};

/// Envelope for the diagonal tensor product sum_t psi_1(s-t) (x) psi_2(t)
/// from the envelopes of the factors: the peeled-through degree shifts and
/// the finite t-range on each fixed-degree subspace give
///   c' = c_1 c_2,   r' = 2 r_1 + r_2 + ceil(p_1),
///   p' = r_1 + r_2 + 2 ceil(p_1) + p_2,
/// the energy operator now being L_0 (x) 1 + 1 (x) L_0.
inline EnergyEnvelope normal_product_envelope(const EnergyEnvelope& a,
                                              const EnergyEnvelope& b) {
  EnergyEnvelope out;
  const double cp1 = std::ceil(a.p);
  out.c = a.c * b.c;
  out.r = 2.0 * a.r + b.r + cp1;
  out.p = a.r + b.r + 2.0 * cp1 + b.p;
  return out;
}

/// One total mode of the diagonal tensor product of two charged fields on
/// the source sector (beta1, beta2).  The total level drop T splits over the
/// legs as (T - t2, t2); each retained summand pairs the two leg modes.
/// Distinct t2 send a fixed source bi-level to distinct (hence orthogonal)
/// target bi-levels.
struct NormalProductSummand {
  int t2 = 0;  ///< second-leg drop; first leg drops total_drop - t2
  std::shared_ptr<const ModeMatrix> leg1;
  std::shared_ptr<const ModeMatrix> leg2;
};

struct NormalProductMode {
  Rational alpha1, alpha2;
  Rational beta1, beta2;
  int total_drop = 0;
  int cutoff = 0;
  std::vector<NormalProductSummand> summands;

  /// Mode index of the product field carried by this total drop.
  Rational mode_index() const {
    return Rational(total_drop) - alpha1 * beta1 - alpha2 * beta2 -
           (alpha1 * alpha1 + alpha2 * alpha2) / Rational(2);
  }
};

inline NormalProductMode normal_product_mode(
    const Rational& alpha1, const Rational& alpha2, const Rational& beta1,
    const Rational& beta2, int total_drop, int cutoff,
    ModeCache& cache = ModeCache::global()) {
  NormalProductMode m;
  m.alpha1 = alpha1;
  m.alpha2 = alpha2;
  m.beta1 = beta1;
  m.beta2 = beta2;
  m.total_drop = total_drop;
  m.cutoff = cutoff;
  VertexSeries s1(alpha1, beta1, cutoff, Mutation::kNone, &cache);
  VertexSeries s2(alpha2, beta2, cutoff, Mutation::kNone, &cache);
  // Within the truncation, a leg with drop outside [-cutoff, cutoff] has no
  // blocks at all, which bounds the summand range.
  for (int t2 = total_drop - cutoff; t2 <= cutoff; ++t2) {
    const int t1 = total_drop - t2;
    if (t1 < -cutoff || t1 > cutoff) continue;
    auto m1 = s1.mode_for_drop(t1);
    auto m2 = s2.mode_for_drop(t2);
    if (m1->blocks.empty() || m2->blocks.empty()) continue;
    m.summands.push_back({t2, std::move(m1), std::move(m2)});
  }
  return m;
}

}  // namespace chiralforge::vertex

#endif  // CHIRALFORGE_VERTEX_NORMAL_PRODUCT_HPP
