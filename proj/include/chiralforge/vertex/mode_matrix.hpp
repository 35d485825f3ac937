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

#ifndef CHIRALFORGE_VERTEX_MODE_MATRIX_HPP
#define CHIRALFORGE_VERTEX_MODE_MATRIX_HPP

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "chiralforge/common.hpp"
#include "chiralforge/exact/rational.hpp"
#include "chiralforge/exact/sparse_block.hpp"
#include "chiralforge/fock/module.hpp"
#include "chiralforge/fock/partition.hpp"
#include "chiralforge/fock/state.hpp"
#include "chiralforge/vertex/exp_modes.hpp"

namespace chiralforge::vertex {

using exact::SparseBlock;

/// One Fourier mode of a charged primary field, as exact level-block
/// matrices on a truncated source module.
///
/// The field of charge alpha maps the charge-beta module to the module of
/// charge alpha + beta.  Its admissible mode indices on that source form the
/// shifted grid  s in Z - alpha*beta - D  with D = alpha^2 / 2, and the mode
/// with index s lowers the level by the integer  t = s + alpha*beta + D.
/// Level l of the source is sent to level l - t of the target, so the whole
/// mode is a direct sum of rectangular blocks, one per source level.
struct ModeMatrix {
  Rational alpha;  ///< field charge
  Rational s;      ///< mode index on the charge-shifted grid
  Rational beta;   ///< source sector charge
  int t = 0;       ///< integer level drop of this mode
  int cutoff = 0;  ///< top retained level on both sides
  Mutation mutation = Mutation::kNone;
  /// Keyed by source level l; present exactly when 0 <= l - t <= cutoff.
  std::map<int, SparseBlock> blocks;

  Rational target_charge() const {
    // kCalphaOffset models a double charge relabeling; downstream code that
    // chains modes then lands on the wrong grid.
    if (mutation == Mutation::kCalphaOffset) return beta + alpha + alpha;
    return beta + alpha;
  }

  const SparseBlock* block(int src_level) const {
    auto it = blocks.find(src_level);
    return it == blocks.end() ? nullptr : &it->second;
  }

  /// Applies the mode to a vector of the source module.  Components whose
  /// image would land below level 0 vanish identically; components whose
  /// image would land above the cutoff abort with TruncationOverflow.
  FockVector apply(const FockVector& v) const {
    if (!(v.charge() == beta)) {
      throw ConfigError("mode applied to wrong sector: expected charge " +
                        beta.to_string() + ", got " + v.charge().to_string());
    }
    FockVector out(target_charge());
    // Group the input by level and multiply block-wise.
    std::map<int, std::vector<Rational>> columns;
    for (const auto& [p, c] : v.terms()) {
      const int l = fock::level(p);
      if (l - t < 0) continue;
      if (l > cutoff || l - t > cutoff) {
        throw TruncationOverflow(std::max(l, l - t), cutoff);
      }
      auto [it, fresh] = columns.try_emplace(l);
      if (fresh) it->second.assign(fock::level_dimension(l), Rational(0));
      it->second[fock::partition_index(p)] = c;
    }
    for (auto& [l, x] : columns) {
      const SparseBlock* b = block(l);
      if (b == nullptr) continue;  // structurally zero block
      const std::vector<Rational> y = b->apply(x);
      const auto& target_parts = fock::partitions_of(l - t);
      for (size_t i = 0; i < y.size(); ++i) {
        if (!y[i].is_zero()) out.add_term(target_parts[i], y[i]);
      }
    }
    return out;
  }
};

/// Builds the mode matrix of index s of the charge-alpha field on the
/// truncated charge-beta module:
///   Y_{alpha,s}|_level l = sum_{j >= max(t,0)}^{l} E^-_{alpha,j-t} E^+_{alpha,j}
/// with t = s + alpha*beta + D the integer level drop.  A mode index off the
/// charge-shifted grid raises ConfigError.
inline ModeMatrix vertex_mode(const Rational& alpha, const Rational& s,
                              const Rational& beta, int cutoff,
                              Mutation mutation = Mutation::kNone) {
  const Rational drop = s + alpha * beta + alpha * alpha / Rational(2);
  if (!drop.is_integer()) {
    throw ConfigError("mode index " + s.to_string() +
                      " is off the charge grid for field charge " +
                      alpha.to_string() + " on sector " + beta.to_string() +
                      " (level drop " + drop.to_string() + " not integral)");
  }
  if (cutoff < 0) throw ConfigError("vertex_mode: negative cutoff");
  ModeMatrix m;
  m.alpha = alpha;
  m.s = s;
  m.beta = beta;
  m.t = static_cast<int>(drop.to_integer());
  m.cutoff = cutoff;
  m.mutation = mutation;
  const fock::FockTruncation trunc{cutoff};
  for (int l = 0; l <= cutoff; ++l) {
    const int lt = l - m.t;
    if (lt < 0 || lt > cutoff) continue;
    const auto& src_parts = fock::partitions_of(l);
    SparseBlock b(fock::level_dimension(lt), fock::level_dimension(l));
    for (size_t col = 0; col < src_parts.size(); ++col) {
      const FockVector u = FockVector::basis(beta, src_parts[col]);
      FockVector w(beta);
      for (int j = std::max(m.t, 0); j <= l; ++j) {
        w += eminus_apply(alpha, j - m.t,
                          eplus_apply(alpha, j, u, trunc, mutation), trunc);
      }
      for (const auto& [q, c] : w.terms()) {
        b.set(static_cast<int>(fock::partition_index(q)),
              static_cast<int>(col), c);
      }
    }
    m.blocks.emplace(l, std::move(b));
  }
  return m;
}

}  // namespace chiralforge::vertex

#endif  // CHIRALFORGE_VERTEX_MODE_MATRIX_HPP
