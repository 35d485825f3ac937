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

#include "chiralforge/fock/module.hpp"

#include <gtest/gtest.h>

#include <vector>

#include "chiralforge/fock/partition.hpp"
#include "chiralforge/fock/state.hpp"

namespace chiralforge::fock {
namespace {

using exact::Rational;

// Known values of the partition counting function p(0..10).
TEST(Partitions, CountsMatchKnownTable) {
  const std::vector<int> p = {1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42};
  for (size_t n = 0; n < p.size(); ++n) {
    EXPECT_EQ(level_dimension(static_cast<int>(n)), p[n]) << n;
  }
}

TEST(Partitions, DescendingLexOrderAtLevelFour) {
  const std::vector<Partition> expect = {
      {4}, {3, 1}, {2, 2}, {2, 1, 1}, {1, 1, 1, 1}};
  EXPECT_EQ(partitions_of(4), expect);
}

TEST(Partitions, IndexInvertsEnumeration) {
  for (int n = 0; n <= 8; ++n) {
    const auto& all = partitions_of(n);
    for (size_t i = 0; i < all.size(); ++i) {
      EXPECT_EQ(partition_index(all[i]), static_cast<int>(i));
      EXPECT_EQ(level(all[i]), n);
    }
  }
}

TEST(FockVector, ArithmeticAndBookkeeping) {
  FockVector v = FockVector::vacuum(Rational(1));
  EXPECT_EQ(v.charge(), Rational(1));
  EXPECT_EQ(v.max_level(), 0);
  FockVector w = FockVector::basis(Rational(1), {2, 1});
  w += v;
  EXPECT_EQ(w.max_level(), 3);
  w -= v;
  EXPECT_EQ(w, FockVector::basis(Rational(1), {2, 1}));
  EXPECT_TRUE((w - w).is_zero());
  EXPECT_EQ(w.scaled(Rational(-3, 2)).max_abs(), Rational(3, 2));
  EXPECT_THROW(w += FockVector::vacuum(Rational(0)), ConfigError);
}

TEST(ApplyJ, AnnihilatorCreatorAndCharge) {
  const FockTruncation trunc{6};
  const Rational alpha(2, 3);
  const FockVector vac = FockVector::vacuum(alpha);
  // J_0 is multiplication by the charge.
  EXPECT_EQ(apply_j(0, vac, trunc), vac.scaled(alpha));
  // Positive modes kill the vacuum.
  EXPECT_TRUE(apply_j(2, vac, trunc).is_zero());
  // Two creators build the expected basis state with coefficient 1.
  const FockVector v = apply_j(-1, apply_j(-2, vac, trunc), trunc);
  EXPECT_EQ(v, FockVector::basis(alpha, {2, 1}));
  // J_1 on (1,1): multiplicity 2, mode 1 -> coefficient 2.
  const FockVector w = apply_j(1, FockVector::basis(alpha, {1, 1}), trunc);
  EXPECT_EQ(w, FockVector::basis(alpha, {1}).scaled(Rational(2)));
  // J_3 on (2,1): no part 3 -> zero.
  EXPECT_TRUE(apply_j(3, FockVector::basis(alpha, {2, 1}), trunc).is_zero());
}

TEST(ApplyJ, OverflowIsAnErrorNotSilentTruncation) {
  const FockTruncation trunc{3};
  const FockVector v = FockVector::basis(Rational(0), {2, 1});
  EXPECT_THROW(apply_j(-1, v, trunc), TruncationOverflow);
  try {
    apply_j(-2, v, trunc);
    FAIL() << "expected overflow";
  } catch (const TruncationOverflow& e) {
    EXPECT_EQ(e.needed_level(), 5);
    EXPECT_EQ(e.cutoff(), 3);
  }
}

// Current-algebra relation [J_m, J_n] = m delta_{m+n} with unit central
// element, verified exactly on every basis state of low levels.
TEST(ApplyJ, CommutatorIsHeisenberg) {
  for (const Rational& alpha : {Rational(0), Rational(1), Rational(-1, 2)}) {
    for (int m = -4; m <= 4; ++m) {
      for (int n = -4; n <= 4; ++n) {
        for (int l = 0; l <= 5; ++l) {
          const FockTruncation t{l + std::abs(m) + std::abs(n)};
          for (const auto& p : partitions_of(l)) {
            const FockVector v = FockVector::basis(alpha, p);
            const FockVector lhs = apply_j(m, apply_j(n, v, t), t) -
                                   apply_j(n, apply_j(m, v, t), t);
            const FockVector rhs =
                (m + n == 0) ? v.scaled(Rational(m)) : FockVector(alpha);
            EXPECT_EQ(lhs, rhs) << "m=" << m << " n=" << n;
          }
        }
      }
    }
  }
}

TEST(Inner, VacuumNormalizationAndOrthogonality) {
  const FockVector vac0 = FockVector::vacuum(Rational(0));
  const FockVector vac1 = FockVector::vacuum(Rational(1));
  EXPECT_EQ(inner(vac0, vac0), Rational(1));
  EXPECT_EQ(inner(vac0, vac1), Rational(0));
  EXPECT_EQ(inner(FockVector::basis(Rational(0), {1}), vac0), Rational(0));
}

// J_{-n} and J_n are mutually adjoint for the inner product.
TEST(Inner, CurrentModesAreAdjoint) {
  const Rational alpha(1);
  const FockTruncation t{7};
  for (int n = 1; n <= 3; ++n) {
    for (int la = 0; la <= 3; ++la) {
      for (int lb = 0; lb <= 3; ++lb) {
        for (const auto& pa : partitions_of(la)) {
          for (const auto& pb : partitions_of(lb)) {
            const FockVector a = FockVector::basis(alpha, pa);
            const FockVector b = FockVector::basis(alpha, pb);
            EXPECT_EQ(inner(apply_j(-n, a, t), b), inner(a, apply_j(n, b, t)));
          }
        }
      }
    }
  }
}

// The Gram matrix is diagonal with the standard symmetric-function weights
// z_p = prod_k k^{m_k} m_k!, independent of the charge.
TEST(Gram, DiagonalWithClosedFormWeights) {
  for (const Rational& alpha : {Rational(0), Rational(1), Rational(-3, 2)}) {
    for (int n = 0; n <= 6; ++n) {
      const auto g = gram(alpha, n);
      const auto z = basis_norms(n);
      for (size_t i = 0; i < g.size(); ++i) {
        for (size_t j = 0; j < g.size(); ++j) {
          EXPECT_EQ(g[i][j], i == j ? z[i] : Rational(0))
              << "n=" << n << " i=" << i << " j=" << j;
        }
      }
    }
  }
}

TEST(Gram, LowLevelPatterns) {
  // Level 2 in order (2), (1,1): weights 2 and 2.
  const auto z2 = basis_norms(2);
  EXPECT_EQ(z2, (std::vector<Rational>{Rational(2), Rational(2)}));
  // Level 3 in order (3), (2,1), (1,1,1): weights 3, 2, 6.
  const auto z3 = basis_norms(3);
  EXPECT_EQ(z3, (std::vector<Rational>{Rational(3), Rational(2), Rational(6)}));
}

TEST(ApplyL, VacuumValues) {
  const FockTruncation t{4};
  const Rational alpha(3);
  const FockVector vac = FockVector::vacuum(alpha);
  // L_0 on the highest-weight vector: charge^2/2.
  EXPECT_EQ(apply_l(0, vac, t), vac.scaled(Rational(9, 2)));
  // L_{-1} on the highest-weight vector: charge * J_{-1}.
  EXPECT_EQ(apply_l(-1, vac, t),
            FockVector::basis(alpha, {1}).scaled(alpha));
  // L_{-2} on the chargeless vacuum: (1/2) J_{-1}^2 only.
  const FockVector vac0 = FockVector::vacuum(Rational(0));
  EXPECT_EQ(apply_l(-2, vac0, t),
            FockVector::basis(Rational(0), {1, 1}).scaled(Rational(1, 2)));
  // Positive modes annihilate the highest-weight vector.
  EXPECT_TRUE(apply_l(1, vac, t).is_zero());
  EXPECT_TRUE(apply_l(2, vac, t).is_zero());
}

TEST(ApplyL, DegreeOperatorIsDiagonal) {
  const Rational alpha(1, 2);
  for (int l = 0; l <= 6; ++l) {
    const FockTruncation t{l};
    for (const auto& p : partitions_of(l)) {
      const FockVector v = FockVector::basis(alpha, p);
      EXPECT_EQ(apply_l(0, v, t), v.scaled(degree(alpha, l)));
    }
  }
}

TEST(Degree, ClosedForm) {
  EXPECT_EQ(degree(Rational(1), 3), Rational(7, 2));
  EXPECT_EQ(degree(Rational(0), 0), Rational(0));
  EXPECT_EQ(degree(Rational(-2), 1), Rational(3));
}

// Central charge 1 Virasoro relation, exactly:
// [L_m, L_n] = (m-n) L_{m+n} + delta_{m+n} (m^3-m)/12.
TEST(ApplyL, VirasoroCommutator) {
  for (const Rational& alpha : {Rational(0), Rational(1), Rational(2, 3)}) {
    for (int m = -3; m <= 3; ++m) {
      for (int n = -3; n <= 3; ++n) {
        for (int l = 0; l <= 4; ++l) {
          const FockTruncation t{l + std::abs(m) + std::abs(n) + 1};
          for (const auto& p : partitions_of(l)) {
            const FockVector v = FockVector::basis(alpha, p);
            const FockVector lhs = apply_l(m, apply_l(n, v, t), t) -
                                   apply_l(n, apply_l(m, v, t), t);
            FockVector rhs = apply_l(m + n, v, t).scaled(Rational(m - n));
            if (m + n == 0) {
              const Rational central(
                  static_cast<long>(m) * m * m - m, 12);
              rhs += v.scaled(central);
            }
            EXPECT_EQ(lhs, rhs) << "m=" << m << " n=" << n << " alpha="
                                << alpha.to_string();
          }
        }
      }
    }
  }
}

// Mixed relation [L_m, J_j] = -j J_{j+m}, exactly.
TEST(ApplyL, CurrentIsWeightOnePrimary) {
  const Rational alpha(1);
  for (int m = -3; m <= 3; ++m) {
    for (int j = -3; j <= 3; ++j) {
      for (int l = 0; l <= 4; ++l) {
        const FockTruncation t{l + std::abs(m) + std::abs(j) + 1};
        for (const auto& p : partitions_of(l)) {
          const FockVector v = FockVector::basis(alpha, p);
          const FockVector lhs = apply_l(m, apply_j(j, v, t), t) -
                                 apply_j(j, apply_l(m, v, t), t);
          const FockVector rhs = apply_j(j + m, v, t).scaled(Rational(-j));
          EXPECT_EQ(lhs, rhs) << "m=" << m << " j=" << j;
        }
      }
    }
  }
}

// L_n and L_{-n} are mutually adjoint.
TEST(ApplyL, ModesAreAdjoint) {
  const Rational alpha(1, 2);
  const FockTruncation t{8};
  for (int n = 1; n <= 3; ++n) {
    for (int la = 0; la <= 3; ++la) {
      for (int lb = 0; lb <= 3; ++lb) {
        for (const auto& pa : partitions_of(la)) {
          for (const auto& pb : partitions_of(lb)) {
            const FockVector a = FockVector::basis(alpha, pa);
            const FockVector b = FockVector::basis(alpha, pb);
            EXPECT_EQ(inner(apply_l(-n, a, t), b), inner(a, apply_l(n, b, t)));
          }
        }
      }
    }
  }
}

// The degree-shift mutation removes the charge^2/2 ground-state energy, and
// with it the charged-sector Virasoro relation.
TEST(ApplyL, SugawaraShiftMutationIsDetectable) {
  const FockTruncation t{4};
  const FockVector vac1 = FockVector::vacuum(Rational(1));
  const FockVector mutated = apply_l(0, vac1, t, Mutation::kSugawaraShift);
  EXPECT_TRUE(mutated.is_zero());
  EXPECT_NE(mutated, apply_l(0, vac1, t));
  // Chargeless sectors are blind to this mutation at n = 0 on the vacuum,
  // but not at level >= 1 where the level part still acts.
  const FockVector v = FockVector::basis(Rational(0), {1});
  EXPECT_EQ(apply_l(0, v, t, Mutation::kSugawaraShift), apply_l(0, v, t));
}

}  // namespace
}  // namespace chiralforge::fock
