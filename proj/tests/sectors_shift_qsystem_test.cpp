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

#include <gtest/gtest.h>

#include <string>
#include <vector>

#include "chiralforge/common.hpp"
#include "chiralforge/exact/rational.hpp"
#include "chiralforge/sectors/group.hpp"
#include "chiralforge/sectors/qsystem.hpp"
#include "chiralforge/sectors/shift_fields.hpp"
#include "chiralforge/sectors/spec.hpp"

namespace chiralforge::sectors {
namespace {

using exact::Rational;

TEST(MonomialTest, AlgebraOfFormalWords) {
  Monomial v = Monomial::symbol("V0");
  Monomial w = Monomial::symbol("V1");
  EXPECT_TRUE(Monomial::one().is_one());
  EXPECT_EQ(v * w, w * v);
  EXPECT_TRUE((v * v.adjoint()).is_one());
  EXPECT_EQ((v * v).to_string(), "V0^2");
  EXPECT_EQ(v.adjoint().to_string(), "V0^-1");
  EXPECT_NE(v, w);
}

TEST(MonomialMatrixTest, CompositionAdjointPartiality) {
  // 3 slots; a shifts 0->1->2 (partial: column 2 undefined).
  MonomialMatrix a(3);
  a.set(0, 1, Monomial::symbol("V0"));
  a.set(1, 2, Monomial::one());
  EXPECT_EQ(a.defined_count(), 2);

  MonomialMatrix sq = a * a;
  EXPECT_EQ(sq.defined_count(), 1);
  ASSERT_TRUE(sq.at(0).has_value());
  EXPECT_EQ(sq.at(0)->row, 2u);
  EXPECT_EQ(sq.at(0)->coeff, Monomial::symbol("V0"));

  MonomialMatrix adj = a.adjoint();
  ASSERT_TRUE(adj.at(1).has_value());
  EXPECT_EQ(adj.at(1)->row, 0u);
  EXPECT_EQ(adj.at(1)->coeff, Monomial::symbol("V0").adjoint());

  long common = 0;
  EXPECT_TRUE(MonomialMatrix::equal_on_common(a, a, &common));
  EXPECT_EQ(common, 2);

  // No shared defined column -> WindowError, not a vacuous pass.
  MonomialMatrix b(3);
  b.set(2, 0, Monomial::one());
  EXPECT_THROW(MonomialMatrix::equal_on_common(a, b, &common), WindowError);
}

TEST(ShiftFieldTableTest, LabelsAndCocycle) {
  ShiftFieldTable table(AbelianGroup(1, {2}), 2);
  // Labels: [-2,2] x [0,2) = 10 slots.
  EXPECT_EQ(table.labels().size(), 10u);
  EXPECT_TRUE(table.index_of({0, 1}).has_value());
  EXPECT_FALSE(table.index_of({3, 0}).has_value());

  // V^{g,h} wraps exactly when the torsion coordinates overflow.
  EXPECT_TRUE(table.v_cocycle({0, 1}, {0, 0}).is_one());
  EXPECT_EQ(table.v_cocycle({0, 1}, {0, 1}), Monomial::symbol("V0"));
  // Identity rows/columns never carry a symbol.
  EXPECT_TRUE(table.v_cocycle({0, 0}, {0, 1}).is_one());
  EXPECT_TRUE(table.v_cocycle({1, 0}, {-1, 1}).is_one());
}

// On Z_2 the square of the charged field is V times the identity: every
// diagonal slot of psi^1 psi^1 carries exactly the symbol V.
TEST(ShiftFieldTableTest, Z2SquareIsVTimesIdentity) {
  ShiftFieldTable table(AbelianGroup(0, {2}), 8);
  const MonomialMatrix p = table.psi({1});
  const MonomialMatrix sq = p * p;
  ASSERT_EQ(sq.dim(), 2u);
  for (std::size_t c = 0; c < sq.dim(); ++c) {
    ASSERT_TRUE(sq.at(c).has_value());
    EXPECT_EQ(sq.at(c)->row, c);
    EXPECT_EQ(sq.at(c)->coeff, Monomial::symbol("V0"));
  }
}

// On Z all cocycles are trivial and products fuse: psi^g psi^h = psi^{g+h}.
TEST(ShiftFieldTableTest, FreeFactorFusesWithTrivialCocycle) {
  ShiftFieldTable table(AbelianGroup(1, {}), 8);
  EXPECT_TRUE(table.v_cocycle({3}, {-5}).is_one());
  long common = 0;
  EXPECT_TRUE(MonomialMatrix::equal_on_common(
      table.psi({2}) * table.psi({3}), table.psi({5}), &common));
  EXPECT_GT(common, 0);
}

TEST(ShiftFieldTableTest, WindowTooSmallRaises) {
  ShiftFieldTable tiny(AbelianGroup(1, {}), 1);
  // A shift by 3 cannot land inside [-1, 1] from any slot of [-1, 1].
  EXPECT_THROW(tiny.psi({3}), WindowError);
  // build_shift_fields probes generator products: window 0 cannot hold
  // psi^{1} at all.
  EXPECT_THROW(build_shift_fields(AbelianGroup(1, {}), 0), WindowError);
}

TEST(ShiftFieldCommutationTest, FreeTorsionAndMixedGroups) {
  for (const AbelianGroup& g :
       {AbelianGroup(1, {}), AbelianGroup(0, {2}), AbelianGroup(0, {2, 3})}) {
    ShiftFieldTable table = build_shift_fields(g);
    props::VerificationReport report = check_shift_field_commutation(table);
    EXPECT_TRUE(report.passed) << g.to_string();
    EXPECT_EQ(report.worst_violation, "0") << g.to_string();
    EXPECT_GT(report.comparisons, 3) << g.to_string();
  }
}

TEST(ShiftFieldCommutationTest, MixedFreeTorsionGroup) {
  ShiftFieldTable table = build_shift_fields(AbelianGroup(1, {2}), 4);
  EXPECT_TRUE(check_shift_field_commutation(table).passed);
}

TEST(IntertwinerShiftCheckTest, ExchangeRelationHolds) {
  for (const AbelianGroup& g :
       {AbelianGroup(1, {}), AbelianGroup(0, {2}), AbelianGroup(0, {2, 3}),
        AbelianGroup(1, {2})}) {
    ShiftFieldTable table(g, 4);
    props::VerificationReport report = charged_intertwiner_shiftcheck(table);
    EXPECT_TRUE(report.passed) << g.to_string();
  }
}

// The exchange relation inserts the shifted symbol: psi^g x[c] picks up
// x[c] itself, never x[c - g].
TEST(IntertwinerShiftCheckTest, DiagonalShiftIsByPlusG) {
  ShiftFieldTable table(AbelianGroup(1, {}), 3);
  const MonomialMatrix p = table.psi({1});
  const MonomialMatrix lhs = p * table.graded_diagonal({0});
  // Column at label 2 maps to label 1 with coefficient x[2].
  const auto col = table.index_of({2});
  ASSERT_TRUE(col.has_value());
  ASSERT_TRUE(lhs.at(*col).has_value());
  EXPECT_EQ(lhs.at(*col)->coeff, Monomial::symbol("x[2]"));
  const MonomialMatrix wrong = table.graded_diagonal(AbelianGroup::Element{
                                   -1}) *
                               p;
  long common = 0;
  EXPECT_FALSE(MonomialMatrix::equal_on_common(lhs, wrong, &common));
}

SectorSpec even_lattice_z2() {
  AbelianGroup g(0, {2});
  return SectorSpec(g, {KappaSpec::from_gram("lat", g, {{Rational(2)}})});
}

TEST(PointedQSystemTest, Z2AllLawsPass) {
  SectorSpec spec = even_lattice_z2();
  auto [q, report] = lr_qsystem(spec.group, spec);
  EXPECT_TRUE(report.passed);
  EXPECT_EQ(q.summands(), 2);
  EXPECT_EQ(report.worst_violation, "0");
  // Every named law is present and passing.
  std::vector<std::string> expected{"summand_count",   "unit_counit",
                                    "associativity",   "normalization",
                                    "commutativity",   "statistical_phase"};
  const auto& checks = report.details["checks"];
  ASSERT_EQ(checks.size(), expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i) {
    EXPECT_EQ(checks[i]["check"], expected[i]);
    EXPECT_EQ(checks[i]["status"], "pass") << expected[i];
  }
}

// Flipping the braiding phase on one leg only (no conjugate-leg
// compensation) breaks commutativity and the statistics of the mutated
// summand, and nothing else.
TEST(PointedQSystemTest, SingleLegMutationFailsCommutativity) {
  SectorSpec spec = even_lattice_z2();
  auto [q, report] = lr_qsystem(spec.group, spec, QMutation::kSingleLegEps);
  EXPECT_FALSE(report.passed);
  EXPECT_EQ(q.doubled_braiding({1}, {1}), exact::Phase::minus_one());
  for (const auto& check : report.details["checks"]) {
    const std::string name = check["check"].get<std::string>();
    if (name == "commutativity" || name == "statistical_phase") {
      EXPECT_EQ(check["status"], "fail") << name;
    } else {
      EXPECT_EQ(check["status"], "pass") << name;
    }
  }
}

// The honest doubled braiding neutralizes any bicharacter phase: even a
// family with eps(1,1) = -1 (charge square 1 on Z_2) yields a commutative
// diagonal Q-system, because the conjugate leg cancels the phase.
TEST(PointedQSystemTest, ConjugateLegNeutralizesPhases) {
  AbelianGroup g(0, {2});
  SectorSpec spec(g, {KappaSpec::from_gram("odd", g, {{Rational(1)}})});
  auto [q, report] = lr_qsystem(g, spec);
  EXPECT_EQ(q.eps_leg1({1}, {1}), exact::Phase::minus_one());
  EXPECT_EQ(q.doubled_braiding({1}, {1}), exact::Phase::one());
  EXPECT_TRUE(report.passed);
}

TEST(PointedQSystemTest, TrivialGroupIsTrivialExtension) {
  AbelianGroup g(0, {});
  SectorSpec spec(g, {KappaSpec::from_charges("t", g, {})});
  auto [q, report] = lr_qsystem(g, spec);
  EXPECT_TRUE(report.passed);
  EXPECT_EQ(q.summands(), 1);
}

TEST(PointedQSystemTest, InfiniteGroupRejected) {
  AbelianGroup g(1, {});
  SectorSpec spec(g, {KappaSpec::from_charges("a", g, {Rational(1)})});
  EXPECT_THROW(lr_qsystem(g, spec), ConfigError);
  // Mutation on the trivial group has no slot to act on.
  AbelianGroup t(0, {});
  SectorSpec ts(t, {KappaSpec::from_charges("t", t, {})});
  EXPECT_THROW(lr_qsystem(t, ts, QMutation::kSingleLegEps), ConfigError);
}

TEST(PointedQSystemTest, Z2xZ3BruteForce) {
  AbelianGroup g(0, {2, 3});
  SectorSpec spec(
      g, {KappaSpec::from_gram("d", g,
                               {{Rational(2), Rational(0)},
                                {Rational(0), Rational(6)}})});
  auto [q, report] = lr_qsystem(g, spec);
  EXPECT_TRUE(report.passed);
  EXPECT_EQ(q.summands(), 6);
  EXPECT_GT(report.comparisons, 6 * 6 * 6);
}

}  // namespace
}  // namespace chiralforge::sectors
