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

#include <cmath>
#include <complex>

#include <gtest/gtest.h>

#include "chiralforge/twodim/field.hpp"
#include "chiralforge/twodim/smearing.hpp"

namespace chiralforge {
namespace {

using exact::Rational;

TEST(TwoDimField, SpinGateAdmitsIntegersRejectsHalfIntegers) {
  twodim::TwoDimField conj(Rational(1), Rational(-1), "sigma/sigma-bar");
  EXPECT_TRUE(conj.spin().is_zero());
  EXPECT_TRUE(conj.dim_left() == Rational(1, 2));
  EXPECT_TRUE(conj.dim_right() == Rational(1, 2));
  EXPECT_EQ(conj.to_string(), "(1, -1) [sigma/sigma-bar]");

  twodim::TwoDimField chiral(Rational(2), Rational(0));
  EXPECT_TRUE(chiral.spin() == Rational(2));

  // D_L - D_R = 1/2 - 0 is not an integer.
  EXPECT_THROW(twodim::TwoDimField(Rational(1), Rational(0)), ConfigError);
  EXPECT_THROW(twodim::TwoDimField(Rational(1, 2), Rational(0)), ConfigError);
}

TEST(TwoDimField, TensorVectorAlgebra) {
  auto v = twodim::TensorVector::zero(Rational(0), Rational(0));
  fock::FockVector u1 = fock::FockVector::basis(Rational(0), {1});
  fock::FockVector u2 = fock::FockVector::basis(Rational(0), {2});
  v.add_product(u1, u2, Rational(3));
  v.add_product(u1, u2, Rational(-3));
  EXPECT_TRUE(v.is_zero());

  v.add_product(u1, u2, Rational(1, 2));
  EXPECT_TRUE(v.max_abs() == Rational(1, 2));

  auto w = twodim::TensorVector::basis(Rational(0), Rational(0), {1}, {2});
  w -= v;
  EXPECT_TRUE(w.max_abs() == Rational(1, 2));

  fock::FockVector wrong = fock::FockVector::basis(Rational(1), {1});
  EXPECT_THROW(v.add_product(wrong, u2, Rational(1)), ConfigError);

  auto other = twodim::TensorVector::zero(Rational(1), Rational(0));
  EXPECT_THROW(v -= other, ConfigError);
}

TEST(TwoDimMode, VacuumLeadingModeHasUnitTensorCoefficient) {
  twodim::TwoDimField f(Rational(1), Rational(-1));
  // Leading modes out of the vacuum summand: s = -D on each leg.
  auto mode = twodim::build_2d_mode(f, Rational(-1, 2), Rational(-1, 2),
                                    Rational(0), Rational(0), 4);
  EXPECT_TRUE(mode.target_left() == Rational(1));
  EXPECT_TRUE(mode.target_right() == Rational(-1));

  auto omega = twodim::TensorVector::basis(Rational(0), Rational(0), {}, {});
  auto image = mode.apply(omega);
  ASSERT_EQ(image.terms.size(), 1u);
  const auto& [key, coeff] = *image.terms.begin();
  EXPECT_TRUE(key.first.empty());
  EXPECT_TRUE(key.second.empty());
  EXPECT_TRUE(coeff == Rational(1));
}

TEST(TwoDimMode, IdentityFieldKeepsDiagonalSummandPointwise) {
  twodim::TwoDimField id(Rational(0), Rational(0));
  auto mode = twodim::build_2d_mode(id, Rational(0), Rational(0), Rational(0),
                                    Rational(0), 4);
  auto v = twodim::TensorVector::basis(Rational(0), Rational(0), {2, 1}, {1});
  auto image = mode.apply(v);
  ASSERT_EQ(image.terms.size(), 1u);
  EXPECT_TRUE(image.terms.begin()->second == Rational(1));
  EXPECT_EQ(image.terms.begin()->first.first, (fock::Partition{2, 1}));

  // A nonzero mode of the identity field annihilates everything.
  auto raise = twodim::build_2d_mode(id, Rational(1), Rational(0),
                                     Rational(0), Rational(0), 4);
  EXPECT_TRUE(raise.apply(v).is_zero());
}

TEST(TwoDimMode, PairedShiftsAndWrongSummandRejected) {
  twodim::TwoDimField f(Rational(1), Rational(-1));
  auto mode = twodim::build_2d_mode(f, Rational(-3, 2), Rational(1, 2),
                                    Rational(1), Rational(-1), 4);
  // Both legs shift together by the field's charge pair.
  EXPECT_TRUE(mode.source_left() == Rational(1));
  EXPECT_TRUE(mode.source_right() == Rational(-1));
  EXPECT_TRUE(mode.target_left() == Rational(2));
  EXPECT_TRUE(mode.target_right() == Rational(-2));

  auto off_diagonal = twodim::TensorVector::basis(Rational(1), Rational(0),
                                                  {}, {});
  EXPECT_THROW(mode.apply(off_diagonal), ConfigError);
}

TEST(TwoDimMode, OffGridModeIndexThrows) {
  twodim::TwoDimField f(Rational(1), Rational(-1));
  // t = s + alpha*beta + D = 0 + 0 + 1/2 is not an integer.
  EXPECT_THROW(twodim::build_2d_mode(f, Rational(0), Rational(-1, 2),
                                     Rational(0), Rational(0), 4),
               ConfigError);
}

TEST(TwoDimLocality, ConjugatePairPassesAtCutoffTwo) {
  twodim::TwoDimField a(Rational(1), Rational(-1));
  auto report = twodim::check_2d_locality(a, a, /*N=*/2, /*seed=*/7,
                                          /*max_samples=*/200, /*jobs=*/2);
  EXPECT_TRUE(report.passed);
  EXPECT_EQ(report.worst_violation, "0");
  EXPECT_EQ(report.details["combined_phase"].get<std::string>(), "1");
  EXPECT_EQ(report.details["phase_gate"].get<std::string>(), "pass");
  EXPECT_EQ(report.details["left_leg"]["status"].get<std::string>(), "pass");
  EXPECT_EQ(report.details["right_leg"]["status"].get<std::string>(), "pass");
  EXPECT_EQ(report.details["tensor_violation"].get<std::string>(), "0");
  EXPECT_GT(report.comparisons, 100);
}

TEST(TwoDimLocality, SameSignHalfChargeFailsThePhaseGate) {
  twodim::TwoDimField a(Rational(1, 2), Rational(1, 2));
  auto report = twodim::check_2d_locality(a, a, /*N=*/2);
  EXPECT_FALSE(report.passed);
  EXPECT_EQ(report.details["phase_gate"].get<std::string>(), "fail");
  EXPECT_EQ(report.worst_violation, "exp(i*pi*1/2)");
  // Gate-first contract: no tensor comparisons happen after a failed gate.
  EXPECT_EQ(report.comparisons, 1);
}

TEST(TwoDimLocality, SameSignUnitChargePassesIntegral) {
  // <alpha, beta> = 1 on each leg: combined phase exp(2 pi i) = 1.
  twodim::TwoDimField a(Rational(1), Rational(1));
  auto report = twodim::check_2d_locality(a, a, /*N=*/1);
  EXPECT_TRUE(report.passed);
  EXPECT_EQ(report.details["combined_phase"].get<std::string>(), "1");
}

TEST(TwoDimLocality, TrivialFieldsPass) {
  twodim::TwoDimField id(Rational(0), Rational(0));
  auto report = twodim::check_2d_locality(id, id, /*N=*/1);
  EXPECT_TRUE(report.passed);
  EXPECT_EQ(report.worst_violation, "0");
}

TEST(Smearing, RequiresEnvelopeConstants) {
  twodim::TwoDimField f(Rational(1), Rational(-1));
  auto fn = props::gaussian_test_function(Rational(-1, 2), -2, 2, 0.0, 1.5);
  twodim::EnvelopeTable empty;
  try {
    twodim::smear_2d(f, fn, fn, 3, empty);
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("energy-bound"), std::string::npos);
  }
}

TEST(Smearing, SingleModeEqualsScaledMode) {
  twodim::TwoDimField f(Rational(1), Rational(-1));
  auto table = twodim::fit_envelope_table({Rational(1), Rational(-1)}, 3);

  props::TestFunction one;
  one.offset = Rational(-1, 2);
  one.lo = 0;
  one.hi = 0;
  one.coeffs = {std::complex<double>(1.0, 0.0)};

  props::TestFunction scaled = one;
  scaled.coeffs = {std::complex<double>(0.3, -0.2)};

  auto unit = twodim::smear_2d(f, one, one, 3, table);
  auto scl = twodim::smear_2d(f, scaled, scaled, 3, table);
  ASSERT_EQ(unit.left.matrix.rows, scl.left.matrix.rows);
  double worst = 0.0;
  for (int r = 0; r < unit.left.matrix.rows; ++r) {
    for (int c = 0; c < unit.left.matrix.cols; ++c) {
      worst = std::max(worst,
                       std::abs(scl.left.matrix.at(r, c) -
                                std::complex<double>(0.3, -0.2) *
                                    unit.left.matrix.at(r, c)));
    }
  }
  EXPECT_EQ(worst, 0.0);

  // The leading mode maps the vacuum to the shifted vacuum with weight 1.
  EXPECT_EQ(unit.left.matrix.at(0, 0), std::complex<double>(1.0, 0.0));

  // Custom profile: the window is the exact support, so no tail.
  EXPECT_EQ(unit.left.tail_const, 0.0);
  EXPECT_GT(unit.left.window_const, 0.0);
  EXPECT_EQ(unit.combined_tail(), 0.0);
}

TEST(Smearing, ZeroFunctionGivesZeroOperatorAndZeroTail) {
  twodim::TwoDimField f(Rational(1), Rational(-1));
  auto table = twodim::fit_envelope_table({Rational(1), Rational(-1)}, 3);
  props::TestFunction zero;  // empty window
  auto sm = twodim::smear_2d(f, zero, zero, 3, table);
  for (int r = 0; r < sm.left.matrix.rows; ++r) {
    for (int c = 0; c < sm.left.matrix.cols; ++c) {
      EXPECT_EQ(sm.left.matrix.at(r, c), std::complex<double>(0.0, 0.0));
    }
  }
  EXPECT_EQ(sm.left.window_const, 0.0);
  EXPECT_EQ(sm.left.tail_const, 0.0);
  EXPECT_EQ(sm.combined_tail(), 0.0);
}

TEST(Smearing, WiderGaussianWindowKeepsSharedTermsAndShrinksTail) {
  twodim::TwoDimField f(Rational(1), Rational(-1));
  auto table = twodim::fit_envelope_table({Rational(1), Rational(-1)}, 4);
  auto f8 = props::gaussian_test_function(Rational(-1, 2), -8, 8, 0.8, 1.5);
  auto f12 = props::gaussian_test_function(Rational(-1, 2), -12, 12, 0.8, 1.5);

  // Restricting the wide window to the narrow one reproduces the narrow
  // operator exactly: extra terms only add, they never perturb.
  auto f12_restricted = f12;
  for (int k = f12.lo; k <= f12.hi; ++k) {
    if (k < f8.lo || k > f8.hi) {
      f12_restricted.coeffs[static_cast<std::size_t>(k - f12.lo)] = {0.0,
                                                                     0.0};
    }
  }
  auto narrow = twodim::smear_2d(f, f8, f8, 4, table);
  auto wide_restricted = twodim::smear_2d(f, f12_restricted, f12_restricted,
                                          4, table);
  double worst = 0.0;
  for (int r = 0; r < narrow.left.matrix.rows; ++r) {
    for (int c = 0; c < narrow.left.matrix.cols; ++c) {
      worst = std::max(worst, std::abs(narrow.left.matrix.at(r, c) -
                                       wide_restricted.left.matrix.at(r, c)));
    }
  }
  EXPECT_EQ(worst, 0.0);

  // Tail bounds shrink strictly with the window, per leg and combined.
  auto wide = twodim::smear_2d(f, f12, f12, 4, table);
  EXPECT_GT(narrow.left.tail_const, 0.0);
  EXPECT_LT(wide.left.tail_const, narrow.left.tail_const);
  EXPECT_LT(wide.combined_tail(), narrow.combined_tail());

  // The window + tail total is window-independent up to float noise.
  EXPECT_NEAR(wide.left.total_const(), narrow.left.total_const(),
              1e-9 * narrow.left.total_const());
}

TEST(Smearing, GridMismatchPropagates) {
  twodim::TwoDimField f(Rational(1), Rational(-1));
  auto table = twodim::fit_envelope_table({Rational(1), Rational(-1)}, 3);
  // Integer grid is off the charge-1 vacuum grid Z - 1/2.
  auto bad = props::gaussian_test_function(Rational(0), -2, 2, 0.0, 1.5);
  EXPECT_THROW(twodim::smear_2d(f, bad, bad, 3, table), ConfigError);
}

TEST(CommutatorDecay, CommutingSingleModesOnDistinctLegsAreExactlyZero) {
  // A acts only through its left leg, B only through its right leg.
  twodim::TwoDimField a(Rational(2), Rational(0));
  twodim::TwoDimField b(Rational(0), Rational(2));
  auto table = twodim::fit_envelope_table(
      {Rational(0), Rational(2)}, 4);

  props::TestFunction mode_a;  // Y_{2, -2}: the leading charge-2 mode
  mode_a.offset = Rational(0);
  mode_a.lo = -2;
  mode_a.hi = -2;
  mode_a.coeffs = {std::complex<double>(1.0, 0.0)};

  props::TestFunction ident;  // Y_{0, 0} = identity
  ident.offset = Rational(0);
  ident.lo = 0;
  ident.hi = 0;
  ident.coeffs = {std::complex<double>(1.0, 0.0)};

  auto report = twodim::commutator_decay(a, b, mode_a, ident, ident, mode_a,
                                         {2, 3, 4}, table);
  for (const auto& row : report.details["norms"]) {
    EXPECT_EQ(row["norm"].get<double>(), 0.0);
  }
  // Custom profiles carry no ordering data: flagged, but still computed.
  EXPECT_TRUE(report.details["configuration_warning"].get<bool>());
  EXPECT_TRUE(report.passed);
}

// Two copies of the same integral field at spacelike-separated gaussian
// centers: the continuum commutator vanishes identically, so the computed
// norm is pure truncation error and shrinks as the cutoff grows.
TEST(CommutatorDecay, SpacelikeGaussianPairDecays) {
  twodim::TwoDimField f(Rational(1), Rational(-1));
  auto table = twodim::fit_envelope_table({Rational(1), Rational(-1)}, 4);
  auto fl_a = props::gaussian_test_function(Rational(-1, 2), -10, 10, 1.0,
                                            2.5);
  auto fr_a = props::gaussian_test_function(Rational(-1, 2), -10, 10, -1.0,
                                            2.5);
  auto fl_b = props::gaussian_test_function(Rational(-1, 2), -10, 10, -1.0,
                                            2.5);
  auto fr_b = props::gaussian_test_function(Rational(-1, 2), -10, 10, 1.0,
                                            2.5);
  auto report = twodim::commutator_decay(f, f, fl_a, fr_a, fl_b, fr_b, {4, 6},
                                         table);
  EXPECT_TRUE(report.details["spacelike"].get<bool>());
  EXPECT_FALSE(report.details["configuration_warning"].get<bool>());
  const auto& norms = report.details["norms"];
  ASSERT_EQ(norms.size(), 2u);
  EXPECT_GT(norms[0]["norm"].get<double>(), 1e-2);
  EXPECT_LT(norms[1]["norm"].get<double>(),
            0.5 * norms[0]["norm"].get<double>());
  EXPECT_TRUE(report.passed);
}

// Conjugate-charge pair with overlapping same-side supports: each leg's
// operator product has a first-order pole, so the commutator carries a
// contact term and its norm settles at a positive value instead of
// decaying with the cutoff.
TEST(CommutatorDecay, TimelikeControlIsFlaggedAndDoesNotDecay) {
  twodim::TwoDimField a(Rational(1), Rational(-1));
  twodim::TwoDimField b(Rational(-1), Rational(1));
  auto table = twodim::fit_envelope_table({Rational(1), Rational(-1)}, 4);
  // Same ordering on both legs: not spacelike.
  auto f_a = props::gaussian_test_function(Rational(-1, 2), -5, 5, 1.0, 1.0);
  auto f_b = props::gaussian_test_function(Rational(-1, 2), -5, 5, -1.0, 1.0);
  auto report = twodim::commutator_decay(a, b, f_a, f_a, f_b, f_b, {4, 6},
                                         table);
  EXPECT_FALSE(report.details["spacelike"].get<bool>());
  EXPECT_TRUE(report.details["configuration_warning"].get<bool>());
  EXPECT_TRUE(report.passed);  // no decay assertion for flagged runs
  const auto& norms = report.details["norms"];
  ASSERT_EQ(norms.size(), 2u);
  EXPECT_GT(norms[0]["norm"].get<double>(), 1.0);
  EXPECT_GT(norms[1]["norm"].get<double>(),
            0.9 * norms[0]["norm"].get<double>());
}

}  // namespace
}  // namespace chiralforge
