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

#include "chiralforge/exact/phase.hpp"

#include <gtest/gtest.h>

#include <complex>
#include <random>

namespace chiralforge::exact {
namespace {

TEST(Phase, NormalizesExponentIntoWindow) {
  EXPECT_EQ(Phase(Rational(5, 2)), Phase(Rational(1, 2)));
  EXPECT_EQ(Phase(Rational(-1, 2)), Phase(Rational(3, 2)));
  EXPECT_EQ(Phase(Rational(2)), Phase::one());
  EXPECT_EQ(Phase(Rational(-7)), Phase::minus_one());
  EXPECT_TRUE(Phase(Rational(4)).is_one());
}

TEST(Phase, ImaginaryUnitSquaresToMinusOne) {
  const Phase i(Rational(1, 2));
  EXPECT_EQ(i * i, Phase::minus_one());
  EXPECT_EQ(i.pow(4), Phase::one());
  EXPECT_FALSE(i.is_real());
}

TEST(Phase, ConjugateIsInverse) {
  std::mt19937 rng(11);
  std::uniform_int_distribution<long> num(-20, 20);
  std::uniform_int_distribution<long> den(1, 12);
  for (int trial = 0; trial < 100; ++trial) {
    const Phase p{Rational(num(rng), den(rng))};
    EXPECT_TRUE((p * p.conj()).is_one());
    EXPECT_EQ(p.inverse(), p.conj());
  }
}

TEST(Phase, PowAddsExponents) {
  const Phase third(Rational(2, 3));
  EXPECT_EQ(third.pow(3), Phase::one());
  EXPECT_EQ(third.pow(-1), third.conj());
  EXPECT_EQ(third.pow(2), third * third);
}

TEST(Phase, GroupLawMatchesComplexMultiplication) {
  std::mt19937 rng(5);
  std::uniform_int_distribution<long> num(-20, 20);
  std::uniform_int_distribution<long> den(1, 12);
  for (int trial = 0; trial < 100; ++trial) {
    const Phase a{Rational(num(rng), den(rng))};
    const Phase b{Rational(num(rng), den(rng))};
    const std::complex<double> prod = (a * b).to_complex();
    const std::complex<double> ref = a.to_complex() * b.to_complex();
    EXPECT_NEAR(std::abs(prod - ref), 0.0, 1e-12);
    EXPECT_NEAR(std::abs((a * b).to_complex()), 1.0, 1e-12);
  }
}

TEST(Phase, ToString) {
  EXPECT_EQ(Phase::one().to_string(), "1");
  EXPECT_EQ(Phase::minus_one().to_string(), "-1");
  EXPECT_EQ(Phase(Rational(1, 2)).to_string(), "exp(i*pi*1/2)");
}

TEST(ApproxPhase, MatchesExactPhase) {
  for (long n = -8; n <= 8; ++n) {
    const Rational q(n, 3);
    const ApproxPhase a = ApproxPhase::from_exponent(q.to_double());
    EXPECT_TRUE(a.approx_equal(ApproxPhase(Phase(q)), 1e-12)) << n;
  }
}

TEST(ApproxPhase, ToleranceBoundary) {
  const ApproxPhase one = ApproxPhase::from_exponent(0.0);
  EXPECT_TRUE(one.approx_one());
  EXPECT_FALSE(ApproxPhase::from_exponent(1e-3).approx_one());
  const ApproxPhase a = ApproxPhase::from_exponent(0.25);
  EXPECT_TRUE((a * a.conj()).approx_one());
}

}  // namespace
}  // namespace chiralforge::exact
