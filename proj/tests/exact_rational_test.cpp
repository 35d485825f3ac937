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

#include "chiralforge/exact/rational.hpp"

#include <gtest/gtest.h>

#include <random>
#include <vector>

namespace chiralforge::exact {
namespace {

TEST(Rational, CanonicalizesOnConstruction) {
  EXPECT_EQ(Rational(2, 4), Rational(1, 2));
  EXPECT_EQ(Rational(-2, 4), Rational(1, -2));
  EXPECT_EQ(Rational(0, 7), Rational(0));
  EXPECT_EQ(Rational(6, 3), Rational(2));
  EXPECT_TRUE(Rational(6, 3).is_integer());
}

TEST(Rational, ZeroDenominatorThrows) {
  EXPECT_THROW(Rational(1, 0), ConfigError);
}

TEST(Rational, FromStringRoundTrip) {
  const std::vector<std::string> cases = {"0", "5", "-7", "3/4", "-7/2",
                                          "123456789012345678901/2"};
  for (const auto& s : cases) {
    EXPECT_EQ(Rational::from_string(s).to_string(), s) << s;
  }
  // Non-canonical input parses to the canonical form.
  EXPECT_EQ(Rational::from_string("4/6"), Rational(2, 3));
  EXPECT_EQ(Rational::from_string("-4/6").to_string(), "-2/3");
}

TEST(Rational, FromStringRejectsGarbage) {
  for (const std::string s : {"", "abc", "1/0", "1//2", "1/2/3", "2.5"}) {
    EXPECT_THROW(Rational::from_string(s), ConfigError) << "'" << s << "'";
  }
}

TEST(Rational, FieldAxiomsOnSampledValues) {
  std::mt19937 rng(20260816);
  std::uniform_int_distribution<long> num(-40, 40);
  std::uniform_int_distribution<long> den(1, 12);
  for (int trial = 0; trial < 200; ++trial) {
    const Rational a(num(rng), den(rng));
    const Rational b(num(rng), den(rng));
    const Rational c(num(rng), den(rng));
    EXPECT_EQ(a + b, b + a);
    EXPECT_EQ((a + b) + c, a + (b + c));
    EXPECT_EQ((a + b) * c, a * c + b * c);
    EXPECT_EQ(a - a, Rational(0));
    if (!b.is_zero()) EXPECT_EQ(a / b * b, a);
  }
}

TEST(Rational, DivisionByZeroThrows) {
  EXPECT_THROW(Rational(1) / Rational(0), ConfigError);
}

TEST(Rational, Ordering) {
  EXPECT_LT(Rational(1, 3), Rational(1, 2));
  EXPECT_LT(Rational(-1, 2), Rational(-1, 3));
  EXPECT_GT(Rational(7, 2), Rational(3));
  EXPECT_LE(Rational(2, 4), Rational(1, 2));
  EXPECT_EQ(Rational(-5, 10).abs(), Rational(1, 2));
  EXPECT_EQ(Rational(-3).sign(), -1);
  EXPECT_EQ(Rational(0).sign(), 0);
}

TEST(Rational, ToInteger) {
  EXPECT_EQ(Rational(-6, 2).to_integer(), -3);
  EXPECT_THROW(Rational(1, 2).to_integer(), ConfigError);
}

TEST(Rational, ToDouble) {
  EXPECT_DOUBLE_EQ(Rational(1, 4).to_double(), 0.25);
  EXPECT_DOUBLE_EQ(Rational(-7, 2).to_double(), -3.5);
}

// Integer binomials have a closed form that a few hand values pin down.
TEST(Binomial, IntegerValues) {
  EXPECT_EQ(binomial(Rational(5), 2), Rational(10));
  EXPECT_EQ(binomial(Rational(5), 0), Rational(1));
  EXPECT_EQ(binomial(Rational(5), 6), Rational(0));
  EXPECT_EQ(binomial(Rational(10), 5), Rational(252));
}

// binom(-1, n) = (-1)^n is a known closed-form family.
TEST(Binomial, NegativeOneFamily) {
  Rational expect(1);
  for (unsigned n = 0; n < 12; ++n) {
    EXPECT_EQ(binomial(Rational(-1), n), expect) << n;
    expect = -expect;
  }
}

// binom(1/2, 2) = (1/2)(-1/2)/2 = -1/8, a known closed-form value.
TEST(Binomial, HalfValue) {
  EXPECT_EQ(binomial(Rational(1, 2), 2), Rational(-1, 8));
}

// Pascal recurrence binom(g, n) = binom(g-1, n) + binom(g-1, n-1) holds for
// arbitrary (also non-integer) upper argument.
TEST(Binomial, PascalRecurrenceOnSampledValues) {
  std::mt19937 rng(7);
  std::uniform_int_distribution<long> num(-30, 30);
  std::uniform_int_distribution<long> den(1, 9);
  for (int trial = 0; trial < 100; ++trial) {
    const Rational g(num(rng), den(rng));
    for (unsigned n = 1; n <= 6; ++n) {
      EXPECT_EQ(binomial(g, n),
                binomial(g - Rational(1), n) + binomial(g - Rational(1), n - 1));
    }
  }
}

TEST(PowInt, Values) {
  EXPECT_EQ(pow_int(Rational(2), 10), Rational(1024));
  EXPECT_EQ(pow_int(Rational(2, 3), 0), Rational(1));
  EXPECT_EQ(pow_int(Rational(2, 3), -2), Rational(9, 4));
  EXPECT_EQ(pow_int(Rational(-1, 2), 3), Rational(-1, 8));
}

TEST(RationalHash, EqualValuesHashEqual) {
  std::hash<Rational> h;
  EXPECT_EQ(h(Rational(2, 4)), h(Rational(1, 2)));
}

}  // namespace
}  // namespace chiralforge::exact
