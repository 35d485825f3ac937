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

#ifndef CHIRALFORGE_EXACT_RATIONAL_HPP
#define CHIRALFORGE_EXACT_RATIONAL_HPP

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <ostream>
#include <string>

#include "chiralforge/common.hpp"

namespace chiralforge::exact {

/// Arbitrary-precision rational scalar.  Thin value wrapper over GMP's
/// canonicalizing mpq type; every instance is always in lowest terms with a
/// positive denominator.  Serialized form is "p/q" (or "p" for integers).
class Rational {
 public:
  Rational() : v_(0) {}
  Rational(long n) : v_(n) {}  // NOLINT: implicit by design, scalar type
  Rational(long num, long den) : v_(num, den) {
    if (den == 0) throw ConfigError("rational with zero denominator");
    v_.canonicalize();
  }
  explicit Rational(const mpq_class& q) : v_(q) { v_.canonicalize(); }

  /// Parses "p/q" or "p".  Throws ConfigError on malformed input.
  static Rational from_string(const std::string& s) {
    mpq_class q;
    if (s.empty() || q.set_str(s, 10) != 0) {
      throw ConfigError("malformed rational: '" + s + "'");
    }
    if (q.get_den() == 0) throw ConfigError("rational with zero denominator");
    q.canonicalize();
    return Rational(q);
  }

  Rational operator-() const { return Rational(mpq_class(-v_)); }
  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw ConfigError("rational division by zero");
    v_ /= o.v_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.v_ == b.v_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) {
    return a.v_ != b.v_;
  }
  friend bool operator<(const Rational& a, const Rational& b) {
    return a.v_ < b.v_;
  }
  friend bool operator<=(const Rational& a, const Rational& b) {
    return a.v_ <= b.v_;
  }
  friend bool operator>(const Rational& a, const Rational& b) {
    return a.v_ > b.v_;
  }
  friend bool operator>=(const Rational& a, const Rational& b) {
    return a.v_ >= b.v_;
  }

  bool is_zero() const { return sgn(v_) == 0; }
  bool is_integer() const { return v_.get_den() == 1; }
  int sign() const { return sgn(v_); }

  Rational abs() const { return Rational(mpq_class(::abs(v_))); }

  /// Integer value; only valid when is_integer() and the value fits in long.
  long to_integer() const {
    if (!is_integer()) throw ConfigError("to_integer on non-integer rational");
    if (!v_.get_num().fits_slong_p()) {
      throw ConfigError("integer rational out of long range");
    }
    return v_.get_num().get_si();
  }

  double to_double() const { return v_.get_d(); }

  std::string to_string() const { return v_.get_str(); }

  const mpq_class& raw() const { return v_; }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.v_;
  }

 private:
  mpq_class v_;
};

/// gamma*(gamma-1)*...*(gamma-n+1) / n! — the generalized binomial
/// coefficient binom(gamma, n) for rational gamma, exact.
inline Rational binomial(const Rational& gamma, unsigned n) {
  Rational num(1);
  Rational g = gamma;
  for (unsigned i = 0; i < n; ++i) {
    num *= g - Rational(static_cast<long>(i));
  }
  Rational fact(1);
  for (unsigned i = 2; i <= n; ++i) fact *= Rational(static_cast<long>(i));
  return num / fact;
}

/// r^k for integer k (negative k inverts; r must be nonzero then).
inline Rational pow_int(const Rational& r, long k) {
  if (k == 0) return Rational(1);
  Rational base = k > 0 ? r : Rational(1) / r;
  long e = k > 0 ? k : -k;
  Rational out(1);
  while (e > 0) {
    if (e & 1) out *= base;
    base *= base;
    e >>= 1;
  }
  return out;
}

}  // namespace chiralforge::exact

template <>
struct std::hash<chiralforge::exact::Rational> {
  size_t operator()(const chiralforge::exact::Rational& r) const {
    return std::hash<std::string>()(r.to_string());
  }
};

#endif  // CHIRALFORGE_EXACT_RATIONAL_HPP
