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

#ifndef CHIRALFORGE_EXACT_PHASE_HPP
#define CHIRALFORGE_EXACT_PHASE_HPP

#include <cmath>
#include <complex>
#include <string>

#include "chiralforge/exact/rational.hpp"

namespace chiralforge::exact {

/// Exact root of unity e^{i pi q} with q a rational kept modulo 2.
/// Multiplication is addition of exponents; equality is exact.  This is the
/// scalar type for braiding/statistics data, where every phase that occurs is
/// of this form as long as charges have rational pairings.
class Phase {
 public:
  Phase() : q_(0) {}
  /// The phase e^{i pi q}.
  explicit Phase(Rational q) : q_(normalize(std::move(q))) {}

  static Phase one() { return Phase(Rational(0)); }
  static Phase minus_one() { return Phase(Rational(1)); }

  /// Exponent q in [0, 2).
  const Rational& exponent() const { return q_; }

  Phase operator*(const Phase& o) const { return Phase(q_ + o.q_); }
  Phase& operator*=(const Phase& o) {
    q_ = normalize(q_ + o.q_);
    return *this;
  }
  Phase conj() const { return Phase(-q_); }
  Phase inverse() const { return conj(); }
  Phase pow(long k) const { return Phase(q_ * Rational(k)); }

  bool operator==(const Phase& o) const { return q_ == o.q_; }
  bool operator!=(const Phase& o) const { return q_ != o.q_; }

  bool is_one() const { return q_.is_zero(); }
  bool is_minus_one() const { return q_ == Rational(1); }
  bool is_real() const { return is_one() || is_minus_one(); }

  std::complex<double> to_complex() const {
    const double a = M_PI * q_.to_double();
    return {std::cos(a), std::sin(a)};
  }

  std::string to_string() const {
    if (is_one()) return "1";
    if (is_minus_one()) return "-1";
    return "exp(i*pi*" + q_.to_string() + ")";
  }

 private:
  static Rational normalize(Rational q) {
    // Reduce q modulo 2 into [0, 2): q -= 2*floor(q/2).
    mpz_class fl;
    mpq_class half = q.raw() / 2;
    mpz_fdiv_q(fl.get_mpz_t(), half.get_num().get_mpz_t(),
               half.get_den().get_mpz_t());
    return Rational(mpq_class(q.raw() - 2 * mpq_class(fl)));
  }

  Rational q_;
};

/// Floating-point unit complex number with tolerant comparison.  Fallback
/// scalar for phase data that is not an exact root of unity (irrational
/// pairings); the exact path never routes through this type.
class ApproxPhase {
 public:
  ApproxPhase() : z_(1.0, 0.0) {}
  explicit ApproxPhase(std::complex<double> z) : z_(z) {}
  explicit ApproxPhase(const Phase& p) : z_(p.to_complex()) {}
  /// The phase e^{i pi q} for real q.
  static ApproxPhase from_exponent(double q) {
    return ApproxPhase(std::complex<double>(std::cos(M_PI * q),
                                            std::sin(M_PI * q)));
  }

  std::complex<double> value() const { return z_; }
  ApproxPhase operator*(const ApproxPhase& o) const {
    return ApproxPhase(z_ * o.z_);
  }
  ApproxPhase conj() const { return ApproxPhase(std::conj(z_)); }

  static constexpr double kTol = 1e-12;
  bool approx_equal(const ApproxPhase& o, double tol = kTol) const {
    return std::abs(z_ - o.z_) <= tol;
  }
  bool approx_one(double tol = kTol) const {
    return std::abs(z_ - std::complex<double>(1.0, 0.0)) <= tol;
  }

 private:
  std::complex<double> z_;
};

}  // namespace chiralforge::exact

#endif  // CHIRALFORGE_EXACT_PHASE_HPP
