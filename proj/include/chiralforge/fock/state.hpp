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

#ifndef CHIRALFORGE_FOCK_STATE_HPP
#define CHIRALFORGE_FOCK_STATE_HPP

#include <map>
#include <string>
#include <utility>

#include "chiralforge/exact/rational.hpp"
#include "chiralforge/fock/partition.hpp"

namespace chiralforge::fock {

using exact::Rational;

/// Finite rational linear combination of partition-basis states in a single
/// charge sector.  The charge is the J_0 eigenvalue of the highest-weight
/// vector; components at different charges never mix inside one vector.
class FockVector {
 public:
  FockVector() : charge_(0) {}
  explicit FockVector(Rational charge) : charge_(std::move(charge)) {}

  static FockVector vacuum(const Rational& charge) {
    FockVector v(charge);
    v.terms_[Partition{}] = Rational(1);
    return v;
  }

  static FockVector basis(const Rational& charge, const Partition& p) {
    FockVector v(charge);
    v.terms_[p] = Rational(1);
    return v;
  }

  const Rational& charge() const { return charge_; }
  const std::map<Partition, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  int max_level() const {
    int m = 0;
    for (const auto& [p, c] : terms_) m = std::max(m, level(p));
    return m;
  }

  Rational coefficient(const Partition& p) const {
    auto it = terms_.find(p);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  void add_term(const Partition& p, const Rational& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(p);
    if (it == terms_.end()) {
      terms_.emplace(p, c);
    } else {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  FockVector& operator+=(const FockVector& o) {
    require_same_charge(o);
    for (const auto& [p, c] : o.terms_) add_term(p, c);
    return *this;
  }

  FockVector& operator-=(const FockVector& o) {
    require_same_charge(o);
    for (const auto& [p, c] : o.terms_) add_term(p, -c);
    return *this;
  }

  friend FockVector operator+(FockVector a, const FockVector& b) {
    return a += b;
  }
  friend FockVector operator-(FockVector a, const FockVector& b) {
    return a -= b;
  }

  FockVector scaled(const Rational& c) const {
    FockVector out(charge_);
    if (c.is_zero()) return out;
    for (const auto& [p, v] : terms_) out.terms_.emplace(p, v * c);
    return out;
  }

  bool operator==(const FockVector& o) const {
    return charge_ == o.charge_ && terms_ == o.terms_;
  }
  bool operator!=(const FockVector& o) const { return !(*this == o); }

  /// Largest absolute coefficient; the magnitude of a residual vector.
  Rational max_abs() const {
    Rational m(0);
    for (const auto& [p, c] : terms_) {
      Rational a = c.abs();
      if (a > m) m = a;
    }
    return m;
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& [p, c] : terms_) {
      if (!s.empty()) s += " + ";
      s += c.to_string() + "*" + partition_to_string(p);
    }
    return s + " @charge " + charge_.to_string();
  }

 private:
  void require_same_charge(const FockVector& o) const {
    if (!(charge_ == o.charge_)) {
      throw ConfigError("fock vector charge mismatch: " + charge_.to_string() +
                        " vs " + o.charge_.to_string());
    }
  }

  Rational charge_;
  std::map<Partition, Rational> terms_;
};

}  // namespace chiralforge::fock

#endif  // CHIRALFORGE_FOCK_STATE_HPP
