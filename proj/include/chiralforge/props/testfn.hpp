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
//
// Finitely supported test functions on a mode grid.  A smeared field
// psi(f) = sum_k f_k * Y_{alpha, offset + k} is described by a rational grid
// offset, an integer support window, complex coefficients, and a declared
// decay profile.  The JSON form lists one entry per stored mode:
//   {"grid_offset": "p/q",
//    "coeffs": [{"s": "p/q", "re": x, "im": y}, ...],
//    "profile": "gaussian" | "bump" | "custom"}
// Gaussian profiles additionally carry their analytic parameters ("sigma",
// "theta0") so tail sums beyond the stored window stay computable after a
// round trip.

#ifndef CHIRALFORGE_PROPS_TESTFN_HPP
#define CHIRALFORGE_PROPS_TESTFN_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "chiralforge/common.hpp"
#include "chiralforge/exact/rational.hpp"

namespace chiralforge::props {

// Coefficients f_k live on the grid s = offset + k for k in [lo, hi].
struct TestFunction {
  exact::Rational offset{0};
  int lo = 0;
  int hi = -1;
  std::vector<std::complex<double>> coeffs;  // size hi - lo + 1

  // Declared decay profile of the ideal function this window truncates.
  // "custom" and "bump" declare the stored window to be the exact support;
  // "gaussian" declares |f_s| = exp(-s^2 / (2 sigma^2)) with phase center
  // theta0, which lets tail sums extend beyond the stored window.
  std::string profile = "custom";
  double sigma = 0.0;
  double theta0 = 0.0;

  int size() const { return hi - lo + 1; }
  bool empty() const { return hi < lo; }

  exact::Rational mode_index(int k) const {
    return offset + exact::Rational(k);
  }

  const std::complex<double>& coeff(int k) const {
    return coeffs.at(static_cast<std::size_t>(k - lo));
  }

  void validate() const {
    if (!empty() &&
        coeffs.size() != static_cast<std::size_t>(hi - lo + 1)) {
      throw ConfigError("test function window does not match coefficient count");
    }
  }

  bool is_real() const {
    for (const auto& c : coeffs) {
      if (c.imag() != 0.0) return false;
    }
    return true;
  }

  // Derivative under the one-parameter rotation group generated by the
  // grading: each mode Y_s is an eigenvector with eigenvalue -s, so the
  // derivative of the smeared field corresponds to f_k -> -i * s_k * f_k.
  TestFunction rotated_derivative() const {
    TestFunction d = *this;
    for (int k = lo; k <= hi; ++k) {
      double s = mode_index(k).to_double();
      d.coeffs[static_cast<std::size_t>(k - lo)] *=
          std::complex<double>(0.0, -s);
    }
    return d;
  }

  double sup_norm() const {
    double m = 0.0;
    for (const auto& c : coeffs) m = std::max(m, std::abs(c));
    return m;
  }

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["grid_offset"] = offset.to_string();
    auto arr = nlohmann::ordered_json::array();
    for (int k = lo; k <= hi; ++k) {
      const std::complex<double>& c = coeffs[static_cast<std::size_t>(k - lo)];
      nlohmann::ordered_json entry;
      entry["s"] = mode_index(k).to_string();
      entry["re"] = c.real();
      entry["im"] = c.imag();
      arr.push_back(entry);
    }
    j["coeffs"] = arr;
    j["profile"] = profile;
    if (profile == "gaussian") {
      j["sigma"] = sigma;
      j["theta0"] = theta0;
    }
    return j;
  }

  static TestFunction from_json(const nlohmann::json& j) {
    TestFunction f;
    f.offset = exact::Rational::from_string(
        j.at("grid_offset").get<std::string>());
    f.profile = j.value("profile", std::string("custom"));
    if (f.profile != "gaussian" && f.profile != "bump" &&
        f.profile != "custom") {
      throw ConfigError("unknown test function profile: " + f.profile);
    }
    f.sigma = j.value("sigma", 0.0);
    f.theta0 = j.value("theta0", 0.0);
    if (f.profile == "gaussian" && f.sigma <= 0.0) {
      throw ConfigError("gaussian test function requires sigma > 0");
    }

    // Collect (k, value) pairs; every listed s must sit on the grid.
    std::vector<std::pair<long, std::complex<double>>> entries;
    for (const auto& c : j.at("coeffs")) {
      exact::Rational s =
          exact::Rational::from_string(c.at("s").get<std::string>());
      exact::Rational k = s - f.offset;
      if (!k.is_integer()) {
        throw ConfigError("test function mode " + s.to_string() +
                          " is off the grid with offset " +
                          f.offset.to_string());
      }
      entries.emplace_back(
          k.to_integer(),
          std::complex<double>(c.value("re", 0.0), c.value("im", 0.0)));
    }
    if (entries.empty()) {
      f.validate();
      return f;  // the zero function: empty window
    }
    long lo = entries.front().first;
    long hi = lo;
    for (const auto& e : entries) {
      lo = std::min(lo, e.first);
      hi = std::max(hi, e.first);
    }
    f.lo = static_cast<int>(lo);
    f.hi = static_cast<int>(hi);
    f.coeffs.assign(static_cast<std::size_t>(hi - lo + 1),
                    std::complex<double>(0.0, 0.0));
    std::vector<bool> seen(f.coeffs.size(), false);
    for (const auto& e : entries) {
      std::size_t idx = static_cast<std::size_t>(e.first - lo);
      if (seen[idx]) {
        throw ConfigError("duplicate test function coefficient at s = " +
                          (f.offset + exact::Rational(e.first)).to_string());
      }
      seen[idx] = true;
      f.coeffs[idx] = e.second;
    }
    f.validate();
    return f;
  }
};

// Discrete Gaussian profile centered at angle theta0 with width sigma:
// f_k = exp(-s_k^2 / (2 sigma^2)) * exp(-i s_k theta0) on s_k = offset + k.
// With theta0 = 0 the coefficients are real, even when offset = 0.
inline TestFunction gaussian_test_function(const exact::Rational& offset,
                                           int lo, int hi, double theta0,
                                           double sigma) {
  if (sigma <= 0.0) throw ConfigError("gaussian width must be positive");
  TestFunction f;
  f.offset = offset;
  f.lo = lo;
  f.hi = hi;
  f.profile = "gaussian";
  f.sigma = sigma;
  f.theta0 = theta0;
  for (int k = lo; k <= hi; ++k) {
    double s = f.mode_index(k).to_double();
    double mag = std::exp(-s * s / (2.0 * sigma * sigma));
    f.coeffs.push_back(mag * std::exp(std::complex<double>(0.0, -s * theta0)));
  }
  return f;
}

}  // namespace chiralforge::props

#endif  // CHIRALFORGE_PROPS_TESTFN_HPP
