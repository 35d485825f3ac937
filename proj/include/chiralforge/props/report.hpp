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
// Verification reports: every checker returns a VerificationReport which the
// command layer serializes to a stable, diff-friendly JSON document.

#ifndef CHIRALFORGE_PROPS_REPORT_HPP
#define CHIRALFORGE_PROPS_REPORT_HPP

#include <chrono>
#include <cstdint>
#include <string>
#include <utility>

#include <nlohmann/json.hpp>

#include "chiralforge/common.hpp"
#include "chiralforge/exact/rational.hpp"

namespace chiralforge::props {

using ordered_json = nlohmann::ordered_json;

// Outcome of one verification suite.  `worst_violation` is kept as a string:
// exact suites store a rational ("0" on pass), float suites store a decimal.
struct VerificationReport {
  std::string suite;
  ordered_json params = ordered_json::object();
  bool passed = false;
  std::string worst_violation = "0";
  long comparisons = 0;
  double elapsed_s = 0.0;
  std::uint64_t seed = 0;
  ordered_json details = ordered_json::object();

  ordered_json to_json() const {
    ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["suite"] = suite;
    j["params"] = params;
    j["status"] = passed ? "pass" : "fail";
    j["worst_violation"] = worst_violation;
    j["comparisons"] = comparisons;
    j["elapsed_s"] = elapsed_s;
    j["seed"] = seed;
    j["artifact_git_rev"] = kGitRev;
    if (!details.empty()) j["details"] = details;
    return j;
  }
};

// Tracks the worst (largest-magnitude) exact violation seen by a suite.
class ExactViolation {
 public:
  void observe(const exact::Rational& value) {
    exact::Rational a = value.abs();
    if (a > worst_) worst_ = a;
  }
  bool clean() const { return worst_.is_zero(); }
  const exact::Rational& worst() const { return worst_; }
  std::string to_string() const { return worst_.to_string(); }

  void merge(const ExactViolation& other) {
    if (other.worst_ > worst_) worst_ = other.worst_;
  }

 private:
  exact::Rational worst_{0};
};

// Tracks the worst float-side violation (amount by which a bound is exceeded).
class FloatViolation {
 public:
  void observe(double value) {
    if (value > worst_) worst_ = value;
  }
  bool within(double tol) const { return worst_ <= tol; }
  double worst() const { return worst_; }

  void merge(const FloatViolation& other) {
    if (other.worst_ > worst_) worst_ = other.worst_;
  }

 private:
  double worst_ = 0.0;
};

// Simple wall-clock stopwatch for filling VerificationReport::elapsed_s.
class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

}  // namespace chiralforge::props

#endif  // CHIRALFORGE_PROPS_REPORT_HPP
