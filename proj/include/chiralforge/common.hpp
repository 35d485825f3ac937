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

#ifndef CHIRALFORGE_COMMON_HPP
#define CHIRALFORGE_COMMON_HPP

#include <optional>
#include <stdexcept>
#include <string>

namespace chiralforge {

inline constexpr const char* kSchemaVersion = "1";

#ifdef CHIRALFORGE_GIT_REV
inline constexpr const char* kGitRev = CHIRALFORGE_GIT_REV;
#else
inline constexpr const char* kGitRev = "unknown";
#endif

/// Deliberate single-fault perturbations of the engine.  Each one models a
/// classic implementation bug; the verification suites are required to catch
/// every mutation they claim sensitivity to, which guards the test bench
/// against vacuous passes.
enum class Mutation {
  kNone,
  /// Sign of the exponent of the annihilator-side exponential is flipped.
  kEplusSign,
  /// The (1/2) J_0^2 term of the degree operator is dropped, removing the
  /// charge-squared/2 shift of the lowest eigenvalue.
  kSugawaraShift,
  /// The charge relabeling applied by a primary mode shifts the target charge
  /// by twice the field charge (classic double-application bug), which
  /// desynchronizes downstream mode grids.
  kCalphaOffset,
  /// The binomial prefactor series in the exchange-relation check is cut at a
  /// fixed order instead of running until contributions vanish.
  kBinomialTruncation,
};

inline std::optional<Mutation> mutation_from_string(const std::string& s) {
  if (s.empty() || s == "none") return Mutation::kNone;
  if (s == "eplus-sign") return Mutation::kEplusSign;
  if (s == "sugawara-shift") return Mutation::kSugawaraShift;
  if (s == "calpha-offset") return Mutation::kCalphaOffset;
  if (s == "binomial-truncation") return Mutation::kBinomialTruncation;
  return std::nullopt;
}

inline std::string to_string(Mutation m) {
  switch (m) {
    case Mutation::kNone: return "none";
    case Mutation::kEplusSign: return "eplus-sign";
    case Mutation::kSugawaraShift: return "sugawara-shift";
    case Mutation::kCalphaOffset: return "calpha-offset";
    case Mutation::kBinomialTruncation: return "binomial-truncation";
  }
  return "none";
}

/// Raised when an operation would need a state of degree above the requested
/// truncation.  Silent truncation is never allowed: either the caller sized
/// the working space so every intermediate fits, or the computation aborts.
class TruncationOverflow : public std::runtime_error {
 public:
  TruncationOverflow(int needed_level, int cutoff)
      : std::runtime_error("truncation overflow: state of level " +
                           std::to_string(needed_level) +
                           " exceeds cutoff " + std::to_string(cutoff)),
        needed_level_(needed_level),
        cutoff_(cutoff) {}

  int needed_level() const { return needed_level_; }
  int cutoff() const { return cutoff_; }

 private:
  int needed_level_;
  int cutoff_;
};

/// Raised when a mode index is requested off the charge-shifted grid, or a
/// configuration value is structurally invalid (e.g. malformed spec file).
class ConfigError : public std::invalid_argument {
 public:
  explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace chiralforge

#endif  // CHIRALFORGE_COMMON_HPP
