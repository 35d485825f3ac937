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

#ifndef CHIRALFORGE_SECTORS_GROUP_HPP
#define CHIRALFORGE_SECTORS_GROUP_HPP

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "chiralforge/common.hpp"

namespace chiralforge::sectors {

// A finitely generated abelian group presented as Z^r x Z_{n_1} x ... x
// Z_{n_k}.  Elements are integer coordinate tuples of length r + k; torsion
// coordinates are kept reduced into [0, n_i).
class AbelianGroup {
 public:
  using Element = std::vector<long>;

  AbelianGroup(int free_rank, std::vector<long> torsion)
      : free_rank_(free_rank), torsion_(std::move(torsion)) {
    if (free_rank_ < 0) {
      throw ConfigError("group free rank must be non-negative");
    }
    for (long n : torsion_) {
      if (n < 1) {
        throw ConfigError(
            "torsion orders must be positive, got " + std::to_string(n));
      }
    }
  }

  int free_rank() const { return free_rank_; }
  const std::vector<long>& torsion() const { return torsion_; }
  int num_generators() const {
    return free_rank_ + static_cast<int>(torsion_.size());
  }
  bool is_finite() const { return free_rank_ == 0; }

  long order() const {
    if (!is_finite()) {
      throw ConfigError("group has infinite order");
    }
    long n = 1;
    for (long t : torsion_) n *= t;
    return n;
  }

  Element identity() const {
    return Element(static_cast<std::size_t>(num_generators()), 0);
  }

  Element generator(int i) const {
    Element e = identity();
    e.at(static_cast<std::size_t>(i)) = 1;
    return reduce(e);
  }

  Element reduce(Element a) const {
    check_size(a);
    for (std::size_t i = 0; i < torsion_.size(); ++i) {
      long n = torsion_[i];
      long& c = a[static_cast<std::size_t>(free_rank_) + i];
      c %= n;
      if (c < 0) c += n;
    }
    return a;
  }

  Element add(const Element& a, const Element& b) const {
    check_size(a);
    check_size(b);
    Element c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] + b[i];
    return reduce(std::move(c));
  }

  Element neg(const Element& a) const {
    check_size(a);
    Element c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = -a[i];
    return reduce(std::move(c));
  }

  Element scale(long n, const Element& a) const {
    check_size(a);
    Element c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = n * a[i];
    return reduce(std::move(c));
  }

  bool is_identity(const Element& a) const {
    for (long c : reduce(a)) {
      if (c != 0) return false;
    }
    return true;
  }

  // All elements of a finite group, lexicographic in coordinates.
  std::vector<Element> elements() const {
    const long n = order();  // throws on infinite groups
    std::vector<Element> out;
    out.reserve(static_cast<std::size_t>(n));
    Element cur = identity();
    for (long i = 0; i < n; ++i) {
      out.push_back(cur);
      // Increment with carries across the torsion coordinates.
      for (std::size_t j = 0; j < torsion_.size(); ++j) {
        long& c = cur[static_cast<std::size_t>(free_rank_) + j];
        if (++c < torsion_[j]) break;
        c = 0;
      }
    }
    return out;
  }

  std::string element_to_string(const Element& a) const {
    check_size(a);
    std::string s;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i > 0) s += ",";
      s += std::to_string(a[i]);
    }
    return s;
  }

  Element element_from_string(const std::string& s) const {
    Element a;
    std::size_t pos = 0;
    while (pos <= s.size()) {
      std::size_t comma = s.find(',', pos);
      std::string tok = s.substr(
          pos, comma == std::string::npos ? std::string::npos : comma - pos);
      try {
        a.push_back(std::stol(tok));
      } catch (const std::exception&) {
        throw ConfigError("bad group element coordinate '" + tok +
                                 "' in '" + s + "'");
      }
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    check_size(a);
    return reduce(std::move(a));
  }

  std::string to_string() const {
    std::string s;
    if (free_rank_ > 0) {
      s = free_rank_ == 1 ? "Z" : "Z^" + std::to_string(free_rank_);
    }
    for (long n : torsion_) {
      if (!s.empty()) s += " x ";
      s += "Z_" + std::to_string(n);
    }
    return s.empty() ? "trivial" : s;
  }

  friend bool operator==(const AbelianGroup& a, const AbelianGroup& b) {
    return a.free_rank_ == b.free_rank_ && a.torsion_ == b.torsion_;
  }
  friend bool operator!=(const AbelianGroup& a, const AbelianGroup& b) {
    return !(a == b);
  }

  nlohmann::ordered_json to_json() const {
    return {{"free_rank", free_rank_}, {"torsion", torsion_}};
  }

  static AbelianGroup from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("free_rank")) {
      throw ConfigError(
          "group JSON must be {\"free_rank\": r, \"torsion\": [...]}");
    }
    std::vector<long> torsion;
    if (j.contains("torsion")) {
      for (const auto& t : j.at("torsion")) {
        torsion.push_back(t.get<long>());
      }
    }
    return AbelianGroup(j.at("free_rank").get<int>(), std::move(torsion));
  }

 private:
  void check_size(const Element& a) const {
    if (static_cast<int>(a.size()) != num_generators()) {
      throw ConfigError(
          "group element has " + std::to_string(a.size()) +
          " coordinates, expected " + std::to_string(num_generators()));
    }
  }

  int free_rank_;
  std::vector<long> torsion_;
};

}  // namespace chiralforge::sectors

#endif  // CHIRALFORGE_SECTORS_GROUP_HPP
