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

#ifndef CHIRALFORGE_FOCK_PARTITION_HPP
#define CHIRALFORGE_FOCK_PARTITION_HPP

#include <map>
#include <mutex>
#include <numeric>
#include <string>
#include <vector>

#include "chiralforge/common.hpp"

namespace chiralforge::fock {

/// A partition (i_1 >= i_2 >= ... >= i_m > 0) labels the basis state obtained
/// by applying the lowering currents J_{-i_1}...J_{-i_m} to a highest-weight
/// vector.  The empty partition labels the highest-weight vector itself.
using Partition = std::vector<int>;

inline int level(const Partition& p) {
  return std::accumulate(p.begin(), p.end(), 0);
}

inline std::string partition_to_string(const Partition& p) {
  std::string s = "(";
  for (size_t i = 0; i < p.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(p[i]);
  }
  return s + ")";
}

namespace detail {
inline void gen_partitions(int n, int max_part, Partition& cur,
                           std::vector<Partition>& out) {
  if (n == 0) {
    out.push_back(cur);
    return;
  }
  for (int k = std::min(n, max_part); k >= 1; --k) {
    cur.push_back(k);
    gen_partitions(n - k, k, cur, out);
    cur.pop_back();
  }
}
}  // namespace detail

/// All partitions of n, ordered descending-lexicographically: (n) first,
/// (1,...,1) last.  This fixed order defines basis indices within a level.
/// The returned reference is to a shared memoized table (thread-safe).
inline const std::vector<Partition>& partitions_of(int n) {
  if (n < 0) throw ConfigError("partitions_of: negative level");
  static std::mutex mu;
  static std::map<int, std::vector<Partition>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) {
    std::vector<Partition> out;
    Partition cur;
    detail::gen_partitions(n, n == 0 ? 1 : n, cur, out);
    if (n == 0) out = {Partition{}};
    it = cache.emplace(n, std::move(out)).first;
  }
  return it->second;
}

/// Index of p within the fixed basis order of its level.
inline int partition_index(const Partition& p) {
  const auto& all = partitions_of(level(p));
  static std::mutex mu;
  static std::map<Partition, int> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(p);
  if (it == cache.end()) {
    int idx = -1;
    for (size_t i = 0; i < all.size(); ++i) {
      if (all[i] == p) {
        idx = static_cast<int>(i);
        break;
      }
    }
    if (idx < 0) throw ConfigError("partition_index: not a partition");
    it = cache.emplace(p, idx).first;
  }
  return it->second;
}

/// Number of basis states at the given level (the partition function).
inline int level_dimension(int n) {
  return static_cast<int>(partitions_of(n).size());
}

}  // namespace chiralforge::fock

#endif  // CHIRALFORGE_FOCK_PARTITION_HPP
