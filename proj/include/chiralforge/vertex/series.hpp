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

#ifndef CHIRALFORGE_VERTEX_SERIES_HPP
#define CHIRALFORGE_VERTEX_SERIES_HPP

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <tuple>
#include <utility>

#include "chiralforge/common.hpp"
#include "chiralforge/exact/rational.hpp"
#include "chiralforge/vertex/mode_matrix.hpp"

namespace chiralforge::vertex {

/// Process-wide memo of built mode matrices.  Repeated commutator and
/// exchange sweeps request the same (field, mode, sector, cutoff) blocks
/// many times; building them once keeps the sweeps near-linear.
class ModeCache {
 public:
  /// Replaceable build step, so a persistent layer (for example the on-disk
  /// store) can sit behind the in-memory memo.  Called outside the lock.
  using Builder = std::function<ModeMatrix(
      const Rational&, const Rational&, const Rational&, int, Mutation)>;

  std::shared_ptr<const ModeMatrix> get(const Rational& alpha,
                                        const Rational& s,
                                        const Rational& beta, int cutoff,
                                        Mutation mutation = Mutation::kNone) {
    const Key key{alpha.to_string(), s.to_string(), beta.to_string(), cutoff,
                  static_cast<int>(mutation)};
    Builder build;
    {
      std::lock_guard<std::mutex> lock(mu_);
      auto it = map_.find(key);
      if (it != map_.end()) return it->second;
      build = builder_;
    }
    auto built = std::make_shared<const ModeMatrix>(
        build ? build(alpha, s, beta, cutoff, mutation)
              : vertex_mode(alpha, s, beta, cutoff, mutation));
    std::lock_guard<std::mutex> lock(mu_);
    auto [it, inserted] = map_.emplace(key, std::move(built));
    (void)inserted;  // a racing builder may have won; reuse its result
    return it->second;
  }

  void set_builder(Builder b) {
    std::lock_guard<std::mutex> lock(mu_);
    builder_ = std::move(b);
  }

  void clear() {
    std::lock_guard<std::mutex> lock(mu_);
    map_.clear();
  }

  static ModeCache& global() {
    static ModeCache cache;
    return cache;
  }

 private:
  using Key = std::tuple<std::string, std::string, std::string, int, int>;
  std::mutex mu_;
  std::map<Key, std::shared_ptr<const ModeMatrix>> map_;
  Builder builder_;
};

/// The full formal distribution of a charge-alpha field on one source
/// sector: a handle that exposes its modes by integer level drop.  The
/// fractional part of the mode grid is fixed by the sector, so the integer
/// drop t is the natural enumeration.
class VertexSeries {
 public:
  VertexSeries(Rational alpha, Rational beta, int cutoff,
               Mutation mutation = Mutation::kNone,
               ModeCache* cache = &ModeCache::global())
      : alpha_(std::move(alpha)),
        beta_(std::move(beta)),
        cutoff_(cutoff),
        mutation_(mutation),
        cache_(cache) {}

  const Rational& alpha() const { return alpha_; }
  const Rational& beta() const { return beta_; }
  int cutoff() const { return cutoff_; }

  /// Mode index carried by the drop-t mode: s = t - alpha*beta - D.
  Rational mode_index_for_drop(int t) const {
    return Rational(t) - alpha_ * beta_ - alpha_ * alpha_ / Rational(2);
  }

  std::shared_ptr<const ModeMatrix> mode_for_drop(int t) const {
    return cache_->get(alpha_, mode_index_for_drop(t), beta_, cutoff_,
                       mutation_);
  }

  std::shared_ptr<const ModeMatrix> mode_at(const Rational& s) const {
    return cache_->get(alpha_, s, beta_, cutoff_, mutation_);
  }

 private:
  Rational alpha_;
  Rational beta_;
  int cutoff_;
  Mutation mutation_;
  ModeCache* cache_;
};

}  // namespace chiralforge::vertex

#endif  // CHIRALFORGE_VERTEX_SERIES_HPP
