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

#ifndef CHIRALFORGE_EXACT_SPARSE_BLOCK_HPP
#define CHIRALFORGE_EXACT_SPARSE_BLOCK_HPP

#include <functional>
#include <map>
#include <vector>

#include "chiralforge/exact/rational.hpp"

namespace chiralforge::exact {

/// Sparse matrix block with exact rational entries.  Row-major map storage;
/// absent entries are zero, and explicit zeros are never stored.  Blocks here
/// are graded pieces of operators, so dimensions stay small and clarity wins
/// over micro-optimization.
class SparseBlock {
 public:
  SparseBlock() : rows_(0), cols_(0) {}
  SparseBlock(int rows, int cols) : rows_(rows), cols_(cols), data_(rows) {
    if (rows < 0 || cols < 0) throw ConfigError("negative block dimension");
  }

  static SparseBlock identity(int n) {
    SparseBlock b(n, n);
    for (int i = 0; i < n; ++i) b.set(i, i, Rational(1));
    return b;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  void set(int i, int j, const Rational& v) {
    check(i, j);
    if (v.is_zero()) {
      data_[i].erase(j);
    } else {
      data_[i][j] = v;
    }
  }

  void add_at(int i, int j, const Rational& v) {
    check(i, j);
    auto it = data_[i].find(j);
    if (it == data_[i].end()) {
      if (!v.is_zero()) data_[i].emplace(j, v);
      return;
    }
    it->second += v;
    if (it->second.is_zero()) data_[i].erase(it);
  }

  Rational at(int i, int j) const {
    check(i, j);
    auto it = data_[i].find(j);
    return it == data_[i].end() ? Rational(0) : it->second;
  }

  const std::map<int, Rational>& row(int i) const { return data_[i]; }

  void for_each(const std::function<void(int, int, const Rational&)>& fn) const {
    for (int i = 0; i < rows_; ++i) {
      for (const auto& [j, v] : data_[i]) fn(i, j, v);
    }
  }

  size_t nnz() const {
    size_t n = 0;
    for (const auto& r : data_) n += r.size();
    return n;
  }

  bool is_zero() const { return nnz() == 0; }

  /// Largest absolute value of any entry (0 for the empty block); this is the
  /// "violation" magnitude of a difference block.
  Rational max_abs() const {
    Rational m(0);
    for (const auto& r : data_) {
      for (const auto& [j, v] : r) {
        Rational a = v.abs();
        if (a > m) m = a;
      }
    }
    return m;
  }

  SparseBlock& operator+=(const SparseBlock& o) {
    require_same_shape(o);
    for (int i = 0; i < rows_; ++i) {
      for (const auto& [j, v] : o.data_[i]) add_at(i, j, v);
    }
    return *this;
  }

  SparseBlock& operator-=(const SparseBlock& o) {
    require_same_shape(o);
    for (int i = 0; i < rows_; ++i) {
      for (const auto& [j, v] : o.data_[i]) add_at(i, j, -v);
    }
    return *this;
  }

  friend SparseBlock operator+(SparseBlock a, const SparseBlock& b) {
    return a += b;
  }
  friend SparseBlock operator-(SparseBlock a, const SparseBlock& b) {
    return a -= b;
  }

  SparseBlock scaled(const Rational& c) const {
    SparseBlock out(rows_, cols_);
    if (c.is_zero()) return out;
    for (int i = 0; i < rows_; ++i) {
      for (const auto& [j, v] : data_[i]) out.data_[i].emplace(j, v * c);
    }
    return out;
  }

  SparseBlock transpose() const {
    SparseBlock out(cols_, rows_);
    for (int i = 0; i < rows_; ++i) {
      for (const auto& [j, v] : data_[i]) out.data_[j].emplace(i, v);
    }
    return out;
  }

  bool operator==(const SparseBlock& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }
  bool operator!=(const SparseBlock& o) const { return !(*this == o); }

  /// Matrix-vector product (dense vector of length cols()).
  std::vector<Rational> apply(const std::vector<Rational>& x) const {
    if (static_cast<int>(x.size()) != cols_) {
      throw ConfigError("block apply: dimension mismatch");
    }
    std::vector<Rational> y(rows_, Rational(0));
    for (int i = 0; i < rows_; ++i) {
      for (const auto& [j, v] : data_[i]) y[i] += v * x[j];
    }
    return y;
  }

 private:
  void check(int i, int j) const {
    if (i < 0 || i >= rows_ || j < 0 || j >= cols_) {
      throw ConfigError("block index out of range");
    }
  }
  void require_same_shape(const SparseBlock& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) {
      throw ConfigError("block shape mismatch");
    }
  }

  int rows_, cols_;
  std::vector<std::map<int, Rational>> data_;
};

/// Exact sparse product A*B.  Column-gather over B's rows; associativity and
/// agreement with the naive triple loop are covered by tests.
inline SparseBlock block_mul(const SparseBlock& a, const SparseBlock& b) {
  if (a.cols() != b.rows()) throw ConfigError("block_mul: shape mismatch");
  SparseBlock out(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i) {
    for (const auto& [k, av] : a.row(i)) {
      for (const auto& [j, bv] : b.row(k)) {
        out.add_at(i, j, av * bv);
      }
    }
  }
  return out;
}

}  // namespace chiralforge::exact

#endif  // CHIRALFORGE_EXACT_SPARSE_BLOCK_HPP
