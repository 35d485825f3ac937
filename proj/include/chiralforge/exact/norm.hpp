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

#ifndef CHIRALFORGE_EXACT_NORM_HPP
#define CHIRALFORGE_EXACT_NORM_HPP

#include <cmath>
#include <limits>
#include <vector>

#include "chiralforge/exact/sparse_block.hpp"

namespace chiralforge::exact {

/// Exact positive-semidefiniteness test for a dense symmetric rational
/// matrix, by LDL^T elimination.  A zero pivot forces the whole remaining
/// row/column to vanish, otherwise the matrix is indefinite.
inline bool is_psd(std::vector<std::vector<Rational>> m) {
  const size_t n = m.size();
  for (size_t k = 0; k < n; ++k) {
    const Rational d = m[k][k];
    if (d.sign() < 0) return false;
    if (d.is_zero()) {
      for (size_t j = k + 1; j < n; ++j) {
        if (!m[k][j].is_zero()) return false;
      }
      continue;
    }
    for (size_t i = k + 1; i < n; ++i) {
      if (m[i][k].is_zero()) continue;
      const Rational f = m[i][k] / d;
      for (size_t j = i; j < n; ++j) {
        m[i][j] -= f * m[k][j];
      }
    }
    // Keep the matrix symmetric for the zero-pivot row test above.
    for (size_t i = k + 1; i < n; ++i) {
      for (size_t j = k + 1; j < i; ++j) m[i][j] = m[j][i];
    }
  }
  return true;
}

/// Decides ||A|| <= bound exactly, where the operator norm is taken between
/// inner-product spaces whose (diagonal, positive) Gram matrices are given by
/// src_gram and tgt_gram.  Equivalent to positive semidefiniteness of
/// bound^2 * G_src - A^T G_tgt A, which is rational and symmetric, so the
/// answer is certified with no floating point involved.
inline bool norm_le(const SparseBlock& a,
                    const std::vector<Rational>& src_gram,
                    const std::vector<Rational>& tgt_gram,
                    const Rational& bound) {
  if (static_cast<int>(src_gram.size()) != a.cols() ||
      static_cast<int>(tgt_gram.size()) != a.rows()) {
    throw ConfigError("norm_le: gram dimension mismatch");
  }
  if (bound.sign() < 0) return a.is_zero();
  const int n = a.cols();
  std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n, Rational(0)));
  const Rational b2 = bound * bound;
  for (int j = 0; j < n; ++j) m[j][j] = b2 * src_gram[j];
  // Subtract A^T G_tgt A, accumulating row-by-row of A.
  for (int i = 0; i < a.rows(); ++i) {
    const auto& r = a.row(i);
    for (const auto& [j1, v1] : r) {
      for (const auto& [j2, v2] : r) {
        m[j1][j2] -= v1 * tgt_gram[i] * v2;
      }
    }
  }
  return is_psd(std::move(m));
}

/// Plain float power-iteration estimate of the largest singular value of A
/// between the weighted spaces.  This is only a sharp guess, not a bound;
/// operator_norm_upper certifies it.
inline double spectral_norm_estimate(const SparseBlock& a,
                                     const std::vector<Rational>& src_gram,
                                     const std::vector<Rational>& tgt_gram,
                                     int iterations = 100) {
  if (a.is_zero() || a.rows() == 0 || a.cols() == 0) return 0.0;
  const int rows = a.rows(), cols = a.cols();
  // Orthonormalize: B = G_tgt^{1/2} A G_src^{-1/2}, entrywise in double.
  std::vector<std::vector<double>> b(rows, std::vector<double>(cols, 0.0));
  a.for_each([&](int i, int j, const Rational& v) {
    b[i][j] = std::sqrt(tgt_gram[i].to_double()) * v.to_double() /
              std::sqrt(src_gram[j].to_double());
  });
  std::vector<double> x(cols, 1.0), y(rows), z(cols);
  double sigma = 0.0;
  for (int it = 0; it < iterations; ++it) {
    for (int i = 0; i < rows; ++i) {
      double s = 0.0;
      for (int j = 0; j < cols; ++j) s += b[i][j] * x[j];
      y[i] = s;
    }
    for (int j = 0; j < cols; ++j) {
      double s = 0.0;
      for (int i = 0; i < rows; ++i) s += b[i][j] * y[i];
      z[j] = s;
    }
    double nz = 0.0;
    for (double v : z) nz += v * v;
    nz = std::sqrt(nz);
    if (nz == 0.0) return 0.0;
    double ny = 0.0;
    for (double v : y) ny += v * v;
    sigma = std::sqrt(nz);  // ||B^T B x|| ~ sigma^2 for unit x
    for (int j = 0; j < cols; ++j) x[j] = z[j] / nz;
    (void)ny;
  }
  return sigma;
}

/// Certified upper bound on the weighted operator norm of A.  A float power
/// iteration seeds the search; the interval is widened until the exact
/// norm_le certificate accepts, then narrowed by bisection.  The returned
/// double always satisfies ||A|| <= value exactly.
inline double operator_norm_upper(const SparseBlock& a,
                                  const std::vector<Rational>& src_gram,
                                  const std::vector<Rational>& tgt_gram,
                                  double rel_tol = 1e-4) {
  if (a.is_zero() || a.rows() == 0 || a.cols() == 0) return 0.0;
  const double est = spectral_norm_estimate(a, src_gram, tgt_gram);
  // Seed slightly above the estimate, as a dyadic rational.
  auto to_dyadic = [](double x) {
    // Round up to a rational with denominator 2^24; x is moderate in size.
    const double scaled = std::ceil(x * (1 << 24));
    return Rational(static_cast<long>(scaled), 1L << 24);
  };
  Rational hi = to_dyadic(std::max(est * 1.001, 1e-12));
  int widen = 0;
  while (!norm_le(a, src_gram, tgt_gram, hi)) {
    hi *= Rational(2);
    if (++widen > 80) throw ConfigError("operator_norm_upper failed to bracket");
  }
  Rational lo(0);
  // Bisect down toward the true norm; stop at the requested relative width.
  for (int step = 0; step < 64; ++step) {
    const Rational mid = (lo + hi) / Rational(2);
    if ((hi - lo).to_double() <= rel_tol * hi.to_double()) break;
    if (norm_le(a, src_gram, tgt_gram, mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  // Round the certified rational bound upward into double.
  return std::nextafter(hi.to_double(), std::numeric_limits<double>::infinity());
}

/// Unweighted overloads (Gram = identity on both sides).
inline bool norm_le(const SparseBlock& a, const Rational& bound) {
  return norm_le(a, std::vector<Rational>(a.cols(), Rational(1)),
                 std::vector<Rational>(a.rows(), Rational(1)), bound);
}
inline double operator_norm_upper(const SparseBlock& a, double rel_tol = 1e-4) {
  return operator_norm_upper(a, std::vector<Rational>(a.cols(), Rational(1)),
                             std::vector<Rational>(a.rows(), Rational(1)),
                             rel_tol);
}

}  // namespace chiralforge::exact

#endif  // CHIRALFORGE_EXACT_NORM_HPP
