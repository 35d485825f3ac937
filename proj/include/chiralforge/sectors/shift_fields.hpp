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
// Charged shift fields as symbolic monomial matrices.
//
// For a finitely generated abelian grading group G, the field psi^g acts on
// a G-graded space by (psi^g Psi)_h = V^{g,h} Psi_{g+h}, i.e. on graded
// basis slots
//     psi^g : e_c  |->  V^{g, c-g} e_{c-g}.
// The coefficient V^{g,h} is a word in one formal unitary symbol per finite
// cyclic factor of G: writing the torsion coordinates in their canonical
// representatives [0, n_t), the factor's symbol appears exactly when
// g_t + h_t >= n_t (a wrap), and free factors contribute nothing.  All
// identities below (pairwise commutation of the psi^g and their adjoints,
// unitarity, the diagonal-intertwiner exchange relation) are verified as
// exact equalities of matrices over these formal words — no numeric stand-in
// for V is ever chosen.
//
// Free factors are truncated to a finite window [-w, w]; columns whose image
// would leave the window are simply not defined, and equality of two
// products is decided on the intersection of their defined columns.  An
// empty intersection means the window cannot represent the requested
// product, which raises WindowError instead of passing vacuously.

#ifndef CHIRALFORGE_SECTORS_SHIFT_FIELDS_HPP
#define CHIRALFORGE_SECTORS_SHIFT_FIELDS_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "chiralforge/common.hpp"
#include "chiralforge/props/report.hpp"
#include "chiralforge/sectors/group.hpp"

namespace chiralforge::sectors {

// Raised when a grading window is too small to represent a requested
// product (no column of the composite is defined).
class WindowError : public std::runtime_error {
 public:
  explicit WindowError(const std::string& what) : std::runtime_error(what) {}
};

// A commuting word in formal unitary symbols, kept as symbol -> exponent
// (exponent 0 entries are erased).  Symbols are unitary, so the adjoint is
// exponent negation.
class Monomial {
 public:
  Monomial() = default;

  static Monomial one() { return Monomial(); }
  static Monomial symbol(std::string name, long exponent = 1) {
    Monomial m;
    if (exponent != 0) m.exps_[std::move(name)] = exponent;
    return m;
  }

  bool is_one() const { return exps_.empty(); }

  Monomial operator*(const Monomial& o) const {
    Monomial r = *this;
    for (const auto& [name, e] : o.exps_) {
      long& mine = r.exps_[name];
      mine += e;
      if (mine == 0) r.exps_.erase(name);
    }
    return r;
  }
  Monomial& operator*=(const Monomial& o) {
    *this = *this * o;
    return *this;
  }

  Monomial adjoint() const {
    Monomial r;
    for (const auto& [name, e] : exps_) r.exps_[name] = -e;
    return r;
  }

  bool operator==(const Monomial& o) const { return exps_ == o.exps_; }
  bool operator!=(const Monomial& o) const { return !(*this == o); }

  std::string to_string() const {
    if (exps_.empty()) return "1";
    std::string s;
    for (const auto& [name, e] : exps_) {
      if (!s.empty()) s += "*";
      s += name;
      if (e != 1) s += "^" + std::to_string(e);
    }
    return s;
  }

 private:
  std::map<std::string, long> exps_;
};

// A partial monomial matrix: every defined column holds exactly one entry,
// a (row, word) pair.  Composition and adjoint propagate partiality; this
// models operators restricted to a finite grading window.
class MonomialMatrix {
 public:
  struct Entry {
    std::size_t row;
    Monomial coeff;
  };

  explicit MonomialMatrix(std::size_t dim) : cols_(dim) {}

  static MonomialMatrix identity(std::size_t dim) {
    MonomialMatrix m(dim);
    for (std::size_t c = 0; c < dim; ++c) m.set(c, c, Monomial::one());
    return m;
  }

  std::size_t dim() const { return cols_.size(); }

  void set(std::size_t col, std::size_t row, Monomial coeff) {
    cols_.at(col) = Entry{row, std::move(coeff)};
  }

  const std::optional<Entry>& at(std::size_t col) const {
    return cols_.at(col);
  }

  long defined_count() const {
    long n = 0;
    for (const auto& c : cols_) n += c.has_value() ? 1 : 0;
    return n;
  }

  // (*this) after `rhs`: apply rhs to a column vector first.
  MonomialMatrix operator*(const MonomialMatrix& rhs) const {
    if (dim() != rhs.dim()) {
      throw ConfigError("monomial matrix dimension mismatch");
    }
    MonomialMatrix out(dim());
    for (std::size_t c = 0; c < dim(); ++c) {
      const auto& first = rhs.cols_[c];
      if (!first) continue;
      const auto& second = cols_[first->row];
      if (!second) continue;
      out.set(c, second->row, second->coeff * first->coeff);
    }
    return out;
  }

  // Conjugate transpose.  Requires injectivity on defined columns (true for
  // shift operators); duplicated rows would make the transpose non-monomial.
  MonomialMatrix adjoint() const {
    MonomialMatrix out(dim());
    for (std::size_t c = 0; c < dim(); ++c) {
      if (!cols_[c]) continue;
      if (out.cols_[cols_[c]->row]) {
        throw ConfigError("adjoint of a non-injective monomial matrix");
      }
      out.set(cols_[c]->row, c, cols_[c]->coeff.adjoint());
    }
    return out;
  }

  // Exact equality on the intersection of defined columns.  The number of
  // commonly defined columns is written to `common`; an empty intersection
  // raises WindowError (the comparison would be vacuous).
  static bool equal_on_common(const MonomialMatrix& a, const MonomialMatrix& b,
                              long* common = nullptr) {
    if (a.dim() != b.dim()) {
      throw ConfigError("monomial matrix dimension mismatch");
    }
    long shared = 0;
    bool equal = true;
    for (std::size_t c = 0; c < a.dim(); ++c) {
      if (!a.cols_[c] || !b.cols_[c]) continue;
      ++shared;
      if (a.cols_[c]->row != b.cols_[c]->row ||
          a.cols_[c]->coeff != b.cols_[c]->coeff) {
        equal = false;
      }
    }
    if (common != nullptr) *common = shared;
    if (shared == 0) {
      throw WindowError(
          "grading window too small: no commonly defined column");
    }
    return equal;
  }

 private:
  std::vector<std::optional<Entry>> cols_;
};

// The table of shift fields over a grading window.  Labels enumerate
// [-w, w]^r x prod [0, n_t); psi^g is defined on the columns whose shifted
// target stays inside the window.
class ShiftFieldTable {
 public:
  using Element = AbelianGroup::Element;

  ShiftFieldTable(AbelianGroup group, long window = 8)
      : group_(std::move(group)), window_(window) {
    if (window < 0) throw ConfigError("grading window must be non-negative");
    // Odometer over free coords [-w, w] and torsion coords [0, n).
    Element cur(static_cast<std::size_t>(group_.num_generators()), 0);
    for (int i = 0; i < group_.free_rank(); ++i) {
      cur[static_cast<std::size_t>(i)] = -window_;
    }
    while (true) {
      index_[group_.element_to_string(cur)] = labels_.size();
      labels_.push_back(cur);
      int pos = group_.num_generators() - 1;
      for (; pos >= 0; --pos) {
        long& c = cur[static_cast<std::size_t>(pos)];
        const long hi = pos < group_.free_rank()
                            ? window_
                            : group_.torsion()[static_cast<std::size_t>(
                                  pos - group_.free_rank())] -
                                  1;
        const long lo = pos < group_.free_rank() ? -window_ : 0;
        if (c < hi) {
          ++c;
          break;
        }
        c = lo;
      }
      if (pos < 0) break;
    }
  }

  const AbelianGroup& group() const { return group_; }
  long window() const { return window_; }
  const std::vector<Element>& labels() const { return labels_; }

  std::optional<std::size_t> index_of(const Element& e) const {
    const auto it = index_.find(group_.element_to_string(group_.reduce(e)));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  // The cocycle V^{g,h}: one wrap symbol per finite cyclic factor, present
  // exactly when the canonical representatives satisfy g_t + h_t >= n_t.
  Monomial v_cocycle(const Element& g, const Element& h) const {
    const Element gr = group_.reduce(g);
    const Element hr = group_.reduce(h);
    Monomial w;
    for (std::size_t t = 0; t < group_.torsion().size(); ++t) {
      const std::size_t i = static_cast<std::size_t>(group_.free_rank()) + t;
      if (gr[i] + hr[i] >= group_.torsion()[t]) {
        w *= Monomial::symbol("V" + std::to_string(t));
      }
    }
    return w;
  }

  // psi^g: e_c |-> V^{g, c-g} e_{c-g}, on columns where c-g stays inside the
  // window.
  MonomialMatrix psi(const Element& g) const {
    const Element gr = group_.reduce(g);
    MonomialMatrix m(labels_.size());
    long defined = 0;
    for (std::size_t c = 0; c < labels_.size(); ++c) {
      const Element target = group_.add(labels_[c], group_.neg(gr));
      const auto idx = index_of(target);
      if (!idx) continue;
      m.set(c, *idx, v_cocycle(gr, target));
      ++defined;
    }
    if (defined == 0) {
      throw WindowError("grading window [" + std::to_string(-window_) + "," +
                        std::to_string(window_) +
                        "] cannot represent psi^(" +
                        group_.element_to_string(gr) + ")");
    }
    return m;
  }

  // The graded diagonal kappa_hat(x) of free commuting symbols, with the
  // symbol index shifted by `shift`: column c carries x[c + shift].  The
  // symbols are indexed by group elements (reduced), not window slots, so
  // shifted indices are meaningful even outside the window.
  MonomialMatrix graded_diagonal(const Element& shift) const {
    MonomialMatrix m(labels_.size());
    for (std::size_t c = 0; c < labels_.size(); ++c) {
      const Element idx = group_.add(labels_[c], shift);
      m.set(c, c,
            Monomial::symbol("x[" + group_.element_to_string(idx) + "]"));
    }
    return m;
  }

  // Representative elements exercised by the verification suites: the
  // identity, all generators and their negatives, and all two-generator
  // sums; for small finite groups, every element.
  std::vector<Element> probe_elements() const {
    std::vector<Element> probes;
    auto push_unique = [&](const Element& e) {
      const Element r = group_.reduce(e);
      for (const Element& p : probes) {
        if (p == r) return;
      }
      probes.push_back(r);
    };
    if (group_.is_finite() && group_.order() <= 64) {
      for (const Element& e : group_.elements()) push_unique(e);
      return probes;
    }
    push_unique(group_.identity());
    const int n = group_.num_generators();
    for (int i = 0; i < n; ++i) {
      push_unique(group_.generator(i));
      push_unique(group_.neg(group_.generator(i)));
      for (int j = i; j < n; ++j) {
        push_unique(group_.add(group_.generator(i), group_.generator(j)));
      }
    }
    return probes;
  }

 private:
  AbelianGroup group_;
  long window_;
  std::vector<Element> labels_;
  std::unordered_map<std::string, std::size_t> index_;
};

// Builds the table and fails fast (WindowError) if the window cannot hold
// the generator fields or their pairwise products.
inline ShiftFieldTable build_shift_fields(const AbelianGroup& group,
                                          long window = 8) {
  ShiftFieldTable table(group, window);
  const auto probes = table.probe_elements();
  for (const Element& a : probes) {
    const MonomialMatrix pa = table.psi(a);
    for (const Element& b : probes) {
      long common = 0;
      MonomialMatrix prod = pa * table.psi(b);
      // Touch the product against itself to assert a nonempty domain.
      MonomialMatrix::equal_on_common(prod, prod, &common);
    }
  }
  return table;
}

// Pairwise commutation of the charged fields and their adjoints, plus shift
// unitarity, as exact symbolic matrix identities on the window.
inline props::VerificationReport check_shift_field_commutation(
    const ShiftFieldTable& table) {
  props::Stopwatch timer;
  props::VerificationReport report;
  report.suite = "sectors-shift-fields";
  report.params = {{"group", table.group().to_string()},
                   {"window", table.window()}};

  long comparisons = 0;
  long failures = 0;
  bool ok = true;
  nlohmann::ordered_json cases = nlohmann::ordered_json::array();

  const auto probes = table.probe_elements();
  std::vector<std::pair<std::string, MonomialMatrix>> ops;
  for (const Element& e : probes) {
    const std::string name = "psi(" + table.group().element_to_string(e) + ")";
    MonomialMatrix p = table.psi(e);
    ops.emplace_back(name, p);
    ops.emplace_back(name + "*", p.adjoint());
  }

  // Unitarity: psi psi* and psi* psi restrict to the identity.
  const MonomialMatrix id = MonomialMatrix::identity(table.labels().size());
  for (const Element& e : probes) {
    const MonomialMatrix p = table.psi(e);
    for (const MonomialMatrix& prod : {p * p.adjoint(), p.adjoint() * p}) {
      long common = 0;
      const bool eq = MonomialMatrix::equal_on_common(prod, id, &common);
      ++comparisons;
      if (!eq) {
        ok = false;
        ++failures;
        cases.push_back({{"relation", "unitarity"},
                         {"element", table.group().element_to_string(e)},
                         {"ok", false}});
      }
    }
  }

  // Commutation of every pair drawn from {psi^a, (psi^a)*}.
  for (std::size_t i = 0; i < ops.size(); ++i) {
    for (std::size_t j = i + 1; j < ops.size(); ++j) {
      long common = 0;
      const bool eq = MonomialMatrix::equal_on_common(
          ops[i].second * ops[j].second, ops[j].second * ops[i].second,
          &common);
      ++comparisons;
      if (!eq) {
        ok = false;
        ++failures;
        cases.push_back({{"relation", "commutation"},
                         {"a", ops[i].first},
                         {"b", ops[j].first},
                         {"common_columns", common},
                         {"ok", false}});
      }
    }
  }

  // On a free group every cocycle is trivial, so products fuse on the nose.
  if (table.group().torsion().empty()) {
    for (const Element& a : probes) {
      for (const Element& b : probes) {
        long common = 0;
        const bool eq = MonomialMatrix::equal_on_common(
            table.psi(a) * table.psi(b),
            table.psi(table.group().add(a, b)), &common);
        ++comparisons;
        if (!eq) {
          ok = false;
          ++failures;
          cases.push_back({{"relation", "free_fusion"},
                           {"a", table.group().element_to_string(a)},
                           {"b", table.group().element_to_string(b)},
                           {"ok", false}});
        }
      }
    }
  }

  report.passed = ok;
  report.comparisons = comparisons;
  report.worst_violation = failures == 0 ? "0" : std::to_string(failures);
  report.details["failures"] = cases;
  report.details["probed_elements"] = static_cast<long>(probes.size());
  report.elapsed_s = timer.seconds();
  return report;
}

// The exchange relation between a charged field and a graded diagonal:
//     psi^g diag(x_h) = diag(x_{h+g}) psi^g
// as an identity of monomial matrices over the free symbols x.
inline props::VerificationReport charged_intertwiner_shiftcheck(
    const ShiftFieldTable& table) {
  props::Stopwatch timer;
  props::VerificationReport report;
  report.suite = "sectors-intertwiner";
  report.params = {{"group", table.group().to_string()},
                   {"window", table.window()}};

  long comparisons = 0;
  long failures = 0;
  bool ok = true;
  nlohmann::ordered_json cases = nlohmann::ordered_json::array();

  const MonomialMatrix plain = table.graded_diagonal(table.group().identity());
  for (const Element& g : table.probe_elements()) {
    const MonomialMatrix p = table.psi(g);
    const MonomialMatrix lhs = p * plain;
    const MonomialMatrix rhs = table.graded_diagonal(g) * p;
    long common = 0;
    const bool eq = MonomialMatrix::equal_on_common(lhs, rhs, &common);
    ++comparisons;
    if (!eq) {
      ok = false;
      ++failures;
      cases.push_back({{"element", table.group().element_to_string(g)},
                       {"common_columns", common},
                       {"ok", false}});
    }
  }

  report.passed = ok;
  report.comparisons = comparisons;
  report.worst_violation = failures == 0 ? "0" : std::to_string(failures);
  report.details["failures"] = cases;
  report.elapsed_s = timer.seconds();
  return report;
}

}  // namespace chiralforge::sectors

#endif  // CHIRALFORGE_SECTORS_SHIFT_FIELDS_HPP
