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

#ifndef CHIRALFORGE_SECTORS_SPEC_HPP
#define CHIRALFORGE_SECTORS_SPEC_HPP

#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "chiralforge/common.hpp"
#include "chiralforge/exact/phase.hpp"
#include "chiralforge/exact/rational.hpp"
#include "chiralforge/sectors/group.hpp"

namespace chiralforge::sectors {

// One chiral family of pointed sectors indexed by a group G: for each g the
// conformal dimension D(g) and for each pair (g, h) the braiding phases
// eps^+/eps^-.  Two representations are supported:
//
//  * quadratic: a symmetric rational Gram matrix Q on the generators defines
//    the pairing B(g, h) = g^T Q h, from which
//        eps^+(g, h) = e^{+i pi B(g,h)},   eps^-(g, h) = conj(eps^+(h, g)),
//        D(g) = B(g, g)/2.
//    A rational charge assignment alpha: generators -> Q is the rank-one
//    special case Q_ij = alpha_i alpha_j.  The Gram form also admits charge
//    squares with no rational square root (e.g. Q = [[2]]).
//  * explicit tables over a finite group: D and eps^+ listed per element /
//    per pair, phases given by their exponent q in e^{i pi q}.
//
// On torsion factors of order n_i a quadratic family is only well defined if
// n_i * Q_ij is an even integer for every j (otherwise e^{i pi B} depends on
// the coordinate lift); the constructor enforces this.
class KappaSpec {
 public:
  enum class Kind { kQuadratic, kExplicit };

  using Element = AbelianGroup::Element;
  using Gram = std::vector<std::vector<exact::Rational>>;

  static KappaSpec from_charges(std::string name, const AbelianGroup& group,
                                std::vector<exact::Rational> charges) {
    const auto n = static_cast<std::size_t>(group.num_generators());
    if (charges.size() != n) {
      throw ConfigError("kappa '" + name + "': " +
                        std::to_string(charges.size()) + " charges for " +
                        std::to_string(n) + " generators");
    }
    Gram q(n, std::vector<exact::Rational>(n));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) q[i][j] = charges[i] * charges[j];
    }
    KappaSpec spec(std::move(name), group, std::move(q));
    spec.charges_ = std::move(charges);
    return spec;
  }

  static KappaSpec from_gram(std::string name, const AbelianGroup& group,
                             Gram gram) {
    return KappaSpec(std::move(name), group, std::move(gram));
  }

  // Tables keyed by reduced coordinate strings: dimensions "g" -> D(g),
  // braiding "g|h" -> q with eps^+(g, h) = e^{i pi q}.  Finite groups only;
  // both tables must be total.
  static KappaSpec from_tables(
      std::string name, const AbelianGroup& group,
      std::map<std::string, exact::Rational> dimensions,
      std::map<std::string, exact::Rational> eps_plus_exponents) {
    if (!group.is_finite()) {
      throw ConfigError("kappa '" + name +
                        "': explicit tables require a finite group");
    }
    KappaSpec spec(std::move(name), group);
    for (const Element& g : group.elements()) {
      const std::string gs = group.element_to_string(g);
      if (dimensions.find(gs) == dimensions.end()) {
        throw ConfigError("kappa '" + spec.name_ + "': dimension table has " +
                          "no entry for element " + gs);
      }
      for (const Element& h : group.elements()) {
        const std::string key = gs + "|" + group.element_to_string(h);
        if (eps_plus_exponents.find(key) == eps_plus_exponents.end()) {
          throw ConfigError("kappa '" + spec.name_ +
                            "': eps_plus table has no entry for pair " + key);
        }
      }
    }
    spec.dim_table_ = std::move(dimensions);
    spec.eps_table_ = std::move(eps_plus_exponents);
    return spec;
  }

  const std::string& name() const { return name_; }
  Kind kind() const { return kind_; }
  const AbelianGroup& group() const { return group_; }
  bool is_quadratic() const { return kind_ == Kind::kQuadratic; }
  const Gram& gram() const {
    if (!is_quadratic()) {
      throw ConfigError("kappa '" + name_ + "' has no Gram matrix");
    }
    return gram_;
  }
  const std::vector<exact::Rational>& charges() const {
    if (charges_.empty()) {
      throw ConfigError("kappa '" + name_ + "' has no charge map");
    }
    return charges_;
  }
  bool has_charges() const { return !charges_.empty(); }

  // Exact pairing B(g, h) of the quadratic form (quadratic kind only).
  exact::Rational pairing(const Element& g, const Element& h) const {
    if (!is_quadratic()) {
      throw ConfigError("kappa '" + name_ + "' has no quadratic pairing");
    }
    exact::Rational b;
    for (std::size_t i = 0; i < gram_.size(); ++i) {
      if (g[i] == 0) continue;
      exact::Rational row;
      for (std::size_t j = 0; j < gram_.size(); ++j) {
        if (h[j] == 0) continue;
        row += gram_[i][j] * exact::Rational(h[j]);
      }
      b += exact::Rational(g[i]) * row;
    }
    return b;
  }

  exact::Phase eps_plus(const Element& g, const Element& h) const {
    if (is_quadratic()) return exact::Phase(pairing(g, h));
    const std::string key = group_.element_to_string(group_.reduce(g)) + "|" +
                            group_.element_to_string(group_.reduce(h));
    return exact::Phase(eps_table_.at(key));
  }

  exact::Phase eps_minus(const Element& g, const Element& h) const {
    return eps_plus(h, g).conj();
  }

  exact::Phase eps(const Element& g, const Element& h, bool plus) const {
    return plus ? eps_plus(g, h) : eps_minus(g, h);
  }

  exact::Rational dimension(const Element& g) const {
    if (is_quadratic()) {
      const Element r = group_.reduce(g);
      return pairing(r, r) / exact::Rational(2);
    }
    return dim_table_.at(group_.element_to_string(group_.reduce(g)));
  }

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["name"] = name_;
    if (has_charges()) {
      nlohmann::ordered_json cm = nlohmann::ordered_json::array();
      for (const auto& c : charges_) cm.push_back(c.to_string());
      j["charge_map"] = cm;
    } else if (is_quadratic()) {
      nlohmann::ordered_json rows = nlohmann::ordered_json::array();
      for (const auto& row : gram_) {
        nlohmann::ordered_json r = nlohmann::ordered_json::array();
        for (const auto& v : row) r.push_back(v.to_string());
        rows.push_back(r);
      }
      j["gram"] = rows;
    } else {
      nlohmann::ordered_json dims = nlohmann::ordered_json::object();
      for (const auto& [k, v] : dim_table_) dims[k] = v.to_string();
      nlohmann::ordered_json eps = nlohmann::ordered_json::object();
      for (const auto& [k, v] : eps_table_) eps[k] = v.to_string();
      j["explicit"] = {{"D", dims}, {"eps_plus", eps}};
    }
    return j;
  }

  // Accepts {name, charge_map: {...}|[...]} or {name, gram: [[..]]} or
  // {name, explicit: {D: {...}, eps_plus: {...}}}.  charge_map may be an
  // array in generator order or an object keyed by generator index.
  static KappaSpec from_json(const AbelianGroup& group,
                             const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("name")) {
      throw ConfigError("kappa JSON must be an object with a 'name'");
    }
    std::string name = j.at("name").get<std::string>();
    const int n = group.num_generators();
    if (j.contains("charge_map")) {
      const auto& cm = j.at("charge_map");
      std::vector<exact::Rational> charges(static_cast<std::size_t>(n));
      if (cm.is_array()) {
        if (static_cast<int>(cm.size()) != n) {
          throw ConfigError("kappa '" + name + "': charge_map length " +
                            std::to_string(cm.size()) + " != " +
                            std::to_string(n) + " generators");
        }
        for (int i = 0; i < n; ++i) {
          charges[static_cast<std::size_t>(i)] = parse_rational(cm.at(
              static_cast<std::size_t>(i)));
        }
      } else if (cm.is_object()) {
        for (const auto& [key, val] : cm.items()) {
          int idx = -1;
          try {
            idx = std::stoi(key);
          } catch (const std::exception&) {
            throw ConfigError("kappa '" + name + "': charge_map key '" + key +
                              "' is not a generator index");
          }
          if (idx < 0 || idx >= n) {
            throw ConfigError("kappa '" + name + "': generator index " + key +
                              " out of range [0," + std::to_string(n) + ")");
          }
          charges[static_cast<std::size_t>(idx)] = parse_rational(val);
        }
      } else {
        throw ConfigError("kappa '" + name +
                          "': charge_map must be an array or object");
      }
      return from_charges(std::move(name), group, std::move(charges));
    }
    if (j.contains("gram")) {
      const auto& gj = j.at("gram");
      if (!gj.is_array() || static_cast<int>(gj.size()) != n) {
        throw ConfigError("kappa '" + name + "': gram must be a " +
                          std::to_string(n) + "x" + std::to_string(n) +
                          " matrix");
      }
      Gram q(static_cast<std::size_t>(n),
             std::vector<exact::Rational>(static_cast<std::size_t>(n)));
      for (int i = 0; i < n; ++i) {
        const auto& row = gj.at(static_cast<std::size_t>(i));
        if (!row.is_array() || static_cast<int>(row.size()) != n) {
          throw ConfigError("kappa '" + name + "': gram row " +
                            std::to_string(i) + " has wrong length");
        }
        for (int k = 0; k < n; ++k) {
          q[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] =
              parse_rational(row.at(static_cast<std::size_t>(k)));
        }
      }
      return from_gram(std::move(name), group, std::move(q));
    }
    if (j.contains("explicit")) {
      const auto& ex = j.at("explicit");
      if (!ex.is_object() || !ex.contains("D") || !ex.contains("eps_plus")) {
        throw ConfigError("kappa '" + name +
                          "': explicit needs 'D' and 'eps_plus' tables");
      }
      std::map<std::string, exact::Rational> dims;
      for (const auto& [key, val] : ex.at("D").items()) {
        dims[normalize_key(group, key)] = parse_rational(val);
      }
      std::map<std::string, exact::Rational> eps;
      for (const auto& [key, val] : ex.at("eps_plus").items()) {
        const auto bar = key.find('|');
        if (bar == std::string::npos) {
          throw ConfigError("kappa '" + name + "': eps_plus key '" + key +
                            "' must be of the form 'g|h'");
        }
        eps[normalize_key(group, key.substr(0, bar)) + "|" +
            normalize_key(group, key.substr(bar + 1))] = parse_rational(val);
      }
      return from_tables(std::move(name), group, std::move(dims),
                         std::move(eps));
    }
    throw ConfigError("kappa '" + name +
                      "' needs one of charge_map, gram, explicit");
  }

 private:
  KappaSpec(std::string name, const AbelianGroup& group)
      : name_(std::move(name)), group_(group), kind_(Kind::kExplicit) {}

  KappaSpec(std::string name, const AbelianGroup& group, Gram gram)
      : name_(std::move(name)),
        group_(group),
        kind_(Kind::kQuadratic),
        gram_(std::move(gram)) {
    const auto n = static_cast<std::size_t>(group_.num_generators());
    if (gram_.size() != n) {
      throw ConfigError("kappa '" + name_ + "': gram has " +
                        std::to_string(gram_.size()) + " rows for " +
                        std::to_string(n) + " generators");
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (gram_[i].size() != n) {
        throw ConfigError("kappa '" + name_ + "': gram row " +
                          std::to_string(i) + " has wrong length");
      }
      for (std::size_t j = 0; j < i; ++j) {
        if (gram_[i][j] != gram_[j][i]) {
          throw ConfigError("kappa '" + name_ + "': gram is not symmetric");
        }
      }
    }
    // Torsion well-definedness: relabeling g -> g + n_i e_i must not change
    // e^{i pi B(g, h)}, which needs n_i Q_ij in 2Z for all j.
    for (std::size_t t = 0; t < group_.torsion().size(); ++t) {
      const long ni = group_.torsion()[t];
      const std::size_t i = static_cast<std::size_t>(group_.free_rank()) + t;
      for (std::size_t j = 0; j < n; ++j) {
        exact::Rational v = exact::Rational(ni) * gram_[i][j] /
                            exact::Rational(2);
        if (!v.is_integer()) {
          throw ConfigError(
              "kappa '" + name_ + "': pairing is ill-defined on torsion " +
              "factor of order " + std::to_string(ni) + ": " +
              std::to_string(ni) + " * Q[" + std::to_string(i) + "][" +
              std::to_string(j) + "] = " +
              (exact::Rational(ni) * gram_[i][j]).to_string() +
              " is not an even integer");
        }
      }
    }
  }

  static exact::Rational parse_rational(const nlohmann::json& v) {
    if (v.is_string()) return exact::Rational::from_string(v.get<std::string>());
    if (v.is_number_integer()) return exact::Rational(v.get<long>());
    throw ConfigError("expected a rational as \"p/q\" string or integer, got " +
                      v.dump());
  }

  static std::string normalize_key(const AbelianGroup& group,
                                   const std::string& key) {
    return group.element_to_string(group.element_from_string(key));
  }

  std::string name_;
  AbelianGroup group_;
  Kind kind_;
  Gram gram_;                            // quadratic kind
  std::vector<exact::Rational> charges_; // charge-map special case, optional
  std::map<std::string, exact::Rational> dim_table_;  // explicit kind
  std::map<std::string, exact::Rational> eps_table_;  // explicit kind
};

// A group together with its chiral families.
struct SectorSpec {
  AbelianGroup group;
  std::vector<KappaSpec> kappas;

  SectorSpec(AbelianGroup g, std::vector<KappaSpec> k)
      : group(std::move(g)), kappas(std::move(k)) {
    for (const KappaSpec& kappa : kappas) {
      if (kappa.group() != group) {
        throw ConfigError("kappa '" + kappa.name() +
                          "' is defined on a different group");
      }
    }
  }

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["group"] = group.to_json();
    nlohmann::ordered_json ks = nlohmann::ordered_json::array();
    for (const KappaSpec& k : kappas) ks.push_back(k.to_json());
    j["kappas"] = ks;
    return j;
  }

  static SectorSpec from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("group")) {
      throw ConfigError("sector spec JSON needs a 'group'");
    }
    AbelianGroup group = AbelianGroup::from_json(j.at("group"));
    return SectorSpec(group, parse_kappa_list(group, j, "kappas"));
  }

  static std::vector<KappaSpec> parse_kappa_list(const AbelianGroup& group,
                                                 const nlohmann::json& j,
                                                 const std::string& field) {
    if (!j.contains(field) || !j.at(field).is_array() ||
        j.at(field).empty()) {
      throw ConfigError("sector spec JSON needs a non-empty '" + field +
                        "' array");
    }
    std::vector<KappaSpec> kappas;
    for (const auto& kj : j.at(field)) {
      kappas.push_back(KappaSpec::from_json(group, kj));
    }
    return kappas;
  }
};

// A left/right pair of chiral families over one group, the input shape of the
// two-dimensional extension checks.
struct TwoSidedSpec {
  AbelianGroup group;
  std::vector<KappaSpec> left;
  std::vector<KappaSpec> right;

  TwoSidedSpec(AbelianGroup g, std::vector<KappaSpec> l,
               std::vector<KappaSpec> r)
      : group(std::move(g)), left(std::move(l)), right(std::move(r)) {
    for (const auto* side : {&left, &right}) {
      for (const KappaSpec& kappa : *side) {
        if (kappa.group() != group) {
          throw ConfigError("kappa '" + kappa.name() +
                            "' is defined on a different group");
        }
      }
    }
  }

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["group"] = group.to_json();
    nlohmann::ordered_json ls = nlohmann::ordered_json::array();
    for (const KappaSpec& k : left) ls.push_back(k.to_json());
    j["left"] = ls;
    nlohmann::ordered_json rs = nlohmann::ordered_json::array();
    for (const KappaSpec& k : right) rs.push_back(k.to_json());
    j["right"] = rs;
    return j;
  }

  static TwoSidedSpec from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("group")) {
      throw ConfigError("two-sided spec JSON needs a 'group'");
    }
    AbelianGroup group = AbelianGroup::from_json(j.at("group"));
    return TwoSidedSpec(group,
                        SectorSpec::parse_kappa_list(group, j, "left"),
                        SectorSpec::parse_kappa_list(group, j, "right"));
  }
};

// Draws a uniformly random reduced element with free coordinates in
// [-span, span].
inline AbelianGroup::Element random_element(const AbelianGroup& group,
                                            std::mt19937_64& rng,
                                            long span = 5) {
  AbelianGroup::Element e = group.identity();
  std::uniform_int_distribution<long> free_dist(-span, span);
  for (int i = 0; i < group.free_rank(); ++i) {
    e[static_cast<std::size_t>(i)] = free_dist(rng);
  }
  for (std::size_t t = 0; t < group.torsion().size(); ++t) {
    std::uniform_int_distribution<long> tor_dist(0, group.torsion()[t] - 1);
    e[static_cast<std::size_t>(group.free_rank()) + t] = tor_dist(rng);
  }
  return e;
}

}  // namespace chiralforge::sectors

#endif  // CHIRALFORGE_SECTORS_SPEC_HPP
