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

#ifndef CHIRALFORGE_VERTEX_SERIALIZE_HPP
#define CHIRALFORGE_VERTEX_SERIALIZE_HPP

#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>

#include <json.hpp>

#include "chiralforge/common.hpp"
#include "chiralforge/vertex/mode_matrix.hpp"

namespace chiralforge::vertex {

/// On-disk layout (schema "1") of one mode matrix:
/// {
///   "version": "1", "alpha": "1", "s": "-1/2", "beta": "0",
///   "cutoff": 8, "mutation": "none", "t": 0,
///   "blocks": [ { "src_level": 0, "tgt_level": 0, "rows": 1, "cols": 1,
///                 "entries": [[row, col, "p/q"], ...] }, ... ]
/// }
inline nlohmann::ordered_json mode_to_json(const ModeMatrix& m) {
  nlohmann::ordered_json j;
  j["version"] = kSchemaVersion;
  j["alpha"] = m.alpha.to_string();
  j["s"] = m.s.to_string();
  j["beta"] = m.beta.to_string();
  j["cutoff"] = m.cutoff;
  j["mutation"] = to_string(m.mutation);
  j["t"] = m.t;
  nlohmann::ordered_json blocks = nlohmann::ordered_json::array();
  for (const auto& [l, b] : m.blocks) {
    nlohmann::ordered_json jb;
    jb["src_level"] = l;
    jb["tgt_level"] = l - m.t;
    jb["rows"] = b.rows();
    jb["cols"] = b.cols();
    nlohmann::ordered_json entries = nlohmann::ordered_json::array();
    b.for_each([&](int i, int jcol, const Rational& v) {
      entries.push_back({i, jcol, v.to_string()});
    });
    jb["entries"] = std::move(entries);
    blocks.push_back(std::move(jb));
  }
  j["blocks"] = std::move(blocks);
  return j;
}

/// Parses and validates a serialized mode matrix.  Throws ConfigError on any
/// structural mismatch; the caller decides whether that means "corrupt cache,
/// rebuild" or a hard error.
inline ModeMatrix mode_from_json(const nlohmann::json& j) {
  if (!j.is_object() || j.value("version", "") != std::string(kSchemaVersion)) {
    throw ConfigError("mode blob: missing or unsupported version");
  }
  ModeMatrix m;
  m.alpha = Rational::from_string(j.at("alpha").get<std::string>());
  m.s = Rational::from_string(j.at("s").get<std::string>());
  m.beta = Rational::from_string(j.at("beta").get<std::string>());
  m.cutoff = j.at("cutoff").get<int>();
  m.t = j.at("t").get<int>();
  const auto mut = mutation_from_string(j.at("mutation").get<std::string>());
  if (!mut) throw ConfigError("mode blob: unknown mutation name");
  m.mutation = *mut;
  const Rational drop =
      m.s + m.alpha * m.beta + m.alpha * m.alpha / Rational(2);
  if (!drop.is_integer() || static_cast<int>(drop.to_integer()) != m.t) {
    throw ConfigError("mode blob: level drop inconsistent with parameters");
  }
  for (const auto& jb : j.at("blocks")) {
    const int l = jb.at("src_level").get<int>();
    const int rows = jb.at("rows").get<int>();
    const int cols = jb.at("cols").get<int>();
    if (l < 0 || l > m.cutoff || jb.at("tgt_level").get<int>() != l - m.t ||
        rows != fock::level_dimension(l - m.t) ||
        cols != fock::level_dimension(l)) {
      throw ConfigError("mode blob: block shape inconsistent");
    }
    exact::SparseBlock b(rows, cols);
    for (const auto& e : jb.at("entries")) {
      b.set(e.at(0).get<int>(), e.at(1).get<int>(),
            Rational::from_string(e.at(2).get<std::string>()));
    }
    m.blocks.emplace(l, std::move(b));
  }
  return m;
}

/// Cache file name: every parameter is encoded, so distinct requests can
/// never collide.  '/' and '-' are not filename-friendly in all tools, so
/// they are spelled 'q' and 'm'.
inline std::string mode_cache_file_name(const Rational& alpha,
                                        const Rational& s,
                                        const Rational& beta, int cutoff,
                                        Mutation mutation) {
  auto sanitize = [](std::string x) {
    for (char& c : x) {
      if (c == '/') c = 'q';
      if (c == '-') c = 'm';
    }
    return x;
  };
  return "mode_a" + sanitize(alpha.to_string()) + "_s" +
         sanitize(s.to_string()) + "_b" + sanitize(beta.to_string()) + "_c" +
         std::to_string(cutoff) + "_" + to_string(mutation) + ".json";
}

/// Cache directory from the environment, if configured.
inline std::optional<std::string> env_cache_dir() {
  const char* v = std::getenv("CHIRALFORGE_CACHE");
  if (v == nullptr || *v == '\0') return std::nullopt;
  return std::string(v);
}

/// Builds a mode matrix through an on-disk cache.  A valid cached file is
/// loaded; a missing or corrupt one is rebuilt and rewritten atomically
/// (temp file + rename), so concurrent runs sharing a cache directory can
/// only ever observe complete files.
inline ModeMatrix cached_vertex_mode(const std::string& cache_dir,
                                     const Rational& alpha, const Rational& s,
                                     const Rational& beta, int cutoff,
                                     Mutation mutation = Mutation::kNone) {
  if (cache_dir.empty()) return vertex_mode(alpha, s, beta, cutoff, mutation);
  namespace fs = std::filesystem;
  const fs::path dir(cache_dir);
  const fs::path file = dir / mode_cache_file_name(alpha, s, beta, cutoff,
                                                   mutation);
  if (fs::exists(file)) {
    try {
      std::ifstream in(file);
      nlohmann::json j;
      in >> j;
      ModeMatrix m = mode_from_json(j);
      if (m.alpha == alpha && m.s == s && m.beta == beta &&
          m.cutoff == cutoff && m.mutation == mutation) {
        return m;
      }
      throw ConfigError("mode blob: parameters do not match file name");
    } catch (const std::exception& e) {
      std::fprintf(stderr,
                   "warning: ignoring corrupt cache file %s (%s); rebuilding\n",
                   file.string().c_str(), e.what());
    }
  }
  ModeMatrix m = vertex_mode(alpha, s, beta, cutoff, mutation);
  std::error_code ec;
  fs::create_directories(dir, ec);  // best effort; write below reports errors
  const fs::path tmp =
      file.string() + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp);
    if (!out) {
      std::fprintf(stderr, "warning: cannot write cache file %s\n",
                   tmp.string().c_str());
      return m;
    }
    out << mode_to_json(m).dump(1) << "\n";
  }
  fs::rename(tmp, file, ec);
  if (ec) {
    std::fprintf(stderr, "warning: cache rename failed for %s: %s\n",
                 file.string().c_str(), ec.message().c_str());
    fs::remove(tmp, ec);
  }
  return m;
}

}  // namespace chiralforge::vertex

#endif  // CHIRALFORGE_VERTEX_SERIALIZE_HPP
