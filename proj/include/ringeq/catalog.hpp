// Copyright 2026 The ringeq Authors
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

#ifndef RINGEQ_CATALOG_HPP_
#define RINGEQ_CATALOG_HPP_

// Bounded enumeration of ring mixed graphs and the two extremal catalogs:
// contraction-minimal obstructions to uniqueness and maximal rings with
// the uniqueness property.

#include <algorithm>
#include <deque>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ringeq/coverage_analysis.hpp"
#include "ringeq/error.hpp"
#include "ringeq/mixed_graph.hpp"
#include "ringeq/ring_model.hpp"

namespace ringeq {

// Max number of routes through one arc, demands by cyclic position.
inline int ring_max_coverage(int n, const std::vector<std::pair<int, int>>& demands) {
  const int num_l = static_cast<int>(demands.size());
  int best = 0;
  for (int e = 0; e < n; ++e) {
    int pos = 0;
    for (const auto& [o, d] : demands) {
      if (((e - o) % n + n) % n < ((d - o) % n + n) % n) ++pos;
    }
    best = std::max({best, pos, num_l - pos});
  }
  return best;
}

inline std::string position_label(int i) {
  std::string s;
  do {
    s.insert(s.begin(), static_cast<char>('a' + i % 26));
    i = i / 26 - 1;
  } while (i >= 0);
  return s;
}

// The ring mixed graph of a ring canonical code, labelled a, b, c, ...
inline MixedGraph ring_from_code(const CanonicalForm& code) {
  if (code.size() < 3 || code[0] != 0) {
    throw Error(ErrorCode::kInvalidGraph, "not a ring code");
  }
  const int num_l = code[1];
  const int n = code[2];
  MixedGraph m;
  for (int i = 0; i < n; ++i) {
    m.labels.push_back(position_label(i));
    m.edges.emplace_back(i, (i + 1) % n);
  }
  for (int l = 0; l < num_l; ++l) {
    m.demands.emplace_back(code[static_cast<std::size_t>(3 + 2 * l)],
                           code[static_cast<std::size_t>(4 + 2 * l)]);
  }
  return m;
}

inline std::vector<std::pair<int, int>> code_demands(const CanonicalForm& code) {
  std::vector<std::pair<int, int>> d;
  for (int l = 0; l < code[1]; ++l) {
    d.emplace_back(code[static_cast<std::size_t>(3 + 2 * l)],
                   code[static_cast<std::size_t>(4 + 2 * l)]);
  }
  return d;
}

inline RingInstance ring_instance_from_code(const CanonicalForm& code) {
  const MixedGraph m = ring_from_code(code);
  std::vector<LabelPair> pairs;
  for (const auto& [o, d] : m.demands) {
    pairs.emplace_back(m.labels[static_cast<std::size_t>(o)],
                       m.labels[static_cast<std::size_t>(d)]);
  }
  return RingInstance::build(m.labels, pairs);
}

// Codes of all rings on n vertices with num_l demands, one per isomorphism
// class (rotations and reflections identified), sorted.
inline std::vector<CanonicalForm> enumerate_ring_codes(int n, int num_l,
                                                       bool all_terminal = false) {
  std::vector<std::pair<int, int>> pairs;
  for (int o = 0; o < n; ++o) {
    for (int d = 0; d < n; ++d) {
      if (o != d) pairs.emplace_back(o, d);
    }
  }
  std::set<CanonicalForm> codes;
  if (all_terminal && 2 * num_l < n) return {};
  std::vector<std::pair<int, int>> chosen(static_cast<std::size_t>(num_l));
  std::vector<int> touched(static_cast<std::size_t>(n));
  for_each_combination(static_cast<int>(pairs.size()), num_l, [&](const std::vector<int>& idx) {
    for (int i = 0; i < num_l; ++i) {
      chosen[static_cast<std::size_t>(i)] = pairs[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])];
    }
    if (all_terminal) {
      std::fill(touched.begin(), touched.end(), 0);
      for (const auto& [o, d] : chosen) touched[static_cast<std::size_t>(o)] = touched[static_cast<std::size_t>(d)] = 1;
      if (std::find(touched.begin(), touched.end(), 0) != touched.end()) return;
    }
    codes.insert(ring_canonical_code(n, chosen));
  });
  return {codes.begin(), codes.end()};
}

namespace detail {

// Ring with `edge` (between positions edge and edge + 1) contracted;
// nullopt when the demand digraph stops being simple.
inline std::optional<std::vector<std::pair<int, int>>> contract_ring_edge(
    int n, const std::vector<std::pair<int, int>>& demands, int edge) {
  auto remap = [n, edge](int v) {
    if (edge == n - 1) return v == n - 1 ? 0 : v;
    if (v == edge + 1) return edge;
    return v > edge + 1 ? v - 1 : v;
  };
  std::vector<std::pair<int, int>> out;
  std::set<std::pair<int, int>> seen;
  for (const auto& [o, d] : demands) {
    const int a = remap(o);
    const int b = remap(d);
    if (a == b || !seen.insert({a, b}).second) return std::nullopt;
    out.emplace_back(a, b);
  }
  return out;
}

}  // namespace detail

// Seeds: 6-cycles whose vertices are each the tail or head of exactly one
// of three demands, with some arc in three routes. Contractions keeping the
// demand digraph simple and some arc 3-covered are applied until none is
// possible; the resulting graphs, up to isomorphism, form the catalog.
inline std::vector<CanonicalForm> enumerate_minimal_obstruction_codes() {
  std::set<CanonicalForm> seeds;
  // Perfect matchings of {0..5}, each pair oriented both ways.
  std::vector<int> rest{0, 1, 2, 3, 4, 5};
  std::vector<std::vector<std::pair<int, int>>> matchings;
  std::function<void(std::vector<int>, std::vector<std::pair<int, int>>)> match =
      [&](std::vector<int> left, std::vector<std::pair<int, int>> acc) {
        if (left.empty()) {
          matchings.push_back(acc);
          return;
        }
        const int a = left[0];
        for (std::size_t j = 1; j < left.size(); ++j) {
          std::vector<int> next;
          for (std::size_t i = 1; i < left.size(); ++i) {
            if (i != j) next.push_back(left[i]);
          }
          acc.emplace_back(a, left[j]);
          match(next, acc);
          acc.pop_back();
        }
      };
  match(rest, {});
  for (const auto& m : matchings) {
    for (int orient = 0; orient < 8; ++orient) {
      std::vector<std::pair<int, int>> d;
      for (int i = 0; i < 3; ++i) {
        const auto& [a, b] = m[static_cast<std::size_t>(i)];
        d.push_back(orient >> i & 1 ? std::pair{b, a} : std::pair{a, b});
      }
      if (ring_max_coverage(6, d) >= 3) seeds.insert(ring_canonical_code(6, d));
    }
  }
  std::set<CanonicalForm> visited(seeds.begin(), seeds.end());
  std::deque<CanonicalForm> queue(seeds.begin(), seeds.end());
  std::set<CanonicalForm> minimal;
  while (!queue.empty()) {
    const CanonicalForm code = queue.front();
    queue.pop_front();
    const int n = code[2];
    const auto dem = code_demands(code);
    bool has_child = false;
    for (int e = 0; e < n; ++e) {
      auto child = detail::contract_ring_edge(n, dem, e);
      if (!child || ring_max_coverage(n - 1, *child) < 3) continue;
      has_child = true;
      CanonicalForm c = ring_canonical_code(n - 1, *child);
      if (visited.insert(c).second) queue.push_back(std::move(c));
    }
    if (!has_child) minimal.insert(code);
  }
  return {minimal.begin(), minimal.end()};
}

// All-terminal rings with 1 to 4 demands, at most max_vertices vertices and
// every arc in at most two routes; keeps those that are not a single edge
// contraction of another such ring.
inline std::vector<CanonicalForm> enumerate_maximal_uniqueness_codes(int max_vertices = 8) {
  std::set<CanonicalForm> family;
  for (int n = 2; n <= max_vertices; ++n) {
    for (int num_l = 1; num_l <= 4; ++num_l) {
      for (CanonicalForm& c : enumerate_ring_codes(n, num_l, /*all_terminal=*/true)) {
        if (ring_max_coverage(n, code_demands(c)) <= 2) family.insert(std::move(c));
      }
    }
  }
  std::set<CanonicalForm> dominated;
  for (const CanonicalForm& code : family) {
    const int n = code[2];
    const auto dem = code_demands(code);
    for (int e = 0; e < n; ++e) {
      auto child = detail::contract_ring_edge(n, dem, e);
      if (!child) continue;
      CanonicalForm c = ring_canonical_code(n - 1, *child);
      if (family.count(c)) dominated.insert(std::move(c));
    }
  }
  std::vector<CanonicalForm> out;
  for (const CanonicalForm& c : family) {
    if (!dominated.count(c)) out.push_back(c);
  }
  return out;
}

inline std::vector<MixedGraph> enumerate_minimal_obstructions() {
  std::vector<MixedGraph> out;
  for (const auto& c : enumerate_minimal_obstruction_codes()) out.push_back(ring_from_code(c));
  return out;
}

inline std::vector<MixedGraph> enumerate_maximal_uniqueness(int max_vertices = 8) {
  std::vector<MixedGraph> out;
  for (const auto& c : enumerate_maximal_uniqueness_codes(max_vertices)) {
    out.push_back(ring_from_code(c));
  }
  return out;
}

enum class CatalogSide { kUniqueness, kObstruction };

inline const char* catalog_side_name(CatalogSide s) {
  return s == CatalogSide::kUniqueness ? "uniqueness" : "obstruction";
}

struct CatalogMatch {
  Verdict verdict = Verdict::kUnique;
  CatalogSide side = CatalogSide::kUniqueness;
  // Position in the catalog of the matching graph; unset if none matched or
  // the instance exceeded the size bound.
  std::optional<int> index;
  bool size_bound = false;
};

// Catalogs computed once; the minor-code sets of the uniqueness graphs are
// cached for membership queries.
class Catalogs {
 public:
  static const Catalogs& get() {
    static const Catalogs instance;
    return instance;
  }

  const std::vector<CanonicalForm>& obstructions() const { return obstructions_; }
  const std::vector<CanonicalForm>& uniqueness() const { return uniqueness_; }

  // First uniqueness graph having `suppressed_code` as a homeomorphic minor.
  std::optional<int> covering(const CanonicalForm& suppressed_code) const {
    for (std::size_t i = 0; i < uniqueness_minors_.size(); ++i) {
      if (uniqueness_minors_[i].count(suppressed_code)) return static_cast<int>(i);
    }
    return std::nullopt;
  }

  // First obstruction that is a homeomorphic minor of the ring.
  std::optional<int> contained(const std::vector<std::pair<int, int>>& demands) const {
    const std::set<CanonicalForm> minors = ring_minor_codes(demands, 3);
    for (std::size_t i = 0; i < obstructions_.size(); ++i) {
      if (minors.count(obstructions_[i])) return static_cast<int>(i);
    }
    return std::nullopt;
  }

 private:
  Catalogs()
      : obstructions_(enumerate_minimal_obstruction_codes()),
        uniqueness_(enumerate_maximal_uniqueness_codes()) {
    for (const auto& c : uniqueness_) uniqueness_minors_.push_back(ring_minor_codes(code_demands(c)));
  }

  std::vector<CanonicalForm> obstructions_;
  std::vector<CanonicalForm> uniqueness_;
  std::vector<std::set<CanonicalForm>> uniqueness_minors_;
};

inline constexpr int kCatalogMaxVertices = 10;

// Rings whose suppressed form has more than 10 vertices get the verdict only.
inline CatalogMatch match_catalog(const RingInstance& ring) {
  CatalogMatch m;
  m.verdict = uniqueness_verdict(ring).verdict;
  m.side = m.verdict == Verdict::kUnique ? CatalogSide::kUniqueness : CatalogSide::kObstruction;
  std::vector<std::pair<int, int>> dem;
  for (const Demand& d : ring.demands()) dem.emplace_back(d.origin, d.destination);
  std::set<int> terminals;
  for (const auto& [o, d] : dem) {
    terminals.insert(o);
    terminals.insert(d);
  }
  if (static_cast<int>(terminals.size()) > kCatalogMaxVertices) {
    m.size_bound = true;
    return m;
  }
  const Catalogs& cat = Catalogs::get();
  if (m.verdict == Verdict::kUnique) {
    m.index = cat.covering(suppressed_ring_code(dem));
  } else {
    m.index = cat.contained(dem);
  }
  return m;
}

}  // namespace ringeq

#endif  // RINGEQ_CATALOG_HPP_
