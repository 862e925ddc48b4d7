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

#ifndef RINGEQ_MIXED_GRAPH_HPP_
#define RINGEQ_MIXED_GRAPH_HPP_

// Mixed graphs G + H: undirected supply edges (a multiset, no loops) plus a
// simple set of directed demand arcs. Provides the minor operations used by
// the catalogs: contraction, degree-2 suppression, canonical forms and a
// homeomorphic-minor test.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ringeq/error.hpp"
#include "ringeq/ring_model.hpp"

namespace ringeq {

struct MixedGraph {
  std::vector<std::string> labels;
  std::vector<std::pair<int, int>> edges;
  std::vector<std::pair<int, int>> demands;

  int num_vertices() const { return static_cast<int>(labels.size()); }
  int num_edges() const { return static_cast<int>(edges.size()); }
  int num_demands() const { return static_cast<int>(demands.size()); }

  void validate() const {
    const int n = num_vertices();
    auto in_range = [n](int v) { return v >= 0 && v < n; };
    std::set<std::string> names(labels.begin(), labels.end());
    if (static_cast<int>(names.size()) != n) {
      throw Error(ErrorCode::kDuplicateVertex, "mixed graph labels repeat");
    }
    for (const auto& [u, v] : edges) {
      if (!in_range(u) || !in_range(v)) {
        throw Error(ErrorCode::kInvalidGraph, "edge endpoint out of range");
      }
      if (u == v) throw Error(ErrorCode::kInvalidGraph, "supply loop");
    }
    std::set<std::pair<int, int>> seen;
    for (const auto& d : demands) {
      if (!in_range(d.first) || !in_range(d.second)) {
        throw Error(ErrorCode::kUnknownTerminal, "demand endpoint out of range");
      }
      if (d.first == d.second) throw Error(ErrorCode::kSelfLoopDemand, "demand loop");
      if (!seen.insert(d).second) {
        throw Error(ErrorCode::kDuplicateDemand, "repeated demand arc");
      }
    }
  }

  bool is_terminal(int v) const {
    return std::any_of(demands.begin(), demands.end(), [v](const auto& d) {
      return d.first == v || d.second == v;
    });
  }

  friend bool operator==(const MixedGraph&, const MixedGraph&) = default;
};

inline MixedGraph to_mixed_graph(const RingInstance& ring) {
  MixedGraph m;
  m.labels = ring.vertices();
  const int n = ring.num_vertices();
  for (int i = 0; i < n; ++i) m.edges.emplace_back(i, (i + 1) % n);
  for (const Demand& d : ring.demands()) {
    m.demands.emplace_back(d.origin, d.destination);
  }
  return m;
}

// Cyclic vertex order if the supply graph is a single cycle (a 2-cycle is
// two parallel edges), starting at vertex 0 along its lowest-index edge.
inline std::optional<std::vector<int>> ring_order(const MixedGraph& m) {
  const int n = m.num_vertices();
  if (n < 2 || m.num_edges() != n) return std::nullopt;
  std::vector<std::vector<int>> incident(static_cast<std::size_t>(n));
  for (int e = 0; e < m.num_edges(); ++e) {
    incident[static_cast<std::size_t>(m.edges[static_cast<std::size_t>(e)].first)]
        .push_back(e);
    incident[static_cast<std::size_t>(m.edges[static_cast<std::size_t>(e)].second)]
        .push_back(e);
  }
  for (const auto& inc : incident) {
    if (inc.size() != 2) return std::nullopt;
  }
  std::vector<int> order{0};
  int v = 0;
  int via = incident[0][0];
  while (true) {
    const auto& [a, b] = m.edges[static_cast<std::size_t>(via)];
    const int w = a == v ? b : a;
    if (w == 0) break;
    order.push_back(w);
    const auto& inc = incident[static_cast<std::size_t>(w)];
    via = inc[0] == via ? inc[1] : inc[0];
    v = w;
  }
  if (static_cast<int>(order.size()) != n) return std::nullopt;  // disconnected
  return order;
}

inline std::optional<RingInstance> as_ring(const MixedGraph& m) {
  auto order = ring_order(m);
  if (!order || m.demands.empty()) return std::nullopt;
  std::vector<std::string> labels;
  for (int v : *order) labels.push_back(m.labels[static_cast<std::size_t>(v)]);
  std::vector<LabelPair> pairs;
  for (const auto& [o, d] : m.demands) {
    pairs.emplace_back(m.labels[static_cast<std::size_t>(o)],
                       m.labels[static_cast<std::size_t>(d)]);
  }
  return RingInstance::build(std::move(labels), pairs);
}

// Label-invariant encoding: equal iff the mixed graphs are isomorphic. Rings
// compare under rotations and reflections; codes sort by (kind, |L|, |V|).
using CanonicalForm = std::vector<int>;

// Demands given by positions 0..n-1 along the cycle.
inline CanonicalForm ring_canonical_code(
    int n, const std::vector<std::pair<int, int>>& demands) {
  CanonicalForm best;
  std::vector<std::pair<int, int>> mapped(demands.size());
  for (int dir = 0; dir < 2; ++dir) {
    for (int s = 0; s < n; ++s) {
      for (std::size_t i = 0; i < demands.size(); ++i) {
        auto pos = [&](int v) {
          return dir == 0 ? ((v - s) % n + n) % n : ((s - v) % n + n) % n;
        };
        mapped[i] = {pos(demands[i].first), pos(demands[i].second)};
      }
      std::sort(mapped.begin(), mapped.end());
      CanonicalForm code{0, static_cast<int>(demands.size()), n};
      for (const auto& [o, d] : mapped) {
        code.push_back(o);
        code.push_back(d);
      }
      if (best.empty() || code < best) best = std::move(code);
    }
  }
  return best;
}

namespace detail {

// Stable colour refinement on (supply degree, demand out/in) signatures.
inline std::vector<int> refine_colors(const MixedGraph& m) {
  const int n = m.num_vertices();
  std::vector<std::vector<int>> nbr(static_cast<std::size_t>(n));
  std::vector<std::vector<int>> out(static_cast<std::size_t>(n));
  std::vector<std::vector<int>> in(static_cast<std::size_t>(n));
  for (const auto& [u, v] : m.edges) {
    nbr[static_cast<std::size_t>(u)].push_back(v);
    nbr[static_cast<std::size_t>(v)].push_back(u);
  }
  for (const auto& [o, d] : m.demands) {
    out[static_cast<std::size_t>(o)].push_back(d);
    in[static_cast<std::size_t>(d)].push_back(o);
  }
  std::vector<int> color(static_cast<std::size_t>(n), 0);
  int classes = 1;
  while (true) {
    std::vector<std::vector<int>> sig(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) {
      auto& s = sig[static_cast<std::size_t>(v)];
      s.push_back(color[static_cast<std::size_t>(v)]);
      for (const auto* list : {&nbr, &out, &in}) {
        std::vector<int> c;
        for (int w : (*list)[static_cast<std::size_t>(v)]) {
          c.push_back(color[static_cast<std::size_t>(w)]);
        }
        std::sort(c.begin(), c.end());
        s.push_back(-1);
        s.insert(s.end(), c.begin(), c.end());
      }
    }
    std::vector<std::vector<int>> distinct = sig;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    for (int v = 0; v < n; ++v) {
      color[static_cast<std::size_t>(v)] = static_cast<int>(
          std::lower_bound(distinct.begin(), distinct.end(),
                           sig[static_cast<std::size_t>(v)]) -
          distinct.begin());
    }
    if (static_cast<int>(distinct.size()) == classes) break;
    classes = static_cast<int>(distinct.size());
  }
  return color;
}

inline CanonicalForm general_canonical_code(const MixedGraph& m) {
  const int n = m.num_vertices();
  const std::vector<int> color = refine_colors(m);
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return color[static_cast<std::size_t>(a)] < color[static_cast<std::size_t>(b)];
  });
  // Cells of equal colour; every order within cells is tried.
  std::vector<std::pair<int, int>> cells;
  double work = 1;
  for (int i = 0; i < n;) {
    int j = i;
    while (j < n && color[static_cast<std::size_t>(order[static_cast<std::size_t>(j)])] ==
                        color[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])]) {
      ++j;
    }
    cells.emplace_back(i, j);
    for (int k = 2; k <= j - i; ++k) work *= k;
    i = j;
  }
  if (work > 2e6) {
    throw Error(ErrorCode::kSizeBound, "graph too symmetric for canonical form");
  }
  CanonicalForm best;
  std::vector<int> pos(static_cast<std::size_t>(n));
  auto emit = [&]() {
    for (int i = 0; i < n; ++i) {
      pos[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] = i;
    }
    std::vector<std::pair<int, int>> e;
    for (const auto& [u, v] : m.edges) {
      const int a = pos[static_cast<std::size_t>(u)];
      const int b = pos[static_cast<std::size_t>(v)];
      e.emplace_back(std::min(a, b), std::max(a, b));
    }
    std::vector<std::pair<int, int>> d;
    for (const auto& [o, t] : m.demands) {
      d.emplace_back(pos[static_cast<std::size_t>(o)], pos[static_cast<std::size_t>(t)]);
    }
    std::sort(e.begin(), e.end());
    std::sort(d.begin(), d.end());
    CanonicalForm code{1, m.num_demands(), n, m.num_edges()};
    for (const auto& [a, b] : e) {
      code.push_back(a);
      code.push_back(b);
    }
    for (const auto& [a, b] : d) {
      code.push_back(a);
      code.push_back(b);
    }
    if (best.empty() || code < best) best = std::move(code);
  };
  std::function<void(std::size_t)> walk = [&](std::size_t c) {
    if (c == cells.size()) {
      emit();
      return;
    }
    auto first = order.begin() + cells[c].first;
    auto last = order.begin() + cells[c].second;
    std::sort(first, last);
    do {
      walk(c + 1);
    } while (std::next_permutation(first, last));
  };
  walk(0);
  return best;
}

}  // namespace detail

inline CanonicalForm canonical_form(const MixedGraph& m) {
  if (auto order = ring_order(m)) {
    std::vector<int> pos(static_cast<std::size_t>(m.num_vertices()));
    for (std::size_t i = 0; i < order->size(); ++i) {
      pos[static_cast<std::size_t>((*order)[i])] = static_cast<int>(i);
    }
    std::vector<std::pair<int, int>> d;
    for (const auto& [o, t] : m.demands) {
      d.emplace_back(pos[static_cast<std::size_t>(o)], pos[static_cast<std::size_t>(t)]);
    }
    return ring_canonical_code(m.num_vertices(), d);
  }
  return detail::general_canonical_code(m);
}

// Deletes the edge, identifies its endpoints (the merged vertex is labelled
// "u+v"), drops supply loops and remaps demands. nullopt (Rejected) when the
// demand digraph would gain a loop or a repeated ordered pair.
inline std::optional<MixedGraph> contract_edge(const MixedGraph& m, int edge) {
  if (edge < 0 || edge >= m.num_edges()) {
    throw Error(ErrorCode::kInvalidGraph, "edge index out of range");
  }
  const int u = std::min(m.edges[static_cast<std::size_t>(edge)].first,
                         m.edges[static_cast<std::size_t>(edge)].second);
  const int v = std::max(m.edges[static_cast<std::size_t>(edge)].first,
                         m.edges[static_cast<std::size_t>(edge)].second);
  auto remap = [u, v](int x) {
    if (x == v) return u;
    return x > v ? x - 1 : x;
  };
  MixedGraph r;
  for (int x = 0; x < m.num_vertices(); ++x) {
    if (x == v) continue;
    r.labels.push_back(x == u ? m.labels[static_cast<std::size_t>(u)] + "+" +
                                    m.labels[static_cast<std::size_t>(v)]
                              : m.labels[static_cast<std::size_t>(x)]);
  }
  for (int e = 0; e < m.num_edges(); ++e) {
    if (e == edge) continue;
    const int a = remap(m.edges[static_cast<std::size_t>(e)].first);
    const int b = remap(m.edges[static_cast<std::size_t>(e)].second);
    if (a != b) r.edges.emplace_back(a, b);
  }
  std::set<std::pair<int, int>> seen;
  for (const auto& [o, d] : m.demands) {
    const int a = remap(o);
    const int b = remap(d);
    if (a == b || !seen.insert({a, b}).second) return std::nullopt;
    r.demands.emplace_back(a, b);
  }
  return r;
}

// Replaces non-terminal degree-2 vertices (with two distinct neighbours) and
// their two edges by a single edge, until none is left.
inline MixedGraph suppress_degree2(MixedGraph m) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (int x = 0; x < m.num_vertices(); ++x) {
      if (m.is_terminal(x)) continue;
      std::vector<int> inc;
      for (int e = 0; e < m.num_edges(); ++e) {
        if (m.edges[static_cast<std::size_t>(e)].first == x ||
            m.edges[static_cast<std::size_t>(e)].second == x) {
          inc.push_back(e);
        }
      }
      if (inc.size() != 2) continue;
      auto other = [&](int e) {
        const auto& [a, b] = m.edges[static_cast<std::size_t>(e)];
        return a == x ? b : a;
      };
      const int a = other(inc[0]);
      const int b = other(inc[1]);
      if (a == b) continue;  // would create a loop
      auto remap = [x](int y) { return y > x ? y - 1 : y; };
      MixedGraph r;
      for (int y = 0; y < m.num_vertices(); ++y) {
        if (y != x) r.labels.push_back(m.labels[static_cast<std::size_t>(y)]);
      }
      for (int e = 0; e < m.num_edges(); ++e) {
        if (e == inc[0] || e == inc[1]) continue;
        r.edges.emplace_back(remap(m.edges[static_cast<std::size_t>(e)].first),
                             remap(m.edges[static_cast<std::size_t>(e)].second));
      }
      r.edges.emplace_back(remap(a), remap(b));
      for (const auto& [o, d] : m.demands) r.demands.emplace_back(remap(o), remap(d));
      m = std::move(r);
      changed = true;
      break;
    }
  }
  return m;
}

// Calls fn(indices) for every k-subset of {0..n-1} in lexicographic order.
template <typename Fn>
void for_each_combination(int n, int k, Fn fn) {
  if (k < 0 || k > n) return;
  std::vector<int> idx(static_cast<std::size_t>(k));
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    fn(static_cast<const std::vector<int>&>(idx));
    int i = k - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) return;
    ++idx[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) {
      idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
    }
  }
}

// Canonical code of a ring (demands by cyclic position) after dropping
// every vertex that is no demand endpoint.
inline CanonicalForm suppressed_ring_code(const std::vector<std::pair<int, int>>& demands) {
  std::vector<int> terminals;
  for (const auto& [o, d] : demands) {
    terminals.push_back(o);
    terminals.push_back(d);
  }
  std::sort(terminals.begin(), terminals.end());
  terminals.erase(std::unique(terminals.begin(), terminals.end()), terminals.end());
  auto rank = [&](int v) {
    return static_cast<int>(std::lower_bound(terminals.begin(), terminals.end(), v) -
                            terminals.begin());
  };
  std::vector<std::pair<int, int>> ranked;
  for (const auto& [o, d] : demands) ranked.emplace_back(rank(o), rank(d));
  return ring_canonical_code(static_cast<int>(terminals.size()), ranked);
}

// Codes of every ring minor (keep a demand subset, contract edges), taken
// after suppression. Demands are given by cyclic position. Only subsets of
// size `demand_count` when it is >= 0.
inline std::set<CanonicalForm> ring_minor_codes(
    const std::vector<std::pair<int, int>>& demands, int demand_count = -1) {
  const int num_l = static_cast<int>(demands.size());
  std::set<CanonicalForm> codes;
  auto visit = [&](const std::vector<int>& subset) {
    std::vector<int> terminal_pos;
    std::vector<std::pair<int, int>> kept;
    for (int l : subset) {
      kept.push_back(demands[static_cast<std::size_t>(l)]);
      terminal_pos.push_back(kept.back().first);
      terminal_pos.push_back(kept.back().second);
    }
    std::sort(terminal_pos.begin(), terminal_pos.end());
    terminal_pos.erase(std::unique(terminal_pos.begin(), terminal_pos.end()),
                       terminal_pos.end());
    const int k = static_cast<int>(terminal_pos.size());
    std::map<int, int> rank;
    for (int i = 0; i < k; ++i) rank[terminal_pos[static_cast<std::size_t>(i)]] = i;
    // Bit i of `keep` keeps the edge between terminals i and i + 1; the
    // other edges are contracted.
    std::vector<int> group(static_cast<std::size_t>(k));
    std::vector<std::pair<int, int>> dem;
    std::set<std::pair<int, int>> seen;
    for (std::uint32_t keep = 0; keep < (1u << k); ++keep) {
      const int groups = std::popcount(keep);
      if (groups < 2) continue;
      int g = 0;
      for (int i = 0; i < k; ++i) {
        group[static_cast<std::size_t>(i)] = g;
        if (keep >> i & 1u) ++g;
      }
      // Terminals after the last kept edge wrap into group 0.
      for (int i = 0; i < k; ++i) {
        if (group[static_cast<std::size_t>(i)] == groups) group[static_cast<std::size_t>(i)] = 0;
      }
      dem.clear();
      seen.clear();
      bool ok = true;
      for (const auto& [o, d] : kept) {
        const int a = group[static_cast<std::size_t>(rank[o])];
        const int b = group[static_cast<std::size_t>(rank[d])];
        if (a == b || !seen.insert({a, b}).second) {
          ok = false;
          break;
        }
        dem.emplace_back(a, b);
      }
      if (ok) codes.insert(ring_canonical_code(groups, dem));
    }
  };
  if (demand_count >= 0) {
    for_each_combination(num_l, demand_count, visit);
  } else {
    if (num_l > 20) throw Error(ErrorCode::kSizeBound, "too many demands");
    for (int size = 1; size <= num_l; ++size) for_each_combination(num_l, size, visit);
  }
  return codes;
}

// Demands of a ring-shaped mixed graph by cyclic position.
inline std::vector<std::pair<int, int>> ring_positions(const MixedGraph& ring) {
  auto order = ring_order(ring);
  if (!order) throw Error(ErrorCode::kInvalidGraph, "not a ring");
  std::vector<int> pos(static_cast<std::size_t>(ring.num_vertices()));
  for (std::size_t i = 0; i < order->size(); ++i) {
    pos[static_cast<std::size_t>((*order)[i])] = static_cast<int>(i);
  }
  std::vector<std::pair<int, int>> out;
  for (const auto& [o, d] : ring.demands) {
    out.emplace_back(pos[static_cast<std::size_t>(o)], pos[static_cast<std::size_t>(d)]);
  }
  return out;
}

inline std::set<CanonicalForm> ring_minor_codes(const MixedGraph& ring,
                                                int demand_count = -1) {
  return ring_minor_codes(ring_positions(ring), demand_count);
}

// True iff `small` is homeomorphic to a minor of `big` (supply edge
// deletions and contractions, demand arc deletions, vertex deletions).
// Both graphs are reduced by suppress_degree2 first and must then have at
// most `max_vertices` vertices.
inline bool is_homeo_minor(const MixedGraph& small, const MixedGraph& big,
                           int max_vertices = 10,
                           std::size_t max_states = 200'000) {
  small.validate();
  big.validate();
  const MixedGraph s = suppress_degree2(small);
  const MixedGraph b = suppress_degree2(big);
  if (s.num_vertices() > max_vertices || b.num_vertices() > max_vertices) {
    throw Error(ErrorCode::kSizeBound, "homeomorphic-minor test limited to " +
                                           std::to_string(max_vertices) +
                                           " vertices");
  }
  if (s.num_demands() > b.num_demands() || s.num_vertices() > b.num_vertices() ||
      s.num_edges() > b.num_edges()) {
    return false;
  }
  const CanonicalForm target = canonical_form(s);
  if (ring_order(s) && ring_order(b) && s.num_demands() > 0) {
    return ring_minor_codes(b, s.num_demands()).count(target) > 0;
  }

  // General case: breadth-first search over minors with memoisation.
  std::set<CanonicalForm> visited;
  std::deque<MixedGraph> queue{b};
  visited.insert(canonical_form(b));
  while (!queue.empty()) {
    MixedGraph cur = std::move(queue.front());
    queue.pop_front();
    if (canonical_form(suppress_degree2(cur)) == target) return true;
    std::vector<MixedGraph> next;
    for (int l = 0; l < cur.num_demands(); ++l) {
      if (cur.num_demands() <= s.num_demands()) break;
      MixedGraph c = cur;
      c.demands.erase(c.demands.begin() + l);
      next.push_back(std::move(c));
    }
    for (int e = 0; e < cur.num_edges(); ++e) {
      if (cur.num_edges() > s.num_edges()) {
        MixedGraph c = cur;
        c.edges.erase(c.edges.begin() + e);
        next.push_back(std::move(c));
      }
      if (cur.num_vertices() > s.num_vertices()) {
        if (auto c = contract_edge(cur, e)) next.push_back(std::move(*c));
      }
    }
    if (cur.num_vertices() > s.num_vertices()) {
      for (int v = 0; v < cur.num_vertices(); ++v) {
        const bool isolated = std::none_of(
            cur.edges.begin(), cur.edges.end(),
            [v](const auto& e) { return e.first == v || e.second == v; });
        if (!isolated || cur.is_terminal(v)) continue;
        MixedGraph c;
        auto remap = [v](int y) { return y > v ? y - 1 : y; };
        for (int y = 0; y < cur.num_vertices(); ++y) {
          if (y != v) c.labels.push_back(cur.labels[static_cast<std::size_t>(y)]);
        }
        for (const auto& [x, y] : cur.edges) c.edges.emplace_back(remap(x), remap(y));
        for (const auto& [x, y] : cur.demands) c.demands.emplace_back(remap(x), remap(y));
        next.push_back(std::move(c));
      }
    }
    for (auto& c : next) {
      if (visited.insert(canonical_form(c)).second) {
        if (visited.size() > max_states) {
          throw Error(ErrorCode::kSizeBound, "minor search exceeded state cap");
        }
        queue.push_back(std::move(c));
      }
    }
  }
  return false;
}

}  // namespace ringeq

#endif  // RINGEQ_MIXED_GRAPH_HPP_
