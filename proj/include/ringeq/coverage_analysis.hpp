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

#ifndef RINGEQ_COVERAGE_ANALYSIS_HPP_
#define RINGEQ_COVERAGE_ANALYSIS_HPP_

// Decides the uniqueness property of ring instances from the maximum number
// of routes sharing an arc (threshold 2), and derives sound non-uniqueness
// witnesses for general graphs from their cycles.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ringeq/error.hpp"
#include "ringeq/ring_model.hpp"

namespace ringeq {

enum class Verdict { kUnique, kNonUnique };

inline const char* verdict_name(Verdict v) {
  return v == Verdict::kUnique ? "Unique" : "NonUnique";
}

struct CoverageReport {
  Verdict verdict = Verdict::kUnique;
  // Empty when a fast path decided the verdict without scanning.
  std::optional<int> max_coverage;
  std::optional<int> min_dir;
  std::optional<int> max_dir;
  std::optional<Arc> witness_arc;
  // Demands whose routes contain witness_arc (list positions).
  std::vector<int> witness_demands;
  bool fast_path = false;
};

inline int arc_coverage(const RingInstance& ring, Arc a) {
  int c = 0;
  for (int l = 0; l < ring.num_demands(); ++l) c += ring.covers(l, a) ? 1 : 0;
  return c;
}

// Tests every arc one after the other.
inline CoverageReport naive_max_coverage(const RingInstance& ring) {
  CoverageReport r;
  int best = -1;
  int min_pos = ring.num_demands();
  int max_pos = 0;
  for (const Arc& a : ring.arcs()) {
    const int c = arc_coverage(ring, a);
    if (a.sign == Sign::kPositive) {
      min_pos = std::min(min_pos, c);
      max_pos = std::max(max_pos, c);
    }
    if (c > best) {
      best = c;
      r.witness_arc = a;
    }
  }
  r.max_coverage = best;
  r.min_dir = min_pos;
  r.max_dir = max_pos;
  for (int l = 0; l < ring.num_demands(); ++l) {
    if (ring.covers(l, *r.witness_arc)) r.witness_demands.push_back(l);
  }
  r.verdict = best <= 2 ? Verdict::kUnique : Verdict::kNonUnique;
  return r;
}

struct RoundTripResult {
  int min_dir = 0;
  int max_dir = 0;
  int max_coverage = 0;
};

namespace detail {

inline int step_vertex(int v, Sign direction, int n) {
  return direction == Sign::kPositive ? (v + 1) % n : (v + n - 1) % n;
}

// Arc leaving v in the scan direction.
inline Arc leaving_arc(int v, Sign direction, int n) {
  return direction == Sign::kPositive ? Arc{v, Sign::kPositive}
                                      : Arc{(v + n - 1) % n, Sign::kNegative};
}

// One round trip: `list` holds demands whose tail was met and whose head was
// not. Calls observe(vertex, list, forgotten_pending) after the three
// per-vertex operations; forgotten_pending is used only by the second pass.
struct RoundTrip {
  const RingInstance& ring;
  std::vector<std::vector<int>> by_head;
  std::vector<std::vector<int>> by_tail;

  explicit RoundTrip(const RingInstance& r)
      : ring(r),
        by_head(static_cast<std::size_t>(r.num_vertices())),
        by_tail(static_cast<std::size_t>(r.num_vertices())) {
    for (int l = 0; l < r.num_demands(); ++l) {
      by_head[static_cast<std::size_t>(r.demand(l).destination)].push_back(l);
      by_tail[static_cast<std::size_t>(r.demand(l).origin)].push_back(l);
    }
  }
};

}  // namespace detail

// Single round trip from `start` in `direction`, maintaining (list, min, max).
inline RoundTripResult round_trip_scan(const RingInstance& ring, int start,
                                       Sign direction) {
  if (start < 0 || start >= ring.num_vertices()) {
    throw Error(ErrorCode::kUnknownTerminal, "start vertex out of range");
  }
  const int n = ring.num_vertices();
  detail::RoundTrip rt(ring);
  std::vector<char> in_list(static_cast<std::size_t>(ring.num_demands()), 0);
  int list_size = 0;
  int lo = 0;
  int hi = 0;
  int v = start;
  for (int step = 0; step < n; ++step, v = detail::step_vertex(v, direction, n)) {
    // First operation: routes whose tail lies "before" the start.
    int forgotten = 0;
    for (int l : rt.by_head[static_cast<std::size_t>(v)]) {
      if (!in_list[static_cast<std::size_t>(l)]) ++forgotten;
    }
    lo += forgotten;
    hi += forgotten;
    // Second operation.
    for (int l : rt.by_head[static_cast<std::size_t>(v)]) {
      if (in_list[static_cast<std::size_t>(l)]) {
        in_list[static_cast<std::size_t>(l)] = 0;
        --list_size;
      }
    }
    // Third operation.
    for (int l : rt.by_tail[static_cast<std::size_t>(v)]) {
      in_list[static_cast<std::size_t>(l)] = 1;
      ++list_size;
    }
    lo = std::min(lo, list_size);
    hi = std::max(hi, list_size);
  }
  return {lo, hi, std::max(ring.num_demands() - lo, hi)};
}

struct CoveredArc {
  Arc arc;
  std::vector<int> demands;
};

// Two round trips: the first finds (min, max), the second reads the list
// contents at the position attaining the overall maximum.
inline CoveredArc max_covered_arc(const RingInstance& ring, int start = 0,
                                  Sign direction = Sign::kPositive) {
  const RoundTripResult first = round_trip_scan(ring, start, direction);
  const int n = ring.num_vertices();
  const int num_l = ring.num_demands();
  const bool use_max = first.max_dir >= num_l - first.min_dir;
  const int target = use_max ? first.max_dir : first.min_dir;

  detail::RoundTrip rt(ring);
  // Demands met head-first during the first pass wrap around the start; they
  // cover every position before their head.
  std::vector<char> in_list(static_cast<std::size_t>(num_l), 0);
  std::vector<char> forgotten(static_cast<std::size_t>(num_l), 0);
  int v = start;
  for (int step = 0; step < n; ++step, v = detail::step_vertex(v, direction, n)) {
    for (int l : rt.by_head[static_cast<std::size_t>(v)]) {
      if (!in_list[static_cast<std::size_t>(l)]) {
        forgotten[static_cast<std::size_t>(l)] = 1;
      }
      in_list[static_cast<std::size_t>(l)] = 0;
    }
    for (int l : rt.by_tail[static_cast<std::size_t>(v)]) {
      in_list[static_cast<std::size_t>(l)] = 1;
    }
  }

  std::fill(in_list.begin(), in_list.end(), 0);
  std::vector<char> pending = forgotten;
  v = start;
  for (int step = 0; step < n; ++step, v = detail::step_vertex(v, direction, n)) {
    for (int l : rt.by_head[static_cast<std::size_t>(v)]) {
      in_list[static_cast<std::size_t>(l)] = 0;
      pending[static_cast<std::size_t>(l)] = 0;
    }
    for (int l : rt.by_tail[static_cast<std::size_t>(v)]) {
      in_list[static_cast<std::size_t>(l)] = 1;
    }
    std::vector<int> covering;
    for (int l = 0; l < num_l; ++l) {
      if (in_list[static_cast<std::size_t>(l)] ||
          pending[static_cast<std::size_t>(l)]) {
        covering.push_back(l);
      }
    }
    if (static_cast<int>(covering.size()) == target) {
      const Arc here = detail::leaving_arc(v, direction, n);
      if (use_max) return {here, covering};
      // The opposite arc of the same edge is covered by the complement.
      std::vector<int> rest;
      for (int l = 0; l < num_l; ++l) {
        if (!std::binary_search(covering.begin(), covering.end(), l)) {
          rest.push_back(l);
        }
      }
      return {Arc{here.edge, opposite(here.sign)}, rest};
    }
  }
  throw Error(ErrorCode::kVerificationFailed,
              "second round trip did not reproduce the first");
}

// Unique iff every arc lies in at most two routes. |L| <= 2 and |L| >= 5
// are decided without scanning unless `full` asks for the counts anyway.
inline CoverageReport uniqueness_verdict(const RingInstance& ring,
                                         bool full = false) {
  const int num_l = ring.num_demands();
  if (!full && (num_l <= 2 || num_l >= 5)) {
    CoverageReport r;
    r.fast_path = true;
    r.verdict = num_l <= 2 ? Verdict::kUnique : Verdict::kNonUnique;
    return r;
  }
  const RoundTripResult scan = round_trip_scan(ring, 0, Sign::kPositive);
  CoverageReport r;
  r.max_coverage = scan.max_coverage;
  r.min_dir = scan.min_dir;
  r.max_dir = scan.max_dir;
  r.verdict = scan.max_coverage <= 2 ? Verdict::kUnique : Verdict::kNonUnique;
  if (full) {
    CoveredArc w = max_covered_arc(ring);
    r.witness_arc = w.arc;
    r.witness_demands = std::move(w.demands);
  }
  return r;
}

// Undirected multigraph; parallel edges allowed, loops forbidden.
class GeneralGraph {
 public:
  GeneralGraph() = default;

  static GeneralGraph build(std::vector<std::string> vertices,
                            const std::vector<LabelPair>& edges) {
    GeneralGraph g;
    for (std::size_t i = 0; i < vertices.size(); ++i) {
      if (!g.index_.emplace(vertices[i], static_cast<int>(i)).second) {
        throw Error(ErrorCode::kDuplicateVertex, "vertex '" + vertices[i] +
                                                     "' listed twice");
      }
    }
    g.vertices_ = std::move(vertices);
    for (const auto& [a, b] : edges) {
      const int u = g.vertex_index(a);
      const int v = g.vertex_index(b);
      if (u == v) {
        throw Error(ErrorCode::kInvalidGraph, "loop at '" + a + "'");
      }
      g.edges_.emplace_back(u, v);
    }
    return g;
  }

  int num_vertices() const { return static_cast<int>(vertices_.size()); }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  const std::vector<std::string>& vertices() const { return vertices_; }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  const std::string& label(int v) const {
    return vertices_.at(static_cast<std::size_t>(v));
  }

  int vertex_index(std::string_view label) const {
    auto it = index_.find(label);
    if (it == index_.end()) {
      throw Error(ErrorCode::kUnknownTerminal,
                  "no vertex '" + std::string(label) + "'");
    }
    return it->second;
  }

  friend bool operator==(const GeneralGraph& a, const GeneralGraph& b) {
    return a.vertices_ == b.vertices_ && a.edges_ == b.edges_;
  }

 private:
  std::vector<std::string> vertices_;
  std::vector<std::pair<int, int>> edges_;
  std::map<std::string, int, std::less<>> index_;
};

struct StrongUniquenessResult {
  bool holds = true;
  // A cycle of length >= 3 in the parallel-collapsed graph, as vertex indices.
  std::optional<std::vector<int>> witness_cycle;
};

// Holds iff collapsing parallel classes leaves a forest.
inline StrongUniquenessResult strong_uniqueness(const GeneralGraph& g) {
  const int n = g.num_vertices();
  std::vector<std::set<int>> adj(static_cast<std::size_t>(n));
  for (const auto& [u, v] : g.edges()) {
    adj[static_cast<std::size_t>(u)].insert(v);
    adj[static_cast<std::size_t>(v)].insert(u);
  }
  std::vector<int> parent(static_cast<std::size_t>(n), -1);
  std::vector<int> depth(static_cast<std::size_t>(n), -1);
  for (int root = 0; root < n; ++root) {
    if (depth[static_cast<std::size_t>(root)] >= 0) continue;
    depth[static_cast<std::size_t>(root)] = 0;
    std::vector<int> stack{root};
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      for (int w : adj[static_cast<std::size_t>(u)]) {
        if (w == parent[static_cast<std::size_t>(u)]) continue;
        if (depth[static_cast<std::size_t>(w)] >= 0) {
          // Non-tree edge u-w closes a cycle through their common ancestor.
          std::vector<int> left{u};
          std::vector<int> right{w};
          int a = u;
          int b = w;
          while (a != b) {
            if (depth[static_cast<std::size_t>(a)] >=
                depth[static_cast<std::size_t>(b)]) {
              a = parent[static_cast<std::size_t>(a)];
              left.push_back(a);
            } else {
              b = parent[static_cast<std::size_t>(b)];
              right.push_back(b);
            }
          }
          right.pop_back();  // common ancestor already in `left`
          std::vector<int> cycle(left.rbegin(), left.rend());
          cycle.insert(cycle.end(), right.begin(), right.end());
          return {false, cycle};
        }
        parent[static_cast<std::size_t>(w)] = u;
        depth[static_cast<std::size_t>(w)] = depth[static_cast<std::size_t>(u)] + 1;
        stack.push_back(w);
      }
    }
  }
  return {true, std::nullopt};
}

struct ScanOptions {
  int max_cycle_length = 12;
  std::size_t max_cycles = 1'000'000;
};

struct ScanResult {
  Verdict verdict = Verdict::kUnique;  // only ever kNonUnique when conclusive
  bool conclusive = false;             // false means Inconclusive
  // Witness cycle as labels of the bridge-contracted graph (merged vertices
  // are named "a+b"), and the original indices of the demands kept on it.
  std::vector<std::string> witness_cycle;
  std::vector<int> witness_demands;
  std::optional<CoverageReport> witness_report;
  // Set when cycles longer than the bound (or beyond the count cap) may exist;
  // the result then stays Inconclusive unless a witness was found.
  bool cycle_bound_exceeded = false;
  int contracted_bridges = 0;
};

namespace detail {

// Bridges of a multigraph (parallel edges are never bridges).
inline std::vector<char> find_bridges(int n,
                                      const std::vector<std::pair<int, int>>& edges) {
  std::vector<std::vector<std::pair<int, int>>> adj(static_cast<std::size_t>(n));
  for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
    adj[static_cast<std::size_t>(edges[static_cast<std::size_t>(e)].first)]
        .emplace_back(edges[static_cast<std::size_t>(e)].second, e);
    adj[static_cast<std::size_t>(edges[static_cast<std::size_t>(e)].second)]
        .emplace_back(edges[static_cast<std::size_t>(e)].first, e);
  }
  std::vector<char> bridge(edges.size(), 0);
  std::vector<int> disc(static_cast<std::size_t>(n), -1);
  std::vector<int> low(static_cast<std::size_t>(n), 0);
  int timer = 0;
  std::function<void(int, int)> dfs = [&](int u, int via) {
    disc[static_cast<std::size_t>(u)] = low[static_cast<std::size_t>(u)] = timer++;
    for (const auto& [w, e] : adj[static_cast<std::size_t>(u)]) {
      if (e == via) continue;
      if (disc[static_cast<std::size_t>(w)] < 0) {
        dfs(w, e);
        low[static_cast<std::size_t>(u)] =
            std::min(low[static_cast<std::size_t>(u)], low[static_cast<std::size_t>(w)]);
        if (low[static_cast<std::size_t>(w)] > disc[static_cast<std::size_t>(u)]) {
          bridge[static_cast<std::size_t>(e)] = 1;
        }
      } else {
        low[static_cast<std::size_t>(u)] =
            std::min(low[static_cast<std::size_t>(u)], disc[static_cast<std::size_t>(w)]);
      }
    }
  };
  for (int v = 0; v < n; ++v) {
    if (disc[static_cast<std::size_t>(v)] < 0) dfs(v, -1);
  }
  return bridge;
}

// Simple cycles of length >= 2 (length 2 needs a parallel pair), each listed
// once starting at its smallest vertex, sorted by (length, sequence).
inline std::vector<std::vector<int>> enumerate_cycles(
    int n, const std::vector<std::pair<int, int>>& edges, int max_len,
    std::size_t max_count, bool* truncated) {
  std::vector<std::vector<int>> cycles;
  std::map<std::pair<int, int>, int> multiplicity;
  std::vector<std::set<int>> adj(static_cast<std::size_t>(n));
  for (auto [u, v] : edges) {
    if (u > v) std::swap(u, v);
    ++multiplicity[{u, v}];
    adj[static_cast<std::size_t>(u)].insert(v);
    adj[static_cast<std::size_t>(v)].insert(u);
  }
  if (max_len >= 2) {
    for (const auto& [uv, count] : multiplicity) {
      if (count >= 2) cycles.push_back({uv.first, uv.second});
    }
  }
  std::vector<int> path;
  std::vector<char> on_path(static_cast<std::size_t>(n), 0);
  std::function<void(int)> extend = [&](int u) {
    if (cycles.size() >= max_count) {
      *truncated = true;
      return;
    }
    const int start = path.front();
    for (int w : adj[static_cast<std::size_t>(u)]) {
      if (w < start) continue;
      if (w == start) {
        // Each cycle is found in both directions; keep one.
        if (path.size() >= 3 && path[1] < path.back()) cycles.push_back(path);
        continue;
      }
      if (on_path[static_cast<std::size_t>(w)]) continue;
      if (static_cast<int>(path.size()) >= max_len) {
        *truncated = true;
        continue;
      }
      on_path[static_cast<std::size_t>(w)] = 1;
      path.push_back(w);
      extend(w);
      path.pop_back();
      on_path[static_cast<std::size_t>(w)] = 0;
    }
  };
  for (int s = 0; s < n; ++s) {
    path = {s};
    on_path[static_cast<std::size_t>(s)] = 1;
    extend(s);
    on_path[static_cast<std::size_t>(s)] = 0;
  }
  std::stable_sort(cycles.begin(), cycles.end(),
                   [](const std::vector<int>& a, const std::vector<int>& b) {
                     if (a.size() != b.size()) return a.size() < b.size();
                     return a < b;
                   });
  return cycles;
}

}  // namespace detail

// Contracts bridges, then tries every cycle (shortest first) as a ring with
// the demands whose two terminals lie on it. Never concludes Unique.
inline ScanResult scan_cycle_obstructions(const GeneralGraph& g,
                                          const std::vector<LabelPair>& demands,
                                          const ScanOptions& options = {}) {
  const int n = g.num_vertices();
  std::vector<std::pair<int, int>> dem;
  for (const auto& [o, d] : demands) {
    dem.emplace_back(g.vertex_index(o), g.vertex_index(d));
  }

  // Bridge contraction via union-find; representative = smallest index.
  std::vector<int> rep(static_cast<std::size_t>(n));
  std::iota(rep.begin(), rep.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (rep[static_cast<std::size_t>(x)] != x) x = rep[static_cast<std::size_t>(x)];
    return x;
  };
  const std::vector<char> bridge = detail::find_bridges(n, g.edges());
  ScanResult result;
  for (std::size_t e = 0; e < bridge.size(); ++e) {
    if (!bridge[e]) continue;
    ++result.contracted_bridges;
    const int a = find(g.edges()[e].first);
    const int b = find(g.edges()[e].second);
    rep[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
  }
  std::vector<int> compact(static_cast<std::size_t>(n), -1);
  std::vector<std::string> names;
  for (int v = 0; v < n; ++v) {
    const int r = find(v);
    if (compact[static_cast<std::size_t>(r)] < 0) {
      compact[static_cast<std::size_t>(r)] = static_cast<int>(names.size());
      names.push_back(g.label(v));
    } else if (r != v) {
      names[static_cast<std::size_t>(compact[static_cast<std::size_t>(r)])] +=
          "+" + g.label(v);
    }
  }
  auto to_c = [&](int v) { return compact[static_cast<std::size_t>(find(v))]; };
  std::vector<std::pair<int, int>> cedges;
  for (std::size_t e = 0; e < g.edges().size(); ++e) {
    if (bridge[e]) continue;
    cedges.emplace_back(to_c(g.edges()[e].first), to_c(g.edges()[e].second));
  }

  bool truncated = false;
  const auto cycles = detail::enumerate_cycles(
      static_cast<int>(names.size()), cedges, options.max_cycle_length,
      options.max_cycles, &truncated);
  result.cycle_bound_exceeded = truncated;

  for (const auto& cycle : cycles) {
    std::map<int, int> position;
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      position[cycle[i]] = static_cast<int>(i);
    }
    std::vector<LabelPair> kept;
    std::vector<int> kept_index;
    std::set<std::pair<int, int>> seen;
    for (std::size_t l = 0; l < dem.size(); ++l) {
      const int o = to_c(dem[l].first);
      const int d = to_c(dem[l].second);
      if (o == d || !position.count(o) || !position.count(d)) continue;
      if (!seen.insert({o, d}).second) continue;
      kept.emplace_back(names[static_cast<std::size_t>(o)],
                        names[static_cast<std::size_t>(d)]);
      kept_index.push_back(static_cast<int>(l));
    }
    if (kept.size() < 3) continue;  // |L| <= 2 rings are always unique
    std::vector<std::string> ring_labels;
    for (int v : cycle) ring_labels.push_back(names[static_cast<std::size_t>(v)]);
    const RingInstance ring = RingInstance::build(ring_labels, kept);
    CoverageReport report = uniqueness_verdict(ring, /*full=*/true);
    if (report.verdict == Verdict::kNonUnique) {
      result.verdict = Verdict::kNonUnique;
      result.conclusive = true;
      result.witness_cycle = std::move(ring_labels);
      result.witness_demands = std::move(kept_index);
      result.witness_report = std::move(report);
      return result;
    }
  }
  return result;
}

}  // namespace ringeq

#endif  // RINGEQ_COVERAGE_ANALYSIS_HPP_
