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

#ifndef RINGEQ_RING_MODEL_HPP_
#define RINGEQ_RING_MODEL_HPP_

// A ring supply graph (a plane-embedded cycle) together with a simple demand
// digraph on its vertices. The stored vertex order is the positive
// direction: edge i joins vertices[i] and vertices[i + 1 mod n], its
// positive arc runs vertices[i] -> vertices[i + 1] and its negative arc runs
// the other way. Every OD-pair has exactly two routes, one per sign.

#include <compare>
#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ringeq/error.hpp"

namespace ringeq {

enum class Sign : std::int8_t { kPositive = 1, kNegative = -1 };

constexpr Sign opposite(Sign s) {
  return s == Sign::kPositive ? Sign::kNegative : Sign::kPositive;
}

constexpr char sign_char(Sign s) { return s == Sign::kPositive ? '+' : '-'; }

constexpr Sign kSigns[2] = {Sign::kPositive, Sign::kNegative};

struct Arc {
  int edge = 0;
  Sign sign = Sign::kPositive;

  friend auto operator<=>(const Arc&, const Arc&) = default;
};

// Dense arc numbering used by games built on a ring: 2 * edge (+1 if negative).
constexpr int arc_id(Arc a) {
  return 2 * a.edge + (a.sign == Sign::kPositive ? 0 : 1);
}

constexpr Arc arc_from_id(int id) {
  return Arc{id / 2, id % 2 == 0 ? Sign::kPositive : Sign::kNegative};
}

// Subset of demands, bit i for the demand at list position i.
using DemandMask = std::uint64_t;

constexpr DemandMask demand_bit(int demand) { return DemandMask{1} << demand; }

struct Demand {
  int origin = 0;
  int destination = 0;

  friend auto operator<=>(const Demand&, const Demand&) = default;
};

using LabelPair = std::pair<std::string, std::string>;

class RingInstance {
 public:
  RingInstance() = default;

  // Validates and builds. Throws Error with kDuplicateVertex,
  // kUnknownTerminal, kDuplicateDemand, kSelfLoopDemand or kInvalidInstance.
  static RingInstance build(std::vector<std::string> vertices,
                            const std::vector<LabelPair>& demands) {
    RingInstance r;
    if (vertices.size() < 2) {
      throw Error(ErrorCode::kInvalidInstance,
                  "a ring needs at least 2 vertices");
    }
    std::map<std::string, int, std::less<>> index;
    for (std::size_t i = 0; i < vertices.size(); ++i) {
      if (!index.emplace(vertices[i], static_cast<int>(i)).second) {
        throw Error(ErrorCode::kDuplicateVertex, "vertex '" + vertices[i] +
                                                     "' listed twice");
      }
    }
    if (demands.empty()) {
      throw Error(ErrorCode::kInvalidInstance, "at least one demand required");
    }
    std::set<Demand> seen;
    for (const auto& [o, d] : demands) {
      auto io = index.find(o);
      auto id = index.find(d);
      if (io == index.end() || id == index.end()) {
        throw Error(ErrorCode::kUnknownTerminal,
                    "demand (" + o + "," + d + ") references a vertex not on "
                    "the ring");
      }
      if (io->second == id->second) {
        throw Error(ErrorCode::kSelfLoopDemand, "demand (" + o + "," + d + ")");
      }
      Demand dm{io->second, id->second};
      if (!seen.insert(dm).second) {
        throw Error(ErrorCode::kDuplicateDemand, "demand (" + o + "," + d +
                                                     ") listed twice");
      }
      r.demands_.push_back(dm);
    }
    r.vertices_ = std::move(vertices);
    r.index_ = std::move(index);
    return r;
  }

  // Index-based construction for enumeration code; same validation.
  static RingInstance from_indices(int num_vertices,
                                   const std::vector<Demand>& demands) {
    std::vector<std::string> labels;
    labels.reserve(static_cast<std::size_t>(num_vertices));
    for (int i = 0; i < num_vertices; ++i) {
      labels.push_back("v" + std::to_string(i));
    }
    std::vector<LabelPair> pairs;
    for (const auto& d : demands) {
      if (d.origin < 0 || d.origin >= num_vertices || d.destination < 0 ||
          d.destination >= num_vertices) {
        throw Error(ErrorCode::kUnknownTerminal, "demand index out of range");
      }
      pairs.emplace_back(labels[static_cast<std::size_t>(d.origin)],
                         labels[static_cast<std::size_t>(d.destination)]);
    }
    return build(std::move(labels), pairs);
  }

  int num_vertices() const { return static_cast<int>(vertices_.size()); }
  int num_edges() const { return num_vertices(); }
  int num_arcs() const { return 2 * num_vertices(); }
  int num_demands() const { return static_cast<int>(demands_.size()); }

  const std::vector<std::string>& vertices() const { return vertices_; }
  const std::vector<Demand>& demands() const { return demands_; }
  const Demand& demand(int l) const {
    return demands_.at(static_cast<std::size_t>(l));
  }
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

  int tail(Arc a) const {
    return a.sign == Sign::kPositive ? a.edge : next(a.edge);
  }
  int head(Arc a) const {
    return a.sign == Sign::kPositive ? next(a.edge) : a.edge;
  }

  std::string arc_name(Arc a) const {
    std::string name = label(tail(a)) + "->" + label(head(a));
    // On a 2-cycle both edges join the same two vertices.
    if (num_vertices() == 2) name += "@" + std::to_string(a.edge);
    return name;
  }

  std::vector<Arc> arcs() const {
    std::vector<Arc> out;
    for (int e = 0; e < num_edges(); ++e) {
      out.push_back({e, Sign::kPositive});
      out.push_back({e, Sign::kNegative});
    }
    return out;
  }

  // True iff the sign-matching route of demand l traverses arc a.
  bool covers(int l, Arc a) const {
    const Demand& d = demand(l);
    const int n = num_vertices();
    const int span = mod(d.destination - d.origin, n);
    const bool on_positive = mod(a.edge - d.origin, n) < span;
    return a.sign == Sign::kPositive ? on_positive : !on_positive;
  }

  // Same vertex set in the opposite cyclic order.
  RingInstance reversed() const {
    std::vector<std::string> v(vertices_.rbegin(), vertices_.rend());
    return build(std::move(v), demand_labels());
  }

  // Keeps only the listed demands, in the listed order.
  RingInstance restricted(std::span<const int> keep) const {
    std::vector<LabelPair> pairs;
    for (int l : keep) pairs.push_back(demand_label(l));
    return build(vertices_, pairs);
  }

  LabelPair demand_label(int l) const {
    const Demand& d = demand(l);
    return {label(d.origin), label(d.destination)};
  }

  std::vector<LabelPair> demand_labels() const {
    std::vector<LabelPair> out;
    for (int l = 0; l < num_demands(); ++l) out.push_back(demand_label(l));
    return out;
  }

  // Inserts a new vertex in the middle of `edge`. Edge indices after `edge`
  // shift by one; the new edge is edge + 1.
  RingInstance subdivided(int edge, const std::string& new_label) const {
    if (edge < 0 || edge >= num_edges()) {
      throw Error(ErrorCode::kInvalidInstance, "edge index out of range");
    }
    std::vector<std::string> v = vertices_;
    v.insert(v.begin() + edge + 1, new_label);
    return build(std::move(v), demand_labels());
  }

  friend bool operator==(const RingInstance& a, const RingInstance& b) {
    return a.vertices_ == b.vertices_ && a.demands_ == b.demands_;
  }

 private:
  static int mod(int x, int n) { return ((x % n) + n) % n; }
  int next(int v) const { return (v + 1) % num_vertices(); }

  std::vector<std::string> vertices_;
  std::vector<Demand> demands_;
  std::map<std::string, int, std::less<>> index_;
};

inline RingInstance build_ring_instance(std::vector<std::string> vertices,
                                        const std::vector<LabelPair>& demands) {
  return RingInstance::build(std::move(vertices), demands);
}

// Arcs of the sign-`s` route of demand l, in travel order.
inline std::vector<Arc> route_arcs(const RingInstance& ring, int l, Sign s) {
  if (l < 0 || l >= ring.num_demands()) {
    throw Error(ErrorCode::kInvalidInstance, "demand index out of range");
  }
  const int n = ring.num_vertices();
  const Demand& d = ring.demand(l);
  std::vector<Arc> out;
  int v = d.origin;
  while (v != d.destination) {
    if (s == Sign::kPositive) {
      out.push_back({v, Sign::kPositive});
      v = (v + 1) % n;
    } else {
      const int prev = (v + n - 1) % n;
      out.push_back({prev, Sign::kNegative});
      v = prev;
    }
  }
  return out;
}

// The cells A_J^s: arc a belongs to cell (J, s) where s is its sign and J is
// the set of demands whose s-route contains a. J = 0 collects unused arcs.
class CoveragePartition {
 public:
  using Key = std::pair<DemandMask, Sign>;

  const std::vector<Arc>& cell(DemandMask j, Sign s) const {
    static const std::vector<Arc> kEmpty;
    auto it = cells_.find({j, s});
    return it == cells_.end() ? kEmpty : it->second;
  }

  bool nonempty(DemandMask j, Sign s) const { return !cell(j, s).empty(); }
  bool nonempty(DemandMask j) const {
    return nonempty(j, Sign::kPositive) || nonempty(j, Sign::kNegative);
  }

  DemandMask mask_of(Arc a) const {
    return masks_.at(static_cast<std::size_t>(arc_id(a)));
  }

  // Nonempty cells only, ordered by (mask, sign).
  const std::map<Key, std::vector<Arc>>& cells() const { return cells_; }

  int num_demands() const { return num_demands_; }

 private:
  friend CoveragePartition arc_partition(const RingInstance& ring);

  std::map<Key, std::vector<Arc>> cells_;
  std::vector<DemandMask> masks_;
  int num_demands_ = 0;
};

inline CoveragePartition arc_partition(const RingInstance& ring) {
  if (ring.num_demands() > 64) {
    throw Error(ErrorCode::kInvalidInstance,
                "arc partition supports at most 64 demands");
  }
  CoveragePartition p;
  p.num_demands_ = ring.num_demands();
  p.masks_.assign(static_cast<std::size_t>(ring.num_arcs()), 0);
  for (const Arc& a : ring.arcs()) {
    DemandMask m = 0;
    for (int l = 0; l < ring.num_demands(); ++l) {
      if (ring.covers(l, a)) m |= demand_bit(l);
    }
    p.masks_[static_cast<std::size_t>(arc_id(a))] = m;
    p.cells_[{m, a.sign}].push_back(a);
  }
  return p;
}

}  // namespace ringeq

#endif  // RINGEQ_RING_MODEL_HPP_
