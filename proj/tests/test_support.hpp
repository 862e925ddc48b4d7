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

#ifndef RINGEQ_TESTS_TEST_SUPPORT_HPP_
#define RINGEQ_TESTS_TEST_SUPPORT_HPP_

// Random generators and brute-force oracles shared by the test binaries.
// The oracles walk the ring vertex by vertex and never call the library's
// coverage predicates.

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "ringeq/ringeq.hpp"

namespace ringeq::testing {

using Rng = std::mt19937_64;

inline int uniform(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

// n in [min_n, max_n], |L| in [1, min(max_l, n(n-1))] distinct ordered pairs.
inline RingInstance random_ring(Rng& rng, int max_n, int max_l, int min_n = 2) {
  const int n = uniform(rng, min_n, max_n);
  std::vector<std::pair<int, int>> all;
  for (int o = 0; o < n; ++o) {
    for (int d = 0; d < n; ++d) {
      if (o != d) all.emplace_back(o, d);
    }
  }
  std::shuffle(all.begin(), all.end(), rng);
  const int num_l = uniform(rng, 1, std::min<int>(max_l, static_cast<int>(all.size())));
  std::vector<Demand> dem;
  for (int l = 0; l < num_l; ++l) {
    dem.push_back({all[static_cast<std::size_t>(l)].first, all[static_cast<std::size_t>(l)].second});
  }
  return RingInstance::from_indices(n, dem);
}

// Arc ids of a route, found by stepping around the ring.
inline std::vector<int> walk_route(int n, int origin, int destination, bool positive) {
  std::vector<int> ids;
  int v = origin;
  while (v != destination) {
    if (positive) {
      ids.push_back(2 * v);
      v = (v + 1) % n;
    } else {
      const int prev = (v + n - 1) % n;
      ids.push_back(2 * prev + 1);
      v = prev;
    }
  }
  return ids;
}

// Number of routes (either sign, every demand) through each arc id.
inline std::vector<int> brute_coverage(const RingInstance& ring) {
  const int n = ring.num_vertices();
  std::vector<int> count(static_cast<std::size_t>(2 * n), 0);
  for (const Demand& d : ring.demands()) {
    for (bool pos : {true, false}) {
      for (int id : walk_route(n, d.origin, d.destination, pos)) ++count[static_cast<std::size_t>(id)];
    }
  }
  return count;
}

inline int brute_max_coverage(const RingInstance& ring) {
  const auto c = brute_coverage(ring);
  return *std::max_element(c.begin(), c.end());
}

// Arc id -> demands whose same-signed route contains it.
inline std::vector<DemandMask> brute_masks(const RingInstance& ring) {
  const int n = ring.num_vertices();
  std::vector<DemandMask> mask(static_cast<std::size_t>(2 * n), 0);
  for (int l = 0; l < ring.num_demands(); ++l) {
    const Demand& d = ring.demand(l);
    for (bool pos : {true, false}) {
      for (int id : walk_route(n, d.origin, d.destination, pos)) {
        mask[static_cast<std::size_t>(id)] |= demand_bit(l);
      }
    }
  }
  return mask;
}

// Forest test for the parallel-collapsed graph by edge counting.
inline bool brute_is_forest(int n, const std::vector<std::pair<int, int>>& edges) {
  std::set<std::pair<int, int>> simple;
  for (const auto& [u, v] : edges) simple.insert({std::min(u, v), std::max(u, v)});
  std::vector<int> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    return parent[static_cast<std::size_t>(x)] == x ? x
                                                     : parent[static_cast<std::size_t>(x)] =
                                                           find(parent[static_cast<std::size_t>(x)]);
  };
  for (const auto& [u, v] : simple) {
    const int a = find(u);
    const int b = find(v);
    if (a == b) return false;
    parent[static_cast<std::size_t>(a)] = b;
  }
  return true;
}

inline Rational random_rational(Rng& rng, int num_lo, int num_hi, int den_hi) {
  return make_rational(uniform(rng, num_lo, num_hi), uniform(rng, 1, den_hi));
}

// Random affine costs adjusted so that `profile` (weights on a grid) is an
// equilibrium: split segments get equal route costs, pure segments a used
// route no dearer than the other. Only intercepts move, so slopes stay
// random and positive.
inline void plant_equilibrium(GameInstance& game, const StrategyProfile& profile, Rng& rng) {
  for (ClassSpec& c : game.classes) {
    std::set<int> arcs;
    for (const Route& r : c.routes) arcs.insert(r.arcs.begin(), r.arcs.end());
    c.costs.clear();
    for (int a : arcs) {
      c.costs[a] = CostFunction::affine(random_rational(rng, 1, 6, 3), random_rational(rng, 0, 4, 2));
    }
  }
  const FlowVector f = flows(game, profile);
  for (int k = 0; k < game.num_classes(); ++k) {
    ClassSpec& c = game.classes[static_cast<std::size_t>(k)];
    const auto& w = profile.weights[static_cast<std::size_t>(k)];
    std::vector<Rational> cost;
    for (int r = 0; r < static_cast<int>(c.routes.size()); ++r) cost.push_back(route_cost(game, k, r, f));
    Rational target = 0;
    bool first = true;
    for (std::size_t r = 0; r < w.size(); ++r) {
      if (w[r] != 0 && (first || cost[r] > target)) {
        target = cost[r];
        first = false;
      }
    }
    // Raise every used route to the dearest used cost and every unused
    // route to at least that, through the intercept of an arc that only
    // this route uses when possible.
    for (std::size_t r = 0; r < w.size(); ++r) {
      Rational need = target - cost[r];
      if (w[r] == 0) need += random_rational(rng, 0, 2, 2);
      if (need <= 0) continue;
      int arc = -1;
      for (int a : c.routes[r].arcs) {
        bool shared = false;
        for (std::size_t s = 0; s < c.routes.size(); ++s) {
          if (s != r && std::count(c.routes[s].arcs.begin(), c.routes[s].arcs.end(), a)) shared = true;
        }
        if (!shared) {
          arc = a;
          break;
        }
      }
      if (arc < 0) continue;
      const CostFunction& old = c.costs.at(arc);
      c.costs[arc] = CostFunction::affine(old.slope(), old.intercept() + need);
    }
  }
}

// Random profile on the grid of resolution m.
inline StrategyProfile random_grid_profile(const GameInstance& game, int m, Rng& rng) {
  StrategyProfile p;
  for (const ClassSpec& c : game.classes) {
    std::vector<int> units(c.routes.size(), 0);
    for (int i = 0; i < m; ++i) ++units[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(units.size()) - 1))];
    std::vector<Rational> w;
    for (int u : units) w.push_back(c.measure * make_rational(u, m));
    p.weights.push_back(std::move(w));
  }
  return p;
}

// One segment per demand with a random measure and both ring routes.
inline GameInstance random_ring_game(const RingInstance& ring, Rng& rng) {
  GameInstance g = ring_game(ring);
  for (int l = 0; l < ring.num_demands(); ++l) {
    g.classes.push_back(ring_segment(ring, l, std::to_string(l + 1), random_rational(rng, 1, 4, 2)));
  }
  return g;
}

inline RingInstance triangle() {
  return RingInstance::build({"u", "w", "v"}, {{"u", "w"}, {"u", "v"}, {"w", "v"}});
}

inline RingInstance seven_vertex() {
  return RingInstance::build({"o1", "o2", "v", "d1", "d2", "w", "u"}, {{"o1", "d1"}, {"o2", "d2"}});
}

}  // namespace ringeq::testing

#endif  // RINGEQ_TESTS_TEST_SUPPORT_HPP_
