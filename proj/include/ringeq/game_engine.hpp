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

#ifndef RINGEQ_GAME_ENGINE_HPP_
#define RINGEQ_GAME_ENGINE_HPP_

// Nonatomic congestion games with finitely many user classes, exact
// rational costs and class-level strategy profiles.

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ringeq/error.hpp"
#include "ringeq/rational.hpp"
#include "ringeq/ring_model.hpp"

namespace ringeq {

// Piecewise-linear, strictly increasing, nonnegative. The first breakpoint
// sits at flow 0; past the last one the final slope continues.
class CostFunction {
 public:
  using Breakpoint = std::pair<Rational, Rational>;

  CostFunction() : CostFunction(affine(1, 0)) {}

  static CostFunction affine(const Rational& slope, const Rational& intercept) {
    return from_breakpoints({{0, intercept}, {1, intercept + slope}});
  }

  static CostFunction from_breakpoints(std::vector<Breakpoint> points) {
    if (points.size() < 2) {
      throw Error(ErrorCode::kInvalidCostFunction, "need at least two breakpoints");
    }
    if (points.front().first != 0) {
      throw Error(ErrorCode::kInvalidCostFunction, "first breakpoint must be at flow 0");
    }
    if (points.front().second < 0) {
      throw Error(ErrorCode::kInvalidCostFunction, "cost must be nonnegative");
    }
    for (std::size_t i = 1; i < points.size(); ++i) {
      if (points[i].first <= points[i - 1].first ||
          points[i].second <= points[i - 1].second) {
        throw Error(ErrorCode::kInvalidCostFunction,
                    "breakpoints must strictly increase in flow and value");
      }
    }
    CostFunction c(Tag{});
    c.points_ = std::move(points);
    return c;
  }

  Rational operator()(const Rational& x) const {
    std::size_t i = 1;
    while (i + 1 < points_.size() && x > points_[i].first) ++i;
    const auto& [x0, y0] = points_[i - 1];
    const auto& [x1, y1] = points_[i];
    Rational r = y0 + (y1 - y0) * (x - x0) / (x1 - x0);
    return r;
  }

  const std::vector<Breakpoint>& breakpoints() const { return points_; }

  bool is_affine() const {
    if (points_.size() == 2) return true;
    const Rational s = slope_of(0);
    for (std::size_t i = 1; i + 1 < points_.size(); ++i) {
      if (slope_of(i) != s) return false;
    }
    return true;
  }

  // Slope and intercept of the first piece.
  Rational slope() const { return slope_of(0); }
  Rational intercept() const { return points_.front().second; }

  CostFunction scaled(const Rational& factor) const {
    if (factor <= 0) {
      throw Error(ErrorCode::kInvalidCostFunction, "scale factor must be positive");
    }
    std::vector<Breakpoint> p = points_;
    for (auto& bp : p) bp.second *= factor;
    return from_breakpoints(std::move(p));
  }

  friend bool operator==(const CostFunction& a, const CostFunction& b) {
    return a.points_ == b.points_;
  }

 private:
  struct Tag {};
  explicit CostFunction(Tag) {}

  Rational slope_of(std::size_t i) const {
    return (points_[i + 1].second - points_[i].second) /
           (points_[i + 1].first - points_[i].first);
  }

  std::vector<Breakpoint> points_;
};

struct Route {
  std::string name;
  std::vector<int> arcs;

  friend bool operator==(const Route&, const Route&) = default;
};

// One population segment: users sharing a route menu and cost functions.
// Segments with the same label form one class of the model (identical
// costs, possibly different OD-pairs).
struct ClassSpec {
  std::string label;
  Rational measure;
  std::optional<LabelPair> od;
  std::vector<Route> routes;
  std::map<int, CostFunction> costs;

  friend bool operator==(const ClassSpec&, const ClassSpec&) = default;
};

struct GameInstance {
  std::vector<std::string> arcs;
  std::vector<ClassSpec> classes;

  int num_arcs() const { return static_cast<int>(arcs.size()); }
  int num_classes() const { return static_cast<int>(classes.size()); }

  int arc_index(std::string_view name) const {
    for (int a = 0; a < num_arcs(); ++a) {
      if (arcs[static_cast<std::size_t>(a)] == name) return a;
    }
    throw Error(ErrorCode::kInvalidGame, "unknown arc " + std::string(name));
  }

  void validate() const {
    for (std::size_t a = 0; a < arcs.size(); ++a) {
      for (std::size_t b = a + 1; b < arcs.size(); ++b) {
        if (arcs[a] == arcs[b]) {
          throw Error(ErrorCode::kInvalidGame, "duplicate arc name " + arcs[a]);
        }
      }
    }
    if (classes.empty()) throw Error(ErrorCode::kInvalidGame, "game has no classes");
    for (const ClassSpec& c : classes) {
      const std::string who = "class " + c.label;
      if (c.measure <= 0) throw Error(ErrorCode::kInvalidGame, who + ": measure must be positive");
      if (c.routes.empty()) throw Error(ErrorCode::kInvalidGame, who + ": empty route menu");
      for (std::size_t r = 0; r < c.routes.size(); ++r) {
        const Route& route = c.routes[r];
        if (route.arcs.empty()) throw Error(ErrorCode::kInvalidGame, who + ": empty route");
        for (std::size_t s = 0; s < r; ++s) {
          auto x = c.routes[s].arcs;
          auto y = route.arcs;
          std::sort(x.begin(), x.end());
          std::sort(y.begin(), y.end());
          if (x == y) throw Error(ErrorCode::kInvalidGame, who + ": repeated route");
        }
        for (int a : route.arcs) {
          if (a < 0 || a >= num_arcs()) {
            throw Error(ErrorCode::kInvalidGame, who + ": route arc out of range");
          }
          if (!c.costs.count(a)) {
            throw Error(ErrorCode::kInvalidGame,
                        who + ": no cost on arc " + arcs[static_cast<std::size_t>(a)]);
          }
        }
      }
      for (const auto& [a, f] : c.costs) {
        if (a < 0 || a >= num_arcs()) {
          throw Error(ErrorCode::kInvalidGame, who + ": cost on unknown arc");
        }
      }
    }
  }
};

// Per segment, the mass on each route of its menu.
struct StrategyProfile {
  std::vector<std::vector<Rational>> weights;

  friend bool operator==(const StrategyProfile&, const StrategyProfile&) = default;
};

using FlowVector = std::vector<Rational>;

inline void check_profile(const GameInstance& game, const StrategyProfile& p) {
  if (p.weights.size() != game.classes.size()) {
    throw Error(ErrorCode::kProfileShapeMismatch, "profile has wrong number of classes");
  }
  for (std::size_t k = 0; k < game.classes.size(); ++k) {
    const ClassSpec& c = game.classes[k];
    if (p.weights[k].size() != c.routes.size()) {
      throw Error(ErrorCode::kProfileShapeMismatch,
                  "class " + c.label + ": weight count differs from route count");
    }
    Rational total = 0;
    for (const Rational& w : p.weights[k]) {
      if (w < 0) throw Error(ErrorCode::kInvalidProfile, "negative route weight");
      total += w;
    }
    if (total != c.measure) {
      throw Error(ErrorCode::kInvalidProfile,
                  "class " + c.label + ": weights do not sum to the measure");
    }
  }
}

// Everyone in segment k on route r.
inline StrategyProfile pure_profile(const GameInstance& game,
                                    const std::vector<int>& choice) {
  StrategyProfile p;
  for (std::size_t k = 0; k < game.classes.size(); ++k) {
    const ClassSpec& c = game.classes[k];
    std::vector<Rational> w(c.routes.size(), Rational(0));
    w.at(static_cast<std::size_t>(choice.at(k))) = c.measure;
    p.weights.push_back(std::move(w));
  }
  return p;
}

inline std::vector<FlowVector> class_flows(const GameInstance& game,
                                           const StrategyProfile& p) {
  check_profile(game, p);
  std::vector<FlowVector> out;
  for (std::size_t k = 0; k < game.classes.size(); ++k) {
    FlowVector f(static_cast<std::size_t>(game.num_arcs()), Rational(0));
    const ClassSpec& c = game.classes[k];
    for (std::size_t r = 0; r < c.routes.size(); ++r) {
      if (p.weights[k][r] == 0) continue;
      for (int a : c.routes[r].arcs) f[static_cast<std::size_t>(a)] += p.weights[k][r];
    }
    out.push_back(std::move(f));
  }
  return out;
}

inline FlowVector flows(const GameInstance& game, const StrategyProfile& p) {
  FlowVector total(static_cast<std::size_t>(game.num_arcs()), Rational(0));
  for (const FlowVector& f : class_flows(game, p)) {
    for (std::size_t a = 0; a < total.size(); ++a) total[a] += f[a];
  }
  return total;
}

inline Rational route_cost(const GameInstance& game, int k, int r,
                           const FlowVector& f) {
  const ClassSpec& c = game.classes.at(static_cast<std::size_t>(k));
  Rational sum = 0;
  for (int a : c.routes.at(static_cast<std::size_t>(r)).arcs) {
    sum += c.costs.at(a)(f.at(static_cast<std::size_t>(a)));
  }
  return sum;
}

inline std::vector<std::vector<Rational>> all_route_costs(const GameInstance& game,
                                                          const FlowVector& f) {
  std::vector<std::vector<Rational>> out;
  for (int k = 0; k < game.num_classes(); ++k) {
    std::vector<Rational> row;
    for (int r = 0; r < static_cast<int>(game.classes[static_cast<std::size_t>(k)].routes.size()); ++r) {
      row.push_back(route_cost(game, k, r, f));
    }
    out.push_back(std::move(row));
  }
  return out;
}

struct Violation {
  int cls = 0;
  int used_route = 0;
  int cheaper_route = 0;
  Rational improvement;
};

enum class EquilibriumStatus { kEquilibrium, kViolation };

struct EquilibriumReport {
  EquilibriumStatus status = EquilibriumStatus::kEquilibrium;
  // Minimum, over segments using a single route with some alternative, of
  // (cheapest alternative - used cost). Unset when no segment qualifies or
  // the profile is not an equilibrium.
  std::optional<Rational> strict_gap;
  std::vector<Violation> violations;
  std::vector<std::vector<Rational>> route_costs;
  FlowVector flow;
  bool all_pure = true;
  // Every user has a unique best reply: all segments pure and strictly
  // cheaper than each alternative.
  bool every_user_strict = false;

  bool is_equilibrium() const { return status == EquilibriumStatus::kEquilibrium; }
  bool is_strict() const {
    return is_equilibrium() && (!strict_gap || *strict_gap > 0);
  }
};

inline EquilibriumReport verify_equilibrium(const GameInstance& game,
                                            const StrategyProfile& p) {
  EquilibriumReport rep;
  rep.flow = flows(game, p);
  rep.route_costs = all_route_costs(game, rep.flow);
  bool users_strict = true;
  for (int k = 0; k < game.num_classes(); ++k) {
    const auto& costs = rep.route_costs[static_cast<std::size_t>(k)];
    const auto& w = p.weights[static_cast<std::size_t>(k)];
    const int nr = static_cast<int>(costs.size());
    int used_count = 0;
    for (int r = 0; r < nr; ++r) {
      if (w[static_cast<std::size_t>(r)] == 0) continue;
      ++used_count;
      // Report the cheapest alternative (lowest index on ties).
      int best = -1;
      for (int s = 0; s < nr; ++s) {
        if (costs[static_cast<std::size_t>(s)] < costs[static_cast<std::size_t>(r)] &&
            (best < 0 || costs[static_cast<std::size_t>(s)] < costs[static_cast<std::size_t>(best)])) {
          best = s;
        }
      }
      if (best >= 0) {
        rep.violations.push_back({k, r, best,
                                  costs[static_cast<std::size_t>(r)] -
                                      costs[static_cast<std::size_t>(best)]});
      }
    }
    if (used_count != 1) {
      rep.all_pure = false;
      users_strict = false;
      continue;
    }
    if (nr == 1) continue;
    const int used = static_cast<int>(
        std::find_if(w.begin(), w.end(), [](const Rational& x) { return x != 0; }) -
        w.begin());
    std::optional<Rational> gap;
    for (int s = 0; s < nr; ++s) {
      if (s == used) continue;
      Rational d = costs[static_cast<std::size_t>(s)] - costs[static_cast<std::size_t>(used)];
      if (!gap || d < *gap) gap = d;
    }
    if (*gap <= 0) users_strict = false;
    if (!rep.strict_gap || *gap < *rep.strict_gap) rep.strict_gap = gap;
  }
  if (!rep.violations.empty()) {
    rep.status = EquilibriumStatus::kViolation;
    rep.strict_gap.reset();
    users_strict = false;
  }
  rep.every_user_strict = users_strict;
  return rep;
}

inline bool equilibria_equivalent(const GameInstance& game, const StrategyProfile& p1,
                                  const StrategyProfile& p2) {
  return class_flows(game, p1) == class_flows(game, p2);
}

struct GridPoint {
  StrategyProfile profile;
  FlowVector flow;
  EquilibriumReport report;
};

inline constexpr double kDefaultGridCap = 1e7;

// Number of ways to split m units over k routes: C(m + k - 1, k - 1).
inline double composition_count(int m, int k) {
  double c = 1;
  for (int i = 1; i < k; ++i) c = c * (m + i) / i;
  return c;
}

namespace detail {

inline void compositions(int m, int k, std::vector<int>& cur,
                         std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == k - 1) {
    int used = 0;
    for (int x : cur) used += x;
    cur.push_back(m - used);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  int used = 0;
  for (int x : cur) used += x;
  for (int x = m - used; x >= 0; --x) {
    cur.push_back(x);
    compositions(m, k, cur, out);
    cur.pop_back();
  }
}

}  // namespace detail

// Every profile whose weights are multiples of measure/m, in odometer order
// (last segment varies fastest); returns the equilibria among them.
inline std::vector<GridPoint> grid_equilibrium_search(const GameInstance& game, int m,
                                                      double cap = kDefaultGridCap) {
  if (m < 1) throw Error(ErrorCode::kInvalidGame, "resolution must be positive");
  game.validate();
  double total = 1;
  for (const ClassSpec& c : game.classes) {
    total *= composition_count(m, static_cast<int>(c.routes.size()));
  }
  if (total > cap) {
    throw Error(ErrorCode::kSearchSpaceTooLarge,
                "grid has " + std::to_string(static_cast<long long>(total)) +
                    " points, cap is " + std::to_string(static_cast<long long>(cap)));
  }
  const int nk = game.num_classes();
  std::vector<std::vector<std::vector<Rational>>> options(static_cast<std::size_t>(nk));
  for (int k = 0; k < nk; ++k) {
    const ClassSpec& c = game.classes[static_cast<std::size_t>(k)];
    std::vector<std::vector<int>> comps;
    std::vector<int> cur;
    detail::compositions(m, static_cast<int>(c.routes.size()), cur, comps);
    for (const auto& comp : comps) {
      std::vector<Rational> w;
      for (int x : comp) w.push_back(c.measure * make_rational(x, m));
      options[static_cast<std::size_t>(k)].push_back(std::move(w));
    }
  }
  std::vector<GridPoint> out;
  std::vector<std::size_t> idx(static_cast<std::size_t>(nk), 0);
  StrategyProfile p;
  p.weights.resize(static_cast<std::size_t>(nk));
  FlowVector f(static_cast<std::size_t>(game.num_arcs()));
  while (true) {
    for (int k = 0; k < nk; ++k) {
      p.weights[static_cast<std::size_t>(k)] =
          options[static_cast<std::size_t>(k)][idx[static_cast<std::size_t>(k)]];
    }
    // Quick rejection before building a full report.
    std::fill(f.begin(), f.end(), Rational(0));
    for (int k = 0; k < nk; ++k) {
      const ClassSpec& c = game.classes[static_cast<std::size_t>(k)];
      for (std::size_t r = 0; r < c.routes.size(); ++r) {
        const Rational& w = p.weights[static_cast<std::size_t>(k)][r];
        if (w == 0) continue;
        for (int a : c.routes[r].arcs) f[static_cast<std::size_t>(a)] += w;
      }
    }
    bool ok = true;
    for (int k = 0; k < nk && ok; ++k) {
      const ClassSpec& c = game.classes[static_cast<std::size_t>(k)];
      std::optional<Rational> lo;
      std::optional<Rational> used_hi;
      for (int r = 0; r < static_cast<int>(c.routes.size()); ++r) {
        Rational cost = route_cost(game, k, r, f);
        if (!lo || cost < *lo) lo = cost;
        if (p.weights[static_cast<std::size_t>(k)][static_cast<std::size_t>(r)] != 0 &&
            (!used_hi || cost > *used_hi)) {
          used_hi = cost;
        }
      }
      if (*used_hi > *lo) ok = false;
    }
    if (ok) {
      EquilibriumReport rep = verify_equilibrium(game, p);
      out.push_back({p, rep.flow, std::move(rep)});
    }
    int k = nk - 1;
    while (k >= 0) {
      if (++idx[static_cast<std::size_t>(k)] < options[static_cast<std::size_t>(k)].size()) break;
      idx[static_cast<std::size_t>(k)] = 0;
      --k;
    }
    if (k < 0) break;
  }
  return out;
}

inline std::vector<FlowVector> distinct_flow_clusters(const std::vector<GridPoint>& results) {
  std::vector<FlowVector> out;
  for (const GridPoint& g : results) {
    if (std::find(out.begin(), out.end(), g.flow) == out.end()) out.push_back(g.flow);
  }
  return out;
}

// Each segment shifts a fraction of the mass on its costlier used routes to
// its cheapest route (lowest index on ties). A segment's fraction halves
// whenever its cheapest route changes, which damps the two-route
// oscillation a fixed step produces. Stops at the first equilibrium.
inline StrategyProfile best_response_dynamics(const GameInstance& game,
                                              StrategyProfile p, int max_iters,
                                              const Rational& step) {
  check_profile(game, p);
  if (step <= 0 || step > 1) throw Error(ErrorCode::kInvalidProfile, "step must lie in (0, 1]");
  const int nk = game.num_classes();
  std::vector<Rational> steps(static_cast<std::size_t>(nk), step);
  std::vector<int> last_best(static_cast<std::size_t>(nk), -1);
  for (int it = 0; it < max_iters; ++it) {
    const FlowVector f = flows(game, p);
    const auto costs = all_route_costs(game, f);
    bool moved = false;
    for (int k = 0; k < nk; ++k) {
      const auto& c = costs[static_cast<std::size_t>(k)];
      auto& w = p.weights[static_cast<std::size_t>(k)];
      int best = 0;
      for (int r = 1; r < static_cast<int>(c.size()); ++r) {
        if (c[static_cast<std::size_t>(r)] < c[static_cast<std::size_t>(best)]) best = r;
      }
      bool needs_move = false;
      for (std::size_t r = 0; r < c.size(); ++r) {
        if (w[r] != 0 && c[r] > c[static_cast<std::size_t>(best)]) needs_move = true;
      }
      if (!needs_move) continue;
      auto& s = steps[static_cast<std::size_t>(k)];
      if (last_best[static_cast<std::size_t>(k)] >= 0 && last_best[static_cast<std::size_t>(k)] != best) {
        s /= 2;
      }
      last_best[static_cast<std::size_t>(k)] = best;
      for (std::size_t r = 0; r < c.size(); ++r) {
        if (w[r] == 0 || c[r] <= c[static_cast<std::size_t>(best)]) continue;
        Rational amount = w[r] * s;
        w[r] -= amount;
        w[static_cast<std::size_t>(best)] += amount;
      }
      moved = true;
    }
    if (!moved) break;
  }
  return p;
}

// Game skeleton on a ring: all 2n arcs, named and numbered by arc_id.
inline GameInstance ring_game(const RingInstance& ring) {
  GameInstance g;
  for (const Arc& a : ring.arcs()) g.arcs.push_back(ring.arc_name(a));
  return g;
}

inline Route ring_route(const RingInstance& ring, int l, Sign s) {
  Route r;
  r.name = s == Sign::kPositive ? "r+" : "r-";
  for (const Arc& a : route_arcs(ring, l, s)) r.arcs.push_back(arc_id(a));
  return r;
}

// Segment of users of demand l choosing between r+ and r-.
inline ClassSpec ring_segment(const RingInstance& ring, int l, std::string label,
                              Rational measure) {
  ClassSpec c;
  c.label = std::move(label);
  c.measure = std::move(measure);
  c.od = ring.demand_label(l);
  c.routes = {ring_route(ring, l, Sign::kPositive), ring_route(ring, l, Sign::kNegative)};
  return c;
}

}  // namespace ringeq

#endif  // RINGEQ_GAME_ENGINE_HPP_
