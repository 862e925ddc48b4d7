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

#ifndef RINGEQ_COUNTEREXAMPLES_HPP_
#define RINGEQ_COUNTEREXAMPLES_HPP_

// Explicit games with two distinct strict equilibria: the three-class ring
// construction, its many-OD and merged two-class variants, the K4 network,
// and lifting along an edge subdivision.

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ringeq/coverage_analysis.hpp"
#include "ringeq/error.hpp"
#include "ringeq/game_engine.hpp"
#include "ringeq/rational.hpp"
#include "ringeq/ring_model.hpp"

namespace ringeq {

// Construction labels: bit 0 is class 1, bit 1 class 2, bit 2 class 3.
inline std::string construction_mask_name(DemandMask m) {
  std::string s = "{";
  for (int c = 0; c < 3; ++c) {
    if (!(m >> c & 1u)) continue;
    if (s.size() > 1) s += ",";
    s += std::to_string(c + 1);
  }
  return s + "}";
}

struct Provenance {
  std::string construction;
  bool flipped = false;
  // relabel[k] = input demand index playing the role of construction label k+1.
  std::vector<int> relabel;
  std::optional<DemandMask> j1, j2, j3;
  std::optional<char> branch2, branch3;
  std::optional<char> merged_sign;
  std::optional<Rational> delta;
  std::vector<std::string> defaulted_cells;
  // sigma costs every class no more than sigma_hat: true exactly when both
  // class 2 and class 3 take their "-" branch.
  bool sigma_dominates = false;
  // A^+_{123}, A^-_{12}, A^-_{13} all nonempty in construction labels.
  bool dominance_cell_predicate = false;
  bool cost_dominance = false;
  std::vector<std::string> notes;
};

struct Counterexample {
  std::optional<RingInstance> ring;
  GameInstance game;
  StrategyProfile sigma;
  StrategyProfile sigma_hat;
  EquilibriumReport sigma_report;
  EquilibriumReport sigma_hat_report;
  Provenance provenance;
};

namespace detail {

// The ring seen through a relabelling and an optional orientation flip.
struct ConstructionView {
  const RingInstance* ring = nullptr;
  std::array<int, 3> demand{};
  bool flipped = false;
  std::map<std::pair<DemandMask, Sign>, std::vector<Arc>> cells;

  ConstructionView(const RingInstance& r, std::array<int, 3> d, bool flip)
      : ring(&r), demand(d), flipped(flip) {
    for (const Arc& a : r.arcs()) cells[key(a)].push_back(a);
  }

  Sign csign(Arc a) const { return flipped ? opposite(a.sign) : a.sign; }

  DemandMask cmask(Arc a) const {
    DemandMask m = 0;
    for (int c = 0; c < 3; ++c) {
      if (ring->covers(demand[static_cast<std::size_t>(c)], a)) m |= demand_bit(c);
    }
    return m;
  }

  std::pair<DemandMask, Sign> key(Arc a) const { return {cmask(a), csign(a)}; }

  bool nonempty(DemandMask m, Sign s) const { return cells.count({m, s}) > 0; }
  bool nonempty(DemandMask m) const {
    return nonempty(m, Sign::kPositive) || nonempty(m, Sign::kNegative);
  }
  std::size_t size(DemandMask m, Sign s) const {
    auto it = cells.find({m, s});
    return it == cells.end() ? 0 : it->second.size();
  }

  // Geometric index (0 = r+, 1 = r-) of the construction-positive route.
  int positive_route() const { return flipped ? 1 : 0; }
  int negative_route() const { return flipped ? 0 : 1; }

  // Smallest mask containing class bit c with a nonempty negative cell.
  DemandMask smallest_negative(int c) const {
    for (DemandMask m = 1; m < 8; ++m) {
      if ((m >> c & 1u) && nonempty(m, Sign::kNegative)) return m;
    }
    throw Error(ErrorCode::kRelabelFailed, "no negative cell for a class");
  }
};

constexpr DemandMask kAll = 7;

// Symmetries in search order: stored orientation first, relabellings in
// descending lexicographic order.
template <typename Accept>
std::optional<ConstructionView> find_symmetry(const RingInstance& ring,
                                              const std::array<int, 3>& triple,
                                              Accept accept) {
  for (bool flip : {false, true}) {
    std::array<int, 3> perm{2, 1, 0};
    do {
      std::array<int, 3> d{triple[static_cast<std::size_t>(perm[0])],
                           triple[static_cast<std::size_t>(perm[1])],
                           triple[static_cast<std::size_t>(perm[2])]};
      ConstructionView v(ring, d, flip);
      if (v.nonempty(kAll, Sign::kPositive) && accept(v)) return v;
    } while (std::prev_permutation(perm.begin(), perm.end()));
  }
  return std::nullopt;
}

struct AffineSpec {
  long slope = 1;
  long intercept = 0;
};

struct ClassPlan {
  char branch = '+';
  DemandMask j = 0;
};

// Undivided cost c_J^{k,s} of construction class c (0-based) on cell (m, s).
inline AffineSpec cell_cost(int c, const ClassPlan& plan, DemandMask m, Sign s) {
  if (c == 0) {
    if (m == kAll && s == Sign::kPositive) return {24, 7};
    if (m == plan.j && s == Sign::kNegative) return {1, 48};
    return {1, 0};
  }
  const DemandMask pair = 1u | demand_bit(c);
  if (plan.branch == '+') {
    if (m == pair && s == Sign::kPositive) return {25, 0};
    if (m == plan.j && s == Sign::kNegative) return {1, 31};
    return {1, 0};
  }
  if (m == kAll && s == Sign::kPositive) return {1, 26};
  if (m == pair && s == Sign::kNegative) return {22, 0};
  return {1, 0};
}

inline std::map<int, CostFunction> class_costs(const ConstructionView& v, int c,
                                               const ClassPlan& plan,
                                               std::vector<std::string>* defaulted,
                                               const std::string& label) {
  std::map<int, CostFunction> costs;
  std::set<std::pair<DemandMask, Sign>> flagged;
  for (const Arc& a : v.ring->arcs()) {
    const auto [m, s] = v.key(a);
    const Rational size(static_cast<long>(v.size(m, s)));
    AffineSpec spec{1, 0};
    if (m >> c & 1u) {
      spec = cell_cost(c, plan, m, s);
    } else if (defaulted && flagged.insert({m, s}).second) {
      defaulted->push_back("class " + label + ": " + construction_mask_name(m) +
                           sign_char(s) + " defaulted to x/|cell|");
    }
    costs[arc_id(a)] = CostFunction::affine(Rational(spec.slope) / size,
                                            Rational(spec.intercept) / size);
  }
  return costs;
}

inline ClassPlan class1_plan(const ConstructionView& v) {
  return {'+', v.smallest_negative(0)};
}

// Branch for class c in {1, 2}; "+" preferred when both apply.
inline ClassPlan pair_plan(const ConstructionView& v, int c, std::optional<char> force) {
  const DemandMask pair = 1u | demand_bit(c);
  char branch = force ? *force : (v.nonempty(pair, Sign::kPositive) ? '+' : '-');
  ClassPlan p{branch, 0};
  if (branch == '+') p.j = v.smallest_negative(c);
  return p;
}

inline void finish(Counterexample& ce, bool require_every_user_strict = true) {
  ce.game.validate();
  ce.sigma_report = verify_equilibrium(ce.game, ce.sigma);
  ce.sigma_hat_report = verify_equilibrium(ce.game, ce.sigma_hat);
  auto ok = [&](const EquilibriumReport& r) {
    return r.is_strict() && r.strict_gap && (!require_every_user_strict || r.every_user_strict);
  };
  if (!ok(ce.sigma_report) || !ok(ce.sigma_hat_report)) {
    throw Error(ErrorCode::kVerificationFailed,
                ce.provenance.construction + ": profiles are not strict equilibria");
  }
  if (ce.sigma_report.flow == ce.sigma_hat_report.flow) {
    throw Error(ErrorCode::kVerificationFailed,
                ce.provenance.construction + ": equilibrium flows coincide");
  }
}

inline Rational used_cost(const EquilibriumReport& r, const StrategyProfile& p, std::size_t k) {
  for (std::size_t i = 0; i < p.weights[k].size(); ++i) {
    if (p.weights[k][i] != 0) return r.route_costs[k][i];
  }
  return 0;
}

inline void fill_dominance(Counterexample& ce, const ConstructionView& v) {
  Provenance& pv = ce.provenance;
  pv.sigma_dominates = pv.branch2 == '-' && pv.branch3 == '-';
  pv.dominance_cell_predicate = v.nonempty(kAll, Sign::kPositive) &&
                                v.nonempty(3, Sign::kNegative) &&
                                v.nonempty(5, Sign::kNegative);
  pv.cost_dominance = true;
  for (std::size_t k = 0; k < ce.game.classes.size(); ++k) {
    if (used_cost(ce.sigma_report, ce.sigma, k) > used_cost(ce.sigma_hat_report, ce.sigma_hat, k)) {
      pv.cost_dominance = false;
    }
  }
}

// Core of the three-class recipe on `ring` for demands `triple`. Extra
// demands become "4" segments of measure delta that always go positive.
inline Counterexample three_class_on(const RingInstance& ring, const std::array<int, 3>& triple,
                                     const std::vector<int>& extras, const Rational& delta,
                                     const std::string& construction) {
  auto view = find_symmetry(ring, triple, [](const ConstructionView& v) {
    return v.nonempty(3) && v.nonempty(5);
  });
  if (!view) {
    throw Error(ErrorCode::kRelabelFailed, "no relabelling satisfies the construction's assumptions");
  }
  const ConstructionView& v = *view;
  Counterexample ce;
  ce.ring = ring;
  ce.game = ring_game(ring);
  Provenance& pv = ce.provenance;
  pv.construction = construction;
  pv.flipped = v.flipped;
  pv.relabel.assign(v.demand.begin(), v.demand.end());
  const std::array<ClassPlan, 3> plans{class1_plan(v), pair_plan(v, 1, std::nullopt),
                                       pair_plan(v, 2, std::nullopt)};
  pv.j1 = plans[0].j;
  pv.branch2 = plans[1].branch;
  pv.branch3 = plans[2].branch;
  if (plans[1].branch == '+') pv.j2 = plans[1].j;
  if (plans[2].branch == '+') pv.j3 = plans[2].j;
  const std::array<Rational, 3> measure{Rational(3, 2), Rational(1), Rational(1)};
  for (int c = 0; c < 3; ++c) {
    const std::string label = std::to_string(c + 1);
    ClassSpec spec = ring_segment(ring, v.demand[static_cast<std::size_t>(c)], label,
                                  measure[static_cast<std::size_t>(c)]);
    spec.costs = class_costs(v, c, plans[static_cast<std::size_t>(c)], &pv.defaulted_cells, label);
    ce.game.classes.push_back(std::move(spec));
  }
  std::vector<int> sigma{v.positive_route(), v.negative_route(), v.negative_route()};
  std::vector<int> sigma_hat{v.negative_route(), v.positive_route(), v.positive_route()};
  for (int l : extras) {
    ClassSpec spec = ring_segment(ring, l, "4", delta);
    for (const Arc& a : ring.arcs()) {
      spec.costs[arc_id(a)] = v.csign(a) == Sign::kPositive
                                  ? CostFunction::affine(Rational(1, 1000), 0)
                                  : CostFunction::affine(1, 1000);
    }
    ce.game.classes.push_back(std::move(spec));
    sigma.push_back(v.positive_route());
    sigma_hat.push_back(v.positive_route());
  }
  if (!extras.empty()) pv.delta = delta;
  ce.sigma = pure_profile(ce.game, sigma);
  ce.sigma_hat = pure_profile(ce.game, sigma_hat);
  finish(ce);
  fill_dominance(ce, v);
  return ce;
}

inline std::array<int, 3> covering_triple(const RingInstance& ring) {
  const CoveredArc w = max_covered_arc(ring);
  if (w.demands.size() < 3) {
    throw Error(ErrorCode::kNotApplicable, "every arc lies in at most two routes");
  }
  return {w.demands[0], w.demands[1], w.demands[2]};
}

}  // namespace detail

// Three classes of measures 3/2, 1, 1 on three demands sharing an arc. With
// more than three demands only the covering triple receives users.
inline Counterexample build_three_class(const RingInstance& ring) {
  if (ring.num_demands() < 3) {
    throw Error(ErrorCode::kNotApplicable, "fewer than three demands");
  }
  const auto triple = detail::covering_triple(ring);
  Counterexample ce = detail::three_class_on(ring, triple, {}, 0, "three_class");
  if (ring.num_demands() > 3) {
    ce.provenance.notes.push_back("demands outside the covering triple have no users");
  }
  return ce;
}

// Three-class construction on a covering triple plus a small class "4" for
// every other demand. delta halves until both profiles verify.
inline Counterexample extend_many_od(const RingInstance& ring,
                                     Rational delta = Rational(1, 100)) {
  if (ring.num_demands() <= 3) {
    throw Error(ErrorCode::kNotApplicable, "needs more than three demands");
  }
  const auto triple = detail::covering_triple(ring);
  std::vector<int> extras;
  for (int l = 0; l < ring.num_demands(); ++l) {
    if (std::find(triple.begin(), triple.end(), l) == triple.end()) extras.push_back(l);
  }
  for (int attempt = 0; attempt < 32; ++attempt, delta /= 2) {
    try {
      Counterexample ce = detail::three_class_on(ring, triple, extras, delta, "many_od");
      if (attempt > 0) {
        ce.provenance.notes.push_back("delta halved " + std::to_string(attempt) +
                                      " time(s) before both profiles verified");
      }
      return ce;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kVerificationFailed) throw;
    }
  }
  throw Error(ErrorCode::kVerificationFailed, "no delta made the extension strict");
}

// Classes 2 and 3 merged into one class "2" (two segments sharing cost
// functions); needs A_{12} and A_{13} nonempty with a common sign.
inline Counterexample merge_two_class(const RingInstance& ring) {
  if (ring.num_demands() < 3) {
    throw Error(ErrorCode::kNotApplicable, "fewer than three demands");
  }
  const auto triple = detail::covering_triple(ring);
  std::optional<detail::ConstructionView> view;
  char eps = '+';
  for (Sign s : kSigns) {
    view = detail::find_symmetry(ring, triple, [s](const detail::ConstructionView& v) {
      return v.nonempty(3, s) && v.nonempty(5, s);
    });
    if (view) {
      eps = sign_char(s);
      break;
    }
  }
  if (!view) {
    throw Error(ErrorCode::kNotApplicable, "A_{12} and A_{13} share no sign");
  }
  const detail::ConstructionView& v = *view;
  detail::ClassPlan p2 = detail::pair_plan(v, 1, eps);
  detail::ClassPlan p3 = detail::pair_plan(v, 2, eps);
  if (eps == '+') {
    // Cells holding both 2 and 3 must get one cost: share J when needed.
    if (p2.j & demand_bit(2)) p3.j = p2.j;
    else if (p3.j & demand_bit(1)) p2.j = p3.j;
  }
  Counterexample ce;
  ce.ring = ring;
  ce.game = ring_game(ring);
  Provenance& pv = ce.provenance;
  pv.construction = "two_class";
  pv.flipped = v.flipped;
  pv.relabel.assign(v.demand.begin(), v.demand.end());
  pv.merged_sign = eps;
  pv.j1 = detail::class1_plan(v).j;
  pv.branch2 = eps;
  pv.branch3 = eps;
  if (eps == '+') {
    pv.j2 = p2.j;
    pv.j3 = p3.j;
  }
  ClassSpec c1 = ring_segment(ring, v.demand[0], "1", Rational(3, 2));
  c1.costs = detail::class_costs(v, 0, detail::class1_plan(v), &pv.defaulted_cells, "1");
  const auto costs2 = detail::class_costs(v, 1, p2, nullptr, "2");
  const auto costs3 = detail::class_costs(v, 2, p3, nullptr, "2");
  std::map<int, CostFunction> merged;
  std::set<std::pair<DemandMask, Sign>> flagged;
  for (const Arc& a : ring.arcs()) {
    const auto [m, s] = v.key(a);
    const int id = arc_id(a);
    if (m & demand_bit(1)) {
      merged[id] = costs2.at(id);
    } else if (m & demand_bit(2)) {
      merged[id] = costs3.at(id);
    } else {
      merged[id] = costs2.at(id);
      if (flagged.insert({m, s}).second) {
        pv.defaulted_cells.push_back("class 2: " + construction_mask_name(m) + sign_char(s) +
                                     " defaulted to x/|cell|");
      }
    }
  }
  ce.game.classes.push_back(std::move(c1));
  for (int c = 1; c < 3; ++c) {
    ClassSpec seg = ring_segment(ring, v.demand[static_cast<std::size_t>(c)], "2", Rational(1));
    seg.costs = merged;
    ce.game.classes.push_back(std::move(seg));
  }
  ce.sigma = pure_profile(ce.game, {v.positive_route(), v.negative_route(), v.negative_route()});
  ce.sigma_hat = pure_profile(ce.game, {v.negative_route(), v.positive_route(), v.positive_route()});
  detail::finish(ce);
  detail::fill_dominance(ce, v);
  return ce;
}

// "Prohibitively high" cost.
inline CostFunction prohibitive_cost() { return CostFunction::affine(1, 1'000'000); }

// Two-terminal K4 with two classes: class 1 chooses ouvd or od, class 2
// chooses oud, ovd or od.
inline Counterexample k4_fixture() {
  Counterexample ce;
  GameInstance& g = ce.game;
  g.arcs = {"o->u", "o->v", "u->v", "v->u", "u->d", "v->d", "o->d"};
  enum { OU, OV, UV, VU, UD, VD, OD };
  auto aff = [](long a, long b) { return CostFunction::affine(a, b); };
  const CostFunction inf = prohibitive_cost();
  ClassSpec c1;
  c1.label = "1";
  c1.measure = 3;
  c1.od = LabelPair{"o", "d"};
  c1.routes = {{"ouvd", {OU, UV, VD}}, {"od", {OD}}};
  c1.costs = {{OU, aff(1, 0)}, {OV, inf},       {UV, aff(1, 18)}, {VU, inf},
              {UD, inf},       {VD, aff(1, 0)}, {OD, aff(7, 0)}};
  ClassSpec c2;
  c2.label = "2";
  c2.measure = 4;
  c2.od = LabelPair{"o", "d"};
  c2.routes = {{"oud", {OU, UD}}, {"ovd", {OV, VD}}, {"od", {OD}}};
  c2.costs = {{OU, aff(5, 0)}, {OV, aff(1, 0)}, {UV, inf},        {VU, inf},
              {UD, aff(1, 0)}, {VD, aff(5, 0)}, {OD, aff(1, 10)}};
  g.classes = {c1, c2};
  ce.sigma = pure_profile(g, {0, 2});
  ce.sigma_hat.weights = {{0, 3}, {2, 2, 0}};
  ce.provenance.construction = "k4";
  ce.provenance.notes.push_back(
      "class 2 splits evenly over two equal-cost routes in sigma_hat; strictness "
      "is measured on the classes using a single route");
  detail::finish(ce, /*require_every_user_strict=*/false);
  return ce;
}

// Splits `edge` of the counterexample's ring with a fresh vertex. The new
// half-arcs cost gamma * x, small enough to keep every reply strict.
inline Counterexample subdivide_lift(const Counterexample& ce, int edge) {
  if (!ce.ring) throw Error(ErrorCode::kNotApplicable, "lifting needs a ring counterexample");
  const RingInstance& ring = *ce.ring;
  if (edge < 0 || edge >= ring.num_edges()) {
    throw Error(ErrorCode::kInvalidInstance, "edge index out of range");
  }
  const auto strict = [](const EquilibriumReport& r) {
    return r.every_user_strict && r.strict_gap && *r.strict_gap > 0;
  };
  if (!strict(ce.sigma_report) || !strict(ce.sigma_hat_report)) {
    throw Error(ErrorCode::kNotStrict, "input counterexample is not strict");
  }
  const Rational gap = std::min(*ce.sigma_report.strict_gap, *ce.sigma_hat_report.strict_gap);
  Rational mass = 0;
  for (const ClassSpec& c : ce.game.classes) mass += c.measure;
  const Rational gamma = gap / (2 * (mass + 1));

  std::string label;
  for (int i = 1;; ++i) {
    label = "sub" + std::to_string(i);
    const auto& vs = ring.vertices();
    if (std::find(vs.begin(), vs.end(), label) == vs.end()) break;
  }
  const RingInstance lifted_ring = ring.subdivided(edge, label);
  auto remap = [edge](int id) {
    Arc a = arc_from_id(id);
    if (a.edge > edge) ++a.edge;
    return arc_id(a);
  };
  Counterexample out;
  out.ring = lifted_ring;
  out.game = ring_game(lifted_ring);
  for (const ClassSpec& c : ce.game.classes) {
    ClassSpec n = c;
    if (!c.od) throw Error(ErrorCode::kInvalidGame, "ring segment without OD-pair");
    const int l = [&] {
      for (int i = 0; i < lifted_ring.num_demands(); ++i) {
        if (lifted_ring.demand_label(i) == *c.od) return i;
      }
      throw Error(ErrorCode::kInvalidGame, "segment OD-pair not on the ring");
    }();
    n.routes = {ring_route(lifted_ring, l, Sign::kPositive),
                ring_route(lifted_ring, l, Sign::kNegative)};
    n.costs.clear();
    for (const auto& [id, f] : c.costs) {
      n.costs[remap(id)] = f;
      if (arc_from_id(id).edge == edge) {
        n.costs[arc_id(Arc{edge + 1, arc_from_id(id).sign})] = CostFunction::affine(gamma, 0);
      }
    }
    out.game.classes.push_back(std::move(n));
  }
  out.sigma = ce.sigma;
  out.sigma_hat = ce.sigma_hat;
  out.provenance = ce.provenance;
  out.provenance.construction += "+lift";
  out.provenance.notes.push_back("subdivided edge " + std::to_string(edge) + " with vertex " +
                                 label + ", new arcs cost " + to_string(gamma) + "*x");
  detail::finish(out);
  return out;
}

}  // namespace ringeq

#endif  // RINGEQ_COUNTEREXAMPLES_HPP_
