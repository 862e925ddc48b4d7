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

#ifndef RINGEQ_CLI_IO_HPP_
#define RINGEQ_CLI_IO_HPP_

// JSON file formats and report rendering. Rationals travel as strings.

#include <nlohmann/json.hpp>

#include <cstdlib>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "ringeq/catalog.hpp"
#include "ringeq/counterexamples.hpp"
#include "ringeq/coverage_analysis.hpp"
#include "ringeq/error.hpp"
#include "ringeq/game_engine.hpp"
#include "ringeq/mixed_graph.hpp"
#include "ringeq/rational.hpp"
#include "ringeq/ring_model.hpp"

namespace ringeq {

using Json = nlohmann::ordered_json;

namespace io_detail {

[[noreturn]] inline void fail(const std::string& path, const std::string& what) {
  throw Error(ErrorCode::kParseError, "at " + path + ": " + what);
}

inline const Json& field(const Json& obj, const char* key, const std::string& path) {
  if (!obj.is_object()) fail(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) fail(path, std::string("missing field \"") + key + "\"");
  return *it;
}

inline std::string str(const Json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "expected a string");
  return j.get<std::string>();
}

inline Rational rational(const Json& j, const std::string& path) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (!j.is_string()) fail(path, "expected a rational string such as \"3/2\"");
  auto q = parse_rational(j.get<std::string>());
  if (!q) fail(path, "malformed rational \"" + j.get<std::string>() + "\"");
  return *q;
}

inline const Json& array(const Json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array");
  return j;
}

inline std::vector<std::string> strings(const Json& j, const std::string& path) {
  std::vector<std::string> out;
  const Json& a = array(j, path);
  for (std::size_t i = 0; i < a.size(); ++i) {
    out.push_back(str(a[i], path + "[" + std::to_string(i) + "]"));
  }
  return out;
}

inline std::vector<LabelPair> pairs(const Json& j, const std::string& path) {
  std::vector<LabelPair> out;
  const Json& a = array(j, path);
  for (std::size_t i = 0; i < a.size(); ++i) {
    const std::string p = path + "[" + std::to_string(i) + "]";
    if (!a[i].is_array() || a[i].size() != 2) fail(p, "expected a pair [from, to]");
    out.emplace_back(str(a[i][0], p + "[0]"), str(a[i][1], p + "[1]"));
  }
  return out;
}

inline void expect_type(const Json& j, std::string_view type) {
  const std::string t = str(field(j, "type", "$"), "$.type");
  if (t != type) fail("$.type", "expected \"" + std::string(type) + "\", got \"" + t + "\"");
}

inline Json pair_json(const std::string& a, const std::string& b) { return Json::array({a, b}); }

}  // namespace io_detail

// Parses JSON text; syntax errors report the line number.
inline Json parse_json_text(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    const std::size_t upto = std::min(e.byte, text.size());
    const auto line = 1 + std::count(text.begin(), text.begin() + static_cast<long>(upto), '\n');
    throw Error(ErrorCode::kParseError,
                "line " + std::to_string(line) + ": " + std::string(e.what()));
  }
}

// ---- ring ----

inline RingInstance ring_from_json(const Json& j) {
  io_detail::expect_type(j, "ring");
  return RingInstance::build(io_detail::strings(io_detail::field(j, "vertices", "$"), "$.vertices"),
                             io_detail::pairs(io_detail::field(j, "demands", "$"), "$.demands"));
}

inline Json to_json(const RingInstance& r) {
  Json j;
  j["type"] = "ring";
  j["vertices"] = r.vertices();
  Json d = Json::array();
  for (const auto& [o, t] : r.demand_labels()) d.push_back(io_detail::pair_json(o, t));
  j["demands"] = d;
  return j;
}

// ---- graph (supply only) and mixed graph (supply + demands) ----

inline GeneralGraph graph_from_json(const Json& j) {
  io_detail::expect_type(j, "graph");
  return GeneralGraph::build(io_detail::strings(io_detail::field(j, "vertices", "$"), "$.vertices"),
                             io_detail::pairs(io_detail::field(j, "edges", "$"), "$.edges"));
}

inline Json to_json(const GeneralGraph& g) {
  Json j;
  j["type"] = "graph";
  j["vertices"] = g.vertices();
  Json e = Json::array();
  for (const auto& [u, v] : g.edges()) e.push_back(io_detail::pair_json(g.label(u), g.label(v)));
  j["edges"] = e;
  return j;
}

inline MixedGraph mixed_graph_from_json(const Json& j) {
  io_detail::expect_type(j, "graph");
  const GeneralGraph g = graph_from_json(j);
  MixedGraph m;
  m.labels = g.vertices();
  m.edges = g.edges();
  for (const auto& [o, d] : io_detail::pairs(io_detail::field(j, "demands", "$"), "$.demands")) {
    m.demands.emplace_back(g.vertex_index(o), g.vertex_index(d));
  }
  m.validate();
  return m;
}

inline Json to_json(const MixedGraph& m) {
  Json j;
  j["type"] = "graph";
  j["vertices"] = m.labels;
  Json e = Json::array();
  for (const auto& [u, v] : m.edges) {
    e.push_back(io_detail::pair_json(m.labels[static_cast<std::size_t>(u)],
                                     m.labels[static_cast<std::size_t>(v)]));
  }
  j["edges"] = e;
  Json d = Json::array();
  for (const auto& [o, t] : m.demands) {
    d.push_back(io_detail::pair_json(m.labels[static_cast<std::size_t>(o)],
                                     m.labels[static_cast<std::size_t>(t)]));
  }
  j["demands"] = d;
  return j;
}

// A bare array of pairs or {"type":"demands","demands":[...]}.
inline std::vector<LabelPair> demands_from_json(const Json& j) {
  if (j.is_array()) return io_detail::pairs(j, "$");
  io_detail::expect_type(j, "demands");
  return io_detail::pairs(io_detail::field(j, "demands", "$"), "$.demands");
}

inline Json demands_to_json(const std::vector<LabelPair>& d) {
  Json j;
  j["type"] = "demands";
  Json a = Json::array();
  for (const auto& [o, t] : d) a.push_back(io_detail::pair_json(o, t));
  j["demands"] = a;
  return j;
}

// ---- game ----

inline CostFunction cost_from_json(const Json& j, const std::string& path) {
  if (!j.is_object()) io_detail::fail(path, "expected {\"affine\":[a,b]} or {\"breakpoints\":[...]}");
  try {
    if (j.contains("affine")) {
      const Json& a = j["affine"];
      if (!a.is_array() || a.size() != 2) io_detail::fail(path + ".affine", "expected [slope, intercept]");
      return CostFunction::affine(io_detail::rational(a[0], path + ".affine[0]"),
                                  io_detail::rational(a[1], path + ".affine[1]"));
    }
    if (j.contains("breakpoints")) {
      const Json& b = io_detail::array(j["breakpoints"], path + ".breakpoints");
      std::vector<CostFunction::Breakpoint> pts;
      for (std::size_t i = 0; i < b.size(); ++i) {
        const std::string p = path + ".breakpoints[" + std::to_string(i) + "]";
        if (!b[i].is_array() || b[i].size() != 2) io_detail::fail(p, "expected [flow, value]");
        pts.emplace_back(io_detail::rational(b[i][0], p + "[0]"),
                         io_detail::rational(b[i][1], p + "[1]"));
      }
      return CostFunction::from_breakpoints(std::move(pts));
    }
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kInvalidCostFunction) {
      throw Error(e.code(), path + ": " + e.what());
    }
    throw;
  }
  io_detail::fail(path, "expected {\"affine\":[a,b]} or {\"breakpoints\":[...]}");
}

inline Json to_json(const CostFunction& c) {
  const auto& b = c.breakpoints();
  Json j;
  if (b.size() == 2 && b[0].first == 0 && b[1].first == 1) {
    j["affine"] = Json::array({to_string(b[1].second - b[0].second), to_string(b[0].second)});
    return j;
  }
  Json pts = Json::array();
  for (const auto& [x, y] : b) pts.push_back(Json::array({to_string(x), to_string(y)}));
  j["breakpoints"] = pts;
  return j;
}

inline GameInstance game_from_json(const Json& j) {
  io_detail::expect_type(j, "game");
  GameInstance g;
  g.arcs = io_detail::strings(io_detail::field(j, "arcs", "$"), "$.arcs");
  const Json& classes = io_detail::array(io_detail::field(j, "classes", "$"), "$.classes");
  auto arc_of = [&g](const std::string& name, const std::string& path) {
    for (int a = 0; a < g.num_arcs(); ++a) {
      if (g.arcs[static_cast<std::size_t>(a)] == name) return a;
    }
    io_detail::fail(path, "unknown arc \"" + name + "\"");
  };
  for (std::size_t k = 0; k < classes.size(); ++k) {
    const std::string p = "$.classes[" + std::to_string(k) + "]";
    const Json& cj = classes[k];
    ClassSpec c;
    c.label = cj.contains("label") ? io_detail::str(cj["label"], p + ".label") : std::to_string(k + 1);
    c.measure = io_detail::rational(io_detail::field(cj, "measure", p), p + ".measure");
    if (cj.contains("od")) {
      const Json& od = cj["od"];
      if (!od.is_array() || od.size() != 2) io_detail::fail(p + ".od", "expected [origin, destination]");
      c.od = LabelPair{io_detail::str(od[0], p + ".od[0]"), io_detail::str(od[1], p + ".od[1]")};
    }
    const Json& routes = io_detail::array(io_detail::field(cj, "routes", p), p + ".routes");
    for (std::size_t r = 0; r < routes.size(); ++r) {
      const std::string rp = p + ".routes[" + std::to_string(r) + "]";
      Route route;
      route.name = routes[r].contains("name") ? io_detail::str(routes[r]["name"], rp + ".name")
                                              : "route" + std::to_string(r);
      const auto names = io_detail::strings(io_detail::field(routes[r], "arcs", rp), rp + ".arcs");
      for (std::size_t i = 0; i < names.size(); ++i) {
        route.arcs.push_back(arc_of(names[i], rp + ".arcs[" + std::to_string(i) + "]"));
      }
      c.routes.push_back(std::move(route));
    }
    const Json& costs = io_detail::field(cj, "costs", p);
    if (!costs.is_object()) io_detail::fail(p + ".costs", "expected an object keyed by arc name");
    for (const auto& [name, cf] : costs.items()) {
      const std::string cp = p + ".costs." + name;
      c.costs[arc_of(name, cp)] = cost_from_json(cf, cp);
    }
    g.classes.push_back(std::move(c));
  }
  g.validate();
  return g;
}

inline Json to_json(const GameInstance& g) {
  Json j;
  j["type"] = "game";
  j["arcs"] = g.arcs;
  Json classes = Json::array();
  for (const ClassSpec& c : g.classes) {
    Json cj;
    cj["label"] = c.label;
    cj["measure"] = to_string(c.measure);
    if (c.od) cj["od"] = io_detail::pair_json(c.od->first, c.od->second);
    Json routes = Json::array();
    for (const Route& r : c.routes) {
      Json rj;
      rj["name"] = r.name;
      Json arcs = Json::array();
      for (int a : r.arcs) arcs.push_back(g.arcs[static_cast<std::size_t>(a)]);
      rj["arcs"] = arcs;
      routes.push_back(rj);
    }
    cj["routes"] = routes;
    Json costs = Json::object();
    for (const auto& [a, f] : c.costs) costs[g.arcs[static_cast<std::size_t>(a)]] = to_json(f);
    cj["costs"] = costs;
    classes.push_back(cj);
  }
  j["classes"] = classes;
  return j;
}

// ---- profile ----

inline StrategyProfile profile_from_json(const Json& j) {
  io_detail::expect_type(j, "profile");
  StrategyProfile p;
  const Json& w = io_detail::array(io_detail::field(j, "weights", "$"), "$.weights");
  for (std::size_t k = 0; k < w.size(); ++k) {
    const std::string path = "$.weights[" + std::to_string(k) + "]";
    const Json& row = io_detail::array(w[k], path);
    std::vector<Rational> r;
    for (std::size_t i = 0; i < row.size(); ++i) {
      r.push_back(io_detail::rational(row[i], path + "[" + std::to_string(i) + "]"));
    }
    p.weights.push_back(std::move(r));
  }
  return p;
}

inline Json to_json(const StrategyProfile& p) {
  Json j;
  j["type"] = "profile";
  Json w = Json::array();
  for (const auto& row : p.weights) {
    Json r = Json::array();
    for (const Rational& x : row) r.push_back(to_string(x));
    w.push_back(r);
  }
  j["weights"] = w;
  return j;
}

using ParsedInstance = std::variant<RingInstance, GeneralGraph, MixedGraph, GameInstance,
                                    StrategyProfile, std::vector<LabelPair>>;

// Dispatches on "type"; a graph with "demands" parses as a MixedGraph.
inline ParsedInstance parse_instance(std::string_view text) {
  const Json j = parse_json_text(text);
  if (j.is_array()) return demands_from_json(j);
  const std::string type = io_detail::str(io_detail::field(j, "type", "$"), "$.type");
  if (type == "ring") return ring_from_json(j);
  if (type == "graph") {
    if (j.contains("demands")) return mixed_graph_from_json(j);
    return graph_from_json(j);
  }
  if (type == "game") return game_from_json(j);
  if (type == "profile") return profile_from_json(j);
  if (type == "demands") return demands_from_json(j);
  io_detail::fail("$.type", "unknown type \"" + type + "\"");
}

inline std::string render_instance(const ParsedInstance& x) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::vector<LabelPair>>) {
          return demands_to_json(v).dump(2);
        } else {
          return to_json(v).dump(2);
        }
      },
      x);
}

// ---- reports ----

struct Report {
  std::string text;
  Json machine;
};

inline std::string render_report(const Report& r) {
  return r.text + "--- machine ---\n" + r.machine.dump(2) + "\n";
}

inline std::string demand_name(const LabelPair& d) { return d.first + "->" + d.second; }

inline Report coverage_report(const RingInstance& ring, const CoverageReport& cov,
                              std::optional<RoundTripResult> scan = std::nullopt,
                              int start = 0, Sign direction = Sign::kPositive) {
  std::ostringstream t;
  Json m;
  m["verdict"] = verdict_name(cov.verdict);
  t << "ring: " << ring.num_vertices() << " vertices, " << ring.num_demands() << " demands\n";
  t << "verdict: " << verdict_name(cov.verdict) << "\n";
  if (cov.max_coverage) {
    t << "max coverage = " << *cov.max_coverage << "\n";
    m["max_coverage"] = *cov.max_coverage;
  }
  if (cov.fast_path) t << "decided by the number of demands\n";
  m["fast_path"] = cov.fast_path;
  if (scan) {
    t << "round trip from " << ring.label(start) << " (" << sign_char(direction)
      << "): min = " << scan->min_dir << ", max = " << scan->max_dir << "\n";
    m["round_trip"] = {{"start", ring.label(start)},
                       {"direction", std::string(1, sign_char(direction))},
                       {"min", scan->min_dir},
                       {"max", scan->max_dir},
                       {"max_coverage", scan->max_coverage}};
  }
  if (cov.witness_arc) {
    t << "witness arc: " << ring.arc_name(*cov.witness_arc) << " lies on the routes of";
    Json ds = Json::array();
    for (int l : cov.witness_demands) {
      t << " " << demand_name(ring.demand_label(l));
      ds.push_back(demand_name(ring.demand_label(l)));
    }
    t << "\n";
    m["witness_arc"] = ring.arc_name(*cov.witness_arc);
    m["witness_demands"] = ds;
  }
  return {t.str(), m};
}

inline Report equilibrium_report(const GameInstance& game, const StrategyProfile& p,
                                 const EquilibriumReport& rep, const std::string& name = "profile") {
  std::ostringstream t;
  Json m;
  t << name << ": " << (rep.is_equilibrium() ? "equilibrium" : "not an equilibrium");
  if (rep.is_equilibrium()) t << (rep.is_strict() ? " (strict)" : " (not strict)");
  t << "\n";
  if (rep.strict_gap) t << "  strict gap = " << to_display(*rep.strict_gap) << "\n";
  m["status"] = rep.is_equilibrium() ? "Equilibrium" : "Violation";
  m["strict"] = rep.is_strict();
  m["every_user_strict"] = rep.every_user_strict;
  m["strict_gap"] = rep.strict_gap ? Json(to_string(*rep.strict_gap)) : Json(nullptr);
  Json classes = Json::array();
  for (std::size_t k = 0; k < game.classes.size(); ++k) {
    const ClassSpec& c = game.classes[k];
    t << "  class " << c.label << ": ";
    Json costs = Json::object();
    Json weights = Json::object();
    std::string used;
    for (std::size_t r = 0; r < c.routes.size(); ++r) {
      if (r) t << ", ";
      t << c.routes[r].name << " = " << to_display(rep.route_costs[k][r]);
      costs[c.routes[r].name] = to_string(rep.route_costs[k][r]);
      weights[c.routes[r].name] = to_string(p.weights[k][r]);
      if (p.weights[k][r] != 0) {
        used += (used.empty() ? "" : " ") + c.routes[r].name + ":" + to_display(p.weights[k][r]);
      }
    }
    t << "   [";
    if (c.od) t << "od " << demand_name(*c.od) << ", ";
    t << "uses " << used << "]\n";
    Json cj;
    cj["label"] = c.label;
    if (c.od) cj["od"] = demand_name(*c.od);
    cj["route_costs"] = costs;
    cj["weights"] = weights;
    classes.push_back(cj);
  }
  m["classes"] = classes;
  Json flow = Json::object();
  t << "  flows:";
  for (std::size_t a = 0; a < rep.flow.size(); ++a) {
    flow[game.arcs[a]] = to_string(rep.flow[a]);
    if (rep.flow[a] != 0) t << " " << game.arcs[a] << "=" << to_display(rep.flow[a]);
  }
  t << "\n";
  m["flows"] = flow;
  Json vs = Json::array();
  for (const Violation& v : rep.violations) {
    const ClassSpec& c = game.classes[static_cast<std::size_t>(v.cls)];
    t << "  violation: class " << c.label << " prefers "
      << c.routes[static_cast<std::size_t>(v.cheaper_route)].name << " over "
      << c.routes[static_cast<std::size_t>(v.used_route)].name << " by "
      << to_display(v.improvement) << "\n";
    vs.push_back({{"class", v.cls},
                  {"used", c.routes[static_cast<std::size_t>(v.used_route)].name},
                  {"cheaper", c.routes[static_cast<std::size_t>(v.cheaper_route)].name},
                  {"improvement", to_string(v.improvement)}});
  }
  m["violations"] = vs;
  return {t.str(), m};
}

inline Json to_json(const Provenance& pv) {
  Json j;
  j["construction"] = pv.construction;
  j["orientation_flipped"] = pv.flipped;
  j["relabel"] = pv.relabel;
  auto mask = [](const std::optional<DemandMask>& m) {
    return m ? Json(construction_mask_name(*m)) : Json(nullptr);
  };
  auto branch = [](const std::optional<char>& b) {
    return b ? Json(std::string(1, *b)) : Json(nullptr);
  };
  j["J1"] = mask(pv.j1);
  j["J2"] = mask(pv.j2);
  j["J3"] = mask(pv.j3);
  j["class2_branch"] = branch(pv.branch2);
  j["class3_branch"] = branch(pv.branch3);
  j["merged_sign"] = branch(pv.merged_sign);
  j["delta"] = pv.delta ? Json(to_string(*pv.delta)) : Json(nullptr);
  j["defaulted_cells"] = pv.defaulted_cells;
  j["sigma_dominates"] = pv.sigma_dominates;
  j["dominance_cell_predicate"] = pv.dominance_cell_predicate;
  j["cost_dominance"] = pv.cost_dominance;
  j["notes"] = pv.notes;
  return j;
}

inline Report counterexample_report(const Counterexample& ce) {
  std::ostringstream t;
  const Provenance& pv = ce.provenance;
  t << "construction: " << pv.construction << "\n";
  if (ce.ring && !pv.relabel.empty()) {
    t << "classes 1-3 on demands";
    for (int l : pv.relabel) t << " " << demand_name(ce.ring->demand_label(l));
    t << (pv.flipped ? " (orientation flipped)" : "") << "\n";
  }
  if (pv.branch2) t << "class 2 branch " << *pv.branch2 << ", class 3 branch " << *pv.branch3 << "\n";
  if (pv.j1) t << "J1 = " << construction_mask_name(*pv.j1) << "\n";
  if (pv.delta) t << "delta = " << to_display(*pv.delta) << "\n";
  if (pv.branch2) t << "sigma dominates sigma_hat: " << (pv.sigma_dominates ? "yes" : "no") << "\n";
  for (const std::string& n : pv.notes) t << "note: " << n << "\n";
  const Report s = equilibrium_report(ce.game, ce.sigma, ce.sigma_report, "sigma");
  const Report h = equilibrium_report(ce.game, ce.sigma_hat, ce.sigma_hat_report, "sigma_hat");
  t << s.text << h.text;
  Json m;
  m["provenance"] = to_json(pv);
  m["sigma"] = s.machine;
  m["sigma_hat"] = h.machine;
  return {t.str(), m};
}

inline Report strong_report(const GeneralGraph& g, const StrongUniquenessResult& r) {
  std::ostringstream t;
  Json m;
  t << "strong uniqueness: " << (r.holds ? "true" : "false") << "\n";
  m["strong_uniqueness"] = r.holds;
  if (r.witness_cycle) {
    Json c = Json::array();
    t << "witness cycle:";
    for (int v : *r.witness_cycle) {
      t << " " << g.label(v);
      c.push_back(g.label(v));
    }
    t << "\n";
    m["witness_cycle"] = c;
  }
  return {t.str(), m};
}

inline Report scan_report(const std::vector<LabelPair>& demands, const ScanResult& r) {
  std::ostringstream t;
  Json m;
  const bool found = r.conclusive && r.verdict == Verdict::kNonUnique;
  t << "scan: " << (found ? "NonUnique" : "Inconclusive") << "\n";
  m["result"] = found ? "NonUnique" : "Inconclusive";
  m["contracted_bridges"] = r.contracted_bridges;
  m["cycle_bound_exceeded"] = r.cycle_bound_exceeded;
  if (r.contracted_bridges) t << "bridges contracted: " << r.contracted_bridges << "\n";
  if (r.cycle_bound_exceeded) t << "warning: cycle enumeration truncated (CycleBoundExceeded)\n";
  if (found) {
    t << "witness cycle:";
    for (const auto& v : r.witness_cycle) t << " " << v;
    t << "\nwitness demands:";
    Json ds = Json::array();
    for (int l : r.witness_demands) {
      t << " " << demand_name(demands[static_cast<std::size_t>(l)]);
      ds.push_back(demand_name(demands[static_cast<std::size_t>(l)]));
    }
    t << "\n";
    if (r.witness_report && r.witness_report->max_coverage) {
      t << "max coverage = " << *r.witness_report->max_coverage << "\n";
    }
    m["witness_cycle"] = r.witness_cycle;
    m["witness_demands"] = ds;
  }
  return {t.str(), m};
}

inline Report grid_report(const GameInstance& game, int m_res, const std::vector<GridPoint>& res) {
  std::ostringstream t;
  Json m;
  const auto clusters = distinct_flow_clusters(res);
  t << "grid resolution " << m_res << ": " << res.size() << " equilibrium profile(s), "
    << clusters.size() << " distinct flow vector(s)\n";
  Json eq = Json::array();
  for (const GridPoint& g : res) eq.push_back(to_json(g.profile));
  Json cl = Json::array();
  for (std::size_t i = 0; i < clusters.size(); ++i) {
    Json f = Json::object();
    t << "flow " << i + 1 << ":";
    for (std::size_t a = 0; a < clusters[i].size(); ++a) {
      f[game.arcs[a]] = to_string(clusters[i][a]);
      if (clusters[i][a] != 0) t << " " << game.arcs[a] << "=" << to_display(clusters[i][a]);
    }
    t << "\n";
    cl.push_back(f);
  }
  m["resolution"] = m_res;
  m["equilibria"] = eq;
  m["flow_clusters"] = cl;
  return {t.str(), m};
}

inline std::string describe_ring_graph(const MixedGraph& g) {
  std::string s = "ring";
  for (const auto& l : g.labels) s += " " + l;
  s += " | demands";
  for (const auto& [o, d] : g.demands) {
    s += " " + g.labels[static_cast<std::size_t>(o)] + "->" + g.labels[static_cast<std::size_t>(d)];
  }
  return s;
}

inline Report catalog_report(CatalogSide side, const std::vector<MixedGraph>& graphs) {
  std::ostringstream t;
  Json m;
  t << catalog_side_name(side) << " catalog: " << graphs.size() << " graphs\n";
  Json list = Json::array();
  for (std::size_t i = 0; i < graphs.size(); ++i) {
    t << "  [" << i << "] |L| = " << graphs[i].num_demands() << ": " << describe_ring_graph(graphs[i])
      << "\n";
    list.push_back(to_json(graphs[i]));
  }
  m["side"] = catalog_side_name(side);
  m["graphs"] = list;
  return {t.str(), m};
}

inline Report match_report(const CatalogMatch& match) {
  std::ostringstream t;
  Json m;
  t << "verdict: " << verdict_name(match.verdict) << "\n";
  t << "catalog side: " << catalog_side_name(match.side) << "\n";
  m["verdict"] = verdict_name(match.verdict);
  m["side"] = catalog_side_name(match.side);
  m["size_bound"] = match.size_bound;
  m["index"] = match.index ? Json(*match.index) : Json(nullptr);
  if (match.size_bound) {
    t << "instance exceeds the catalog size bound; verdict only\n";
  } else if (match.index) {
    const Catalogs& cat = Catalogs::get();
    const auto& code = match.side == CatalogSide::kUniqueness
                           ? cat.uniqueness()[static_cast<std::size_t>(*match.index)]
                           : cat.obstructions()[static_cast<std::size_t>(*match.index)];
    const MixedGraph g = ring_from_code(code);
    t << (match.side == CatalogSide::kUniqueness ? "covered by" : "contains") << " catalog graph ["
      << *match.index << "]: " << describe_ring_graph(g) << "\n";
    m["graph"] = to_json(g);
  } else {
    t << "no catalog graph matched\n";
  }
  return {t.str(), m};
}

// Grid cap from RINGEQ_GRID_CAP, else the default.
inline double grid_cap_from_env() {
  const char* v = std::getenv("RINGEQ_GRID_CAP");
  if (!v || !*v) return kDefaultGridCap;
  char* end = nullptr;
  const double cap = std::strtod(v, &end);
  if (end == v || *end != '\0' || !(cap >= 1)) {
    throw Error(ErrorCode::kParseError, "RINGEQ_GRID_CAP must be a positive number");
  }
  return cap;
}

}  // namespace ringeq

#endif  // RINGEQ_CLI_IO_HPP_
