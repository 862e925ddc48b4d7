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


#include <gtest/gtest.h>

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "ringeq/coverage_analysis.hpp"
#include "test_support.hpp"

namespace ringeq {
namespace {

using testing::brute_masks;
using testing::brute_max_coverage;
using testing::random_ring;
using testing::Rng;
using testing::uniform;

using NamedArcs = std::set<std::pair<std::string, std::string>>;

NamedArcs named(const RingInstance& r, const std::vector<Arc>& arcs) {
  NamedArcs out;
  for (const Arc& a : arcs) out.insert({r.label(r.tail(a)), r.label(r.head(a))});
  return out;
}

// Three cells of the seven-vertex example pin down its cyclic order.
// Brute force over every vertex order: only the seven rotations of one
// order reproduce all three cells.
TEST(SevenVertexTest, CellsDetermineCyclicOrder) {
  std::vector<std::string> order = {"d1", "d2", "o1", "o2", "u", "v", "w"};
  const NamedArcs both_pos = {{"o2", "v"}, {"v", "d1"}};
  const NamedArcs second_neg = {{"o2", "o1"}};
  const NamedArcs unused = {{"d1", "v"}, {"v", "o2"}, {"d2", "w"}, {"w", "u"}, {"u", "o1"}};
  std::vector<std::vector<std::string>> matches;
  do {
    const RingInstance r = RingInstance::build(order, {{"o1", "d1"}, {"o2", "d2"}});
    const CoveragePartition p = arc_partition(r);
    NamedArcs empty_cell = named(r, p.cell(0, Sign::kPositive));
    for (const auto& x : named(r, p.cell(0, Sign::kNegative))) empty_cell.insert(x);
    if (named(r, p.cell(0b11, Sign::kPositive)) == both_pos &&
        named(r, p.cell(0b10, Sign::kNegative)) == second_neg && empty_cell == unused) {
      matches.push_back(order);
    }
  } while (std::next_permutation(order.begin(), order.end()));
  ASSERT_EQ(matches.size(), 7u);
  const std::vector<std::string> ref = testing::seven_vertex().vertices();
  for (const auto& m : matches) {
    bool rotation = false;
    for (std::size_t k = 0; k < ref.size(); ++k) {
      std::vector<std::string> rot(ref.begin() + static_cast<long>(k), ref.end());
      rot.insert(rot.end(), ref.begin(), ref.begin() + static_cast<long>(k));
      rotation = rotation || rot == m;
    }
    EXPECT_TRUE(rotation);
  }
}

TEST(SevenVertexTest, RouteAndVerdict) {
  const RingInstance r = testing::seven_vertex();
  EXPECT_EQ(r.num_edges(), 7);
  EXPECT_EQ(r.num_arcs(), 14);
  const auto route = route_arcs(r, 0, Sign::kPositive);
  ASSERT_EQ(route.size(), 3u);
  EXPECT_EQ(r.arc_name(route[0]), "o1->o2");
  EXPECT_EQ(r.arc_name(route[1]), "o2->v");
  EXPECT_EQ(r.arc_name(route[2]), "v->d1");
  const CoverageReport rep = uniqueness_verdict(r, true);
  EXPECT_EQ(rep.verdict, Verdict::kUnique);
  EXPECT_EQ(rep.max_coverage, 2);
}

TEST(CoverageTest, TriangleIsNonUnique) {
  const RingInstance r = testing::triangle();
  const CoverageReport rep = uniqueness_verdict(r, true);
  EXPECT_EQ(rep.verdict, Verdict::kNonUnique);
  EXPECT_EQ(rep.max_coverage, 3);
  ASSERT_TRUE(rep.witness_arc.has_value());
  EXPECT_EQ(r.arc_name(*rep.witness_arc), "u->v");
  EXPECT_EQ(rep.witness_demands, (std::vector<int>{0, 1, 2}));
}

TEST(CoverageTest, NaiveMatchesOracle) {
  Rng rng(21);
  for (int i = 0; i < 2000; ++i) {
    const RingInstance r = random_ring(rng, 12, 7);
    EXPECT_EQ(naive_max_coverage(r).max_coverage, brute_max_coverage(r));
  }
}

TEST(CoverageTest, RoundTripMatchesOracleFromEveryStart) {
  Rng rng(22);
  for (int i = 0; i < 1000; ++i) {
    const RingInstance r = random_ring(rng, 10, 6);
    for (int s = 0; s < r.num_vertices(); ++s) {
      for (Sign dir : kSigns) {
        const RoundTripResult res = round_trip_scan(r, s, dir);
        EXPECT_EQ(res.max_coverage, brute_max_coverage(r));
        EXPECT_EQ(std::max(res.max_dir, r.num_demands() - res.min_dir), brute_max_coverage(r));
      }
    }
  }
}

TEST(CoverageTest, WitnessArcCarriesItsDemands) {
  Rng rng(23);
  for (int i = 0; i < 1000; ++i) {
    const RingInstance r = random_ring(rng, 10, 6);
    const CoveredArc w = max_covered_arc(r, uniform(rng, 0, r.num_vertices() - 1),
                                         uniform(rng, 0, 1) ? Sign::kPositive : Sign::kNegative);
    EXPECT_EQ(static_cast<int>(w.demands.size()), brute_max_coverage(r));
    for (int l = 0; l < r.num_demands(); ++l) {
      const bool listed = std::find(w.demands.begin(), w.demands.end(), l) != w.demands.end();
      EXPECT_EQ(listed, r.covers(l, w.arc));
    }
  }
}

TEST(CoverageTest, VerdictMatchesOracleAndFastPathAgrees) {
  Rng rng(24);
  for (int i = 0; i < 2000; ++i) {
    const RingInstance r = random_ring(rng, 10, 7);
    const Verdict expect = brute_max_coverage(r) >= 3 ? Verdict::kNonUnique : Verdict::kUnique;
    EXPECT_EQ(uniqueness_verdict(r, false).verdict, expect);
    EXPECT_EQ(uniqueness_verdict(r, true).verdict, expect);
  }
}

TEST(CoverageTest, ReversalPreservesCoverage) {
  Rng rng(25);
  for (int i = 0; i < 500; ++i) {
    const RingInstance r = random_ring(rng, 10, 6);
    EXPECT_EQ(uniqueness_verdict(r, true).max_coverage,
              uniqueness_verdict(r.reversed(), true).max_coverage);
  }
}

TEST(CoverageTest, RejectsBadStart) {
  EXPECT_THROW(round_trip_scan(testing::triangle(), 3, Sign::kPositive), Error);
}

TEST(StrongUniquenessTest, Examples) {
  const GeneralGraph path = GeneralGraph::build({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}});
  EXPECT_TRUE(strong_uniqueness(path).holds);
  // Parallel edges collapse to one.
  const GeneralGraph multi = GeneralGraph::build({"a", "b"}, {{"a", "b"}, {"b", "a"}, {"a", "b"}});
  EXPECT_TRUE(strong_uniqueness(multi).holds);
  const GeneralGraph tri =
      GeneralGraph::build({"a", "b", "c", "d"}, {{"a", "b"}, {"b", "c"}, {"c", "a"}, {"c", "d"}});
  const auto r = strong_uniqueness(tri);
  EXPECT_FALSE(r.holds);
  ASSERT_TRUE(r.witness_cycle.has_value());
  std::vector<int> c = *r.witness_cycle;
  std::sort(c.begin(), c.end());
  EXPECT_EQ(c, (std::vector<int>{0, 1, 2}));
}

TEST(StrongUniquenessTest, MatchesForestOracle) {
  Rng rng(26);
  for (int i = 0; i < 1000; ++i) {
    const int n = uniform(rng, 2, 9);
    const int m = uniform(rng, 0, 2 * n);
    std::vector<std::string> labels;
    for (int v = 0; v < n; ++v) labels.push_back(std::to_string(v));
    std::vector<LabelPair> edges;
    std::vector<std::pair<int, int>> idx;
    for (int e = 0; e < m; ++e) {
      const int u = uniform(rng, 0, n - 1);
      int v = uniform(rng, 0, n - 2);
      if (v >= u) ++v;
      edges.emplace_back(labels[static_cast<std::size_t>(u)], labels[static_cast<std::size_t>(v)]);
      idx.emplace_back(u, v);
    }
    EXPECT_EQ(strong_uniqueness(GeneralGraph::build(labels, edges)).holds,
              testing::brute_is_forest(n, idx));
  }
}

GeneralGraph pendant_triangle() {
  return GeneralGraph::build({"u", "w", "v", "p", "q"},
                             {{"u", "w"}, {"w", "v"}, {"v", "u"}, {"v", "p"}, {"p", "q"}});
}

TEST(ScanTest, FindsEmbeddedTriangle) {
  const ScanResult r =
      scan_cycle_obstructions(pendant_triangle(), {{"u", "w"}, {"u", "v"}, {"w", "v"}});
  EXPECT_TRUE(r.conclusive);
  EXPECT_EQ(r.verdict, Verdict::kNonUnique);
  EXPECT_EQ(r.witness_cycle.size(), 3u);
  EXPECT_EQ(r.witness_demands.size(), 3u);
  ASSERT_TRUE(r.witness_report.has_value());
  EXPECT_EQ(r.witness_report->max_coverage, 3);
  EXPECT_EQ(r.contracted_bridges, 2);
}

TEST(ScanTest, DemandAcrossBridgeLandsOnCycle) {
  // The bridge v-p contracts, so demand (u,q) becomes (u,v+p+q) on the cycle.
  const ScanResult r =
      scan_cycle_obstructions(pendant_triangle(), {{"u", "w"}, {"u", "q"}, {"w", "v"}});
  EXPECT_TRUE(r.conclusive);
  EXPECT_EQ(r.verdict, Verdict::kNonUnique);
}

TEST(ScanTest, NeverClaimsUnique) {
  const ScanResult r = scan_cycle_obstructions(pendant_triangle(), {{"u", "w"}, {"w", "v"}});
  EXPECT_FALSE(r.conclusive);
}

TEST(ScanTest, FlagsCyclesBeyondBound) {
  std::vector<std::string> v;
  std::vector<LabelPair> e;
  for (int i = 0; i < 6; ++i) v.push_back("x" + std::to_string(i));
  for (int i = 0; i < 6; ++i) e.emplace_back(v[static_cast<std::size_t>(i)], v[static_cast<std::size_t>((i + 1) % 6)]);
  ScanOptions opt;
  opt.max_cycle_length = 4;
  const ScanResult r = scan_cycle_obstructions(GeneralGraph::build(v, e), {{"x0", "x3"}}, opt);
  EXPECT_FALSE(r.conclusive);
  EXPECT_TRUE(r.cycle_bound_exceeded);
}

}  // namespace
}  // namespace ringeq
