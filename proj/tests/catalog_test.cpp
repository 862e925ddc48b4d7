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
#include <map>
#include <numeric>
#include <vector>

#include "ringeq/catalog.hpp"
#include "test_support.hpp"

namespace ringeq {
namespace {

using testing::Rng;
using testing::uniform;

// The same ring listed from another start vertex, possibly mirrored, with
// its demands shuffled.
RingInstance relabelled(const RingInstance& r, Rng& rng) {
  std::vector<std::string> v = r.vertices();
  std::rotate(v.begin(), v.begin() + uniform(rng, 0, r.num_vertices() - 1), v.end());
  if (uniform(rng, 0, 1)) std::reverse(v.begin(), v.end());
  auto d = r.demand_labels();
  std::shuffle(d.begin(), d.end(), rng);
  return RingInstance::build(v, d);
}

MixedGraph permuted(const MixedGraph& m, Rng& rng) {
  std::vector<int> p(static_cast<std::size_t>(m.num_vertices()));
  std::iota(p.begin(), p.end(), 0);
  std::shuffle(p.begin(), p.end(), rng);
  MixedGraph out;
  out.labels.resize(m.labels.size());
  for (std::size_t i = 0; i < p.size(); ++i) out.labels[static_cast<std::size_t>(p[i])] = m.labels[i];
  auto map = [&](std::pair<int, int> e) {
    return std::pair{p[static_cast<std::size_t>(e.first)], p[static_cast<std::size_t>(e.second)]};
  };
  for (const auto& e : m.edges) out.edges.push_back(map(e));
  for (const auto& d : m.demands) out.demands.push_back(map(d));
  std::shuffle(out.edges.begin(), out.edges.end(), rng);
  std::shuffle(out.demands.begin(), out.demands.end(), rng);
  return out;
}

TEST(CanonicalFormTest, RingInvariantUnderRelabelling) {
  Rng rng(51);
  for (int i = 0; i < 1000; ++i) {
    const RingInstance r = testing::random_ring(rng, 9, 5);
    const CanonicalForm c = canonical_form(to_mixed_graph(r));
    EXPECT_EQ(canonical_form(to_mixed_graph(relabelled(r, rng))), c);
    EXPECT_EQ(canonical_form(permuted(to_mixed_graph(r), rng)), c);
  }
}

TEST(CanonicalFormTest, ReversingDemandsChangesTheRing) {
  const MixedGraph a = to_mixed_graph(RingInstance::build({"a", "b", "c", "d"}, {{"a", "b"}, {"a", "c"}}));
  const MixedGraph b = to_mixed_graph(RingInstance::build({"a", "b", "c", "d"}, {{"a", "b"}, {"c", "a"}}));
  EXPECT_NE(canonical_form(a), canonical_form(b));
}

TEST(CanonicalFormTest, GeneralGraphInvariantUnderRelabelling) {
  Rng rng(52);
  for (int i = 0; i < 300; ++i) {
    MixedGraph m;
    const int n = uniform(rng, 3, 7);
    for (int v = 0; v < n; ++v) m.labels.push_back("g" + std::to_string(v));
    const int ne = uniform(rng, n + 1, 2 * n);
    for (int e = 0; e < ne; ++e) {
      const int a = uniform(rng, 0, n - 1);
      int b = uniform(rng, 0, n - 2);
      if (b >= a) ++b;
      m.edges.emplace_back(a, b);
    }
    m.demands = {{0, 1}, {2, 0}};
    EXPECT_EQ(canonical_form(permuted(m, rng)), canonical_form(m));
  }
}

TEST(ContractTest, Examples) {
  // Contracting u-w of the triangle makes demand (u,w) a loop.
  const MixedGraph tri = to_mixed_graph(testing::triangle());
  EXPECT_FALSE(contract_edge(tri, 0).has_value());
  // Contracting a-b here repeats the demand pair.
  const MixedGraph rep = to_mixed_graph(RingInstance::build({"a", "b", "c"}, {{"a", "c"}, {"b", "c"}}));
  EXPECT_FALSE(contract_edge(rep, 0).has_value());
  const MixedGraph seven = to_mixed_graph(testing::seven_vertex());
  const auto c = contract_edge(seven, 4);  // d2 - w
  ASSERT_TRUE(c.has_value());
  EXPECT_EQ(c->num_vertices(), 6);
  EXPECT_EQ(c->num_edges(), 6);
  EXPECT_NE(std::find(c->labels.begin(), c->labels.end(), "d2+w"), c->labels.end());
  EXPECT_THROW(contract_edge(seven, 7), Error);
}

TEST(SuppressTest, DropsNonTerminalDegreeTwoVertices) {
  const MixedGraph s = suppress_degree2(to_mixed_graph(testing::seven_vertex()));
  EXPECT_EQ(s.num_vertices(), 4);
  EXPECT_EQ(s.num_edges(), 4);
  EXPECT_EQ(canonical_form(s), suppressed_ring_code({{0, 3}, {1, 4}}));
  // A 2-cycle with one terminal pair has nothing to suppress.
  const MixedGraph two = to_mixed_graph(RingInstance::build({"a", "b"}, {{"a", "b"}}));
  EXPECT_EQ(suppress_degree2(two), two);
}

TEST(HomeoMinorTest, RingExamples) {
  const MixedGraph tri = to_mixed_graph(testing::triangle());
  const MixedGraph big = to_mixed_graph(testing::triangle().subdivided(0, "x").subdivided(2, "y"));
  EXPECT_TRUE(is_homeo_minor(tri, big));
  EXPECT_FALSE(is_homeo_minor(tri, to_mixed_graph(testing::seven_vertex())));
  const MixedGraph one = to_mixed_graph(RingInstance::build({"a", "b"}, {{"a", "b"}}));
  EXPECT_TRUE(is_homeo_minor(one, to_mixed_graph(testing::seven_vertex())));
}

TEST(HomeoMinorTest, GeneralSearch) {
  // K4 on u, w, v, x with the triangle demands: deleting x exposes the triangle.
  MixedGraph k4;
  k4.labels = {"u", "w", "v", "x"};
  k4.edges = {{0, 1}, {1, 2}, {2, 0}, {0, 3}, {1, 3}, {2, 3}};
  k4.demands = {{0, 1}, {0, 2}, {1, 2}};
  EXPECT_TRUE(is_homeo_minor(to_mixed_graph(testing::triangle()), k4));
  // A path cannot host a ring.
  MixedGraph path;
  path.labels = {"u", "w", "v"};
  path.edges = {{0, 1}, {1, 2}};
  path.demands = {{0, 1}, {0, 2}, {1, 2}};
  EXPECT_FALSE(is_homeo_minor(to_mixed_graph(testing::triangle()), path));
}

TEST(CatalogTest, MinimalObstructions) {
  const auto codes = enumerate_minimal_obstruction_codes();
  ASSERT_EQ(codes.size(), 9u);
  EXPECT_EQ(codes[0], (CanonicalForm{0, 3, 3, 0, 1, 0, 2, 1, 2}));
  EXPECT_NE(std::find(codes.begin(), codes.end(), canonical_form(to_mixed_graph(testing::triangle()))),
            codes.end());
  for (const auto& c : codes) {
    EXPECT_EQ(c[1], 3);
    const RingInstance r = ring_instance_from_code(c);
    EXPECT_EQ(testing::brute_max_coverage(r), 3);
    // No contraction keeps three routes on one arc.
    const auto dem = code_demands(c);
    for (int e = 0; e < c[2]; ++e) {
      const auto child = detail::contract_ring_edge(c[2], dem, e);
      if (child) {
        EXPECT_LT(ring_max_coverage(c[2] - 1, *child), 3);
      }
    }
  }
}

TEST(CatalogTest, MaximalUniquenessRings) {
  const auto codes = enumerate_maximal_uniqueness_codes();
  ASSERT_EQ(codes.size(), 9u);
  std::map<int, int> by_demands;
  for (const auto& c : codes) {
    ++by_demands[c[1]];
    EXPECT_LE(testing::brute_max_coverage(ring_instance_from_code(c)), 2);
  }
  EXPECT_EQ(by_demands, (std::map<int, int>{{1, 1}, {2, 3}, {3, 2}, {4, 3}}));
  // One more vertex admits nothing new.
  EXPECT_EQ(enumerate_maximal_uniqueness_codes(9), codes);
}

TEST(CatalogTest, ConsistentWithVerdictOnSmallRings) {
  const Catalogs& cat = Catalogs::get();
  for (int n = 2; n <= 6; ++n) {
    for (int num_l = 1; num_l <= 4; ++num_l) {
      for (const auto& code : enumerate_ring_codes(n, num_l)) {
        const auto dem = code_demands(code);
        const bool unique = ring_max_coverage(n, dem) <= 2;
        EXPECT_EQ(cat.covering(suppressed_ring_code(dem)).has_value(), unique);
        EXPECT_EQ(cat.contained(dem).has_value(), !unique);
      }
    }
  }
}

TEST(MatchTest, Examples) {
  const CatalogMatch tri = match_catalog(testing::triangle());
  EXPECT_EQ(tri.verdict, Verdict::kNonUnique);
  EXPECT_EQ(tri.side, CatalogSide::kObstruction);
  EXPECT_EQ(tri.index, 0);
  const CatalogMatch seven = match_catalog(testing::seven_vertex());
  EXPECT_EQ(seven.verdict, Verdict::kUnique);
  EXPECT_EQ(seven.side, CatalogSide::kUniqueness);
  EXPECT_TRUE(seven.index.has_value());
  EXPECT_FALSE(seven.size_bound);
}

TEST(MatchTest, SizeBoundOnManyTerminals) {
  std::vector<std::string> v;
  for (int i = 0; i < 12; ++i) v.push_back("t" + std::to_string(i));
  std::vector<LabelPair> d;
  for (int i = 0; i < 6; ++i) d.emplace_back(v[static_cast<std::size_t>(2 * i)], v[static_cast<std::size_t>(2 * i + 1)]);
  const CatalogMatch m = match_catalog(RingInstance::build(v, d));
  EXPECT_TRUE(m.size_bound);
  EXPECT_FALSE(m.index.has_value());
  EXPECT_EQ(m.verdict, Verdict::kNonUnique);
}

}  // namespace
}  // namespace ringeq
