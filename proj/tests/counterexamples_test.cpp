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

#include <array>
#include <vector>

#include "ringeq/catalog.hpp"
#include "ringeq/counterexamples.hpp"
#include "test_support.hpp"

namespace ringeq {
namespace {

using testing::brute_masks;
using testing::Rng;
using testing::walk_route;

// Route costs recomputed from scratch: flows by walking the ring, then the
// segment's cost functions summed along each route.
std::vector<std::vector<Rational>> oracle_costs(const RingInstance& ring, const GameInstance& g,
                                                const StrategyProfile& p) {
  const int n = ring.num_vertices();
  std::vector<Rational> f(static_cast<std::size_t>(2 * n), Rational(0));
  auto route_ids = [&](const ClassSpec& c, std::size_t r) {
    const int o = ring.vertex_index(c.od->first);
    const int d = ring.vertex_index(c.od->second);
    return walk_route(n, o, d, r == 0);
  };
  for (std::size_t k = 0; k < g.classes.size(); ++k) {
    for (std::size_t r = 0; r < 2; ++r) {
      for (int id : route_ids(g.classes[k], r)) f[static_cast<std::size_t>(id)] += p.weights[k][r];
    }
  }
  std::vector<std::vector<Rational>> out;
  for (const ClassSpec& c : g.classes) {
    std::vector<Rational> row;
    for (std::size_t r = 0; r < 2; ++r) {
      Rational sum = 0;
      for (int id : route_ids(c, r)) sum += c.costs.at(id)(f[static_cast<std::size_t>(id)]);
      row.push_back(sum);
    }
    out.push_back(row);
  }
  return out;
}

// Both profiles are pure, every user strictly prefers its route, and the
// flows differ; all recomputed independently of the engine.
void expect_sound(const Counterexample& ce) {
  ASSERT_TRUE(ce.ring.has_value());
  const RingInstance& ring = *ce.ring;
  std::vector<std::vector<Rational>> flow_rows;
  for (const StrategyProfile* p : {&ce.sigma, &ce.sigma_hat}) {
    const auto costs = oracle_costs(ring, ce.game, *p);
    for (std::size_t k = 0; k < ce.game.classes.size(); ++k) {
      const auto& w = p->weights[k];
      ASSERT_TRUE(w[0] == 0 || w[1] == 0);
      const std::size_t used = w[0] != 0 ? 0 : 1;
      EXPECT_LT(costs[k][used], costs[k][1 - used]);
    }
  }
  EXPECT_NE(flows(ce.game, ce.sigma), flows(ce.game, ce.sigma_hat));
}

// Applicability of the two-class merge decided on the raw masks: some
// relabelling and orientation has a fully covered construction-positive arc
// and nonempty {1,2} and {1,3} cells of one common sign.
bool merge_applicable_oracle(const RingInstance& ring) {
  const auto masks = brute_masks(ring);
  std::array<int, 3> perm{0, 1, 2};
  do {
    for (bool flip : {false, true}) {
      std::set<std::pair<int, int>> seen;
      for (std::size_t id = 0; id < masks.size(); ++id) {
        int m = 0;
        for (int c = 0; c < 3; ++c) {
          if (masks[id] >> perm[static_cast<std::size_t>(c)] & 1u) m |= 1 << c;
        }
        const int sign = (id % 2 == 0) != flip ? 0 : 1;
        seen.insert({m, sign});
      }
      if (!seen.count({7, 0})) continue;
      for (int s : {0, 1}) {
        if (seen.count({3, s}) && seen.count({5, s})) return true;
      }
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

TEST(MergeTest, TriangleGoldenValues) {
  const Counterexample ce = merge_two_class(testing::triangle());
  EXPECT_TRUE(ce.provenance.flipped);
  EXPECT_EQ(ce.provenance.construction, "two_class");
  ASSERT_EQ(ce.game.classes.size(), 3u);
  EXPECT_EQ(ce.game.classes[0].od, (LabelPair{"u", "v"}));
  EXPECT_EQ(ce.game.classes[1].label, "2");
  EXPECT_EQ(ce.game.classes[2].label, "2");
  EXPECT_EQ(ce.game.classes[1].costs, ce.game.classes[2].costs);
  EXPECT_EQ(ce.sigma_report.route_costs[0], (std::vector<Rational>{50, 43}));
  EXPECT_EQ(ce.sigma_hat_report.route_costs[0], (std::vector<Rational>{51, 55}));
  EXPECT_EQ(*ce.sigma_report.strict_gap, Rational(11, 2));
  EXPECT_EQ(*ce.sigma_hat_report.strict_gap, 4);
  expect_sound(ce);
}

TEST(MergeTest, ProfilesAreFixedPointsOfBestResponse) {
  const Counterexample ce = merge_two_class(testing::triangle());
  EXPECT_EQ(best_response_dynamics(ce.game, ce.sigma, 100, Rational(1, 2)), ce.sigma);
  EXPECT_EQ(best_response_dynamics(ce.game, ce.sigma_hat, 100, Rational(1, 2)), ce.sigma_hat);
}

TEST(MergeTest, ApplicabilityMatchesOracle) {
  int applicable = 0;
  int refused = 0;
  for (int n = 3; n <= 7; ++n) {
    for (const CanonicalForm& code : enumerate_ring_codes(n, 3)) {
      const RingInstance ring = ring_instance_from_code(code);
      if (testing::brute_max_coverage(ring) < 3) continue;
      const bool expect = merge_applicable_oracle(ring);
      try {
        const Counterexample ce = merge_two_class(ring);
        EXPECT_TRUE(expect);
        expect_sound(ce);
        ++applicable;
      } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::kNotApplicable);
        EXPECT_FALSE(expect);
        ++refused;
      }
    }
  }
  EXPECT_GT(applicable, 0);
  EXPECT_GT(refused, 0);
}

TEST(ThreeClassTest, SoundOnAllSmallRings) {
  int built = 0;
  for (int n = 3; n <= 8; ++n) {
    for (const CanonicalForm& code : enumerate_ring_codes(n, 3)) {
      const RingInstance ring = ring_instance_from_code(code);
      if (testing::brute_max_coverage(ring) < 3) {
        EXPECT_THROW(build_three_class(ring), Error);
        continue;
      }
      const Counterexample ce = build_three_class(ring);
      expect_sound(ce);
      const Provenance& pv = ce.provenance;
      for (std::size_t k = 0; k < 3; ++k) {
        EXPECT_EQ(*ce.game.classes[k].od, ring.demand_label(pv.relabel[k]));
      }
      // Both "-" branches make sigma cheaper for everyone.
      if (pv.sigma_dominates) {
        EXPECT_TRUE(pv.cost_dominance);
      }
      ++built;
    }
  }
  EXPECT_GT(built, 100);
}

TEST(ThreeClassTest, RefusesLowCoverage) {
  try {
    build_three_class(testing::seven_vertex());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotApplicable);
  }
}

TEST(ThreeClassTest, ExtraDemandsGetNoUsers) {
  Rng rng(41);
  int checked = 0;
  while (checked < 50) {
    const RingInstance ring = testing::random_ring(rng, 7, 5, 3);
    if (ring.num_demands() < 4 || testing::brute_max_coverage(ring) < 3) continue;
    const Counterexample ce = build_three_class(ring);
    EXPECT_EQ(ce.game.classes.size(), 3u);
    expect_sound(ce);
    ++checked;
  }
}

TEST(ManyOdTest, FiveDemandRings) {
  Rng rng(42);
  int checked = 0;
  while (checked < 100) {
    const RingInstance ring = testing::random_ring(rng, 7, 5, 3);
    if (ring.num_demands() != 5 || testing::brute_max_coverage(ring) < 3) continue;
    const Counterexample ce = extend_many_od(ring);
    ASSERT_EQ(ce.game.classes.size(), 5u);
    EXPECT_EQ(ce.game.classes[3].label, "4");
    EXPECT_EQ(ce.game.classes[4].label, "4");
    ASSERT_TRUE(ce.provenance.delta.has_value());
    EXPECT_EQ(ce.game.classes[3].measure, *ce.provenance.delta);
    expect_sound(ce);
    ++checked;
  }
}

TEST(ManyOdTest, RefusesThreeDemands) {
  EXPECT_THROW(extend_many_od(testing::triangle()), Error);
}

TEST(K4Test, GoldenValues) {
  const Counterexample ce = k4_fixture();
  EXPECT_FALSE(ce.ring.has_value());
  EXPECT_EQ(ce.sigma_report.route_costs[0], (std::vector<Rational>{27, 28}));
  EXPECT_EQ(ce.sigma_report.route_costs[1], (std::vector<Rational>{15, 15, 14}));
  EXPECT_EQ(ce.sigma_hat_report.route_costs[0], (std::vector<Rational>{22, 21}));
  EXPECT_EQ(ce.sigma_hat_report.route_costs[1], (std::vector<Rational>{12, 12, 13}));
  EXPECT_TRUE(ce.sigma_report.is_strict());
  EXPECT_TRUE(ce.sigma_hat_report.is_strict());
  EXPECT_EQ(*ce.sigma_report.strict_gap, 1);
  EXPECT_EQ(*ce.sigma_hat_report.strict_gap, 1);
  EXPECT_NE(ce.sigma_report.flow, ce.sigma_hat_report.flow);
  try {
    subdivide_lift(ce, 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotApplicable);
  }
}

TEST(LiftTest, EveryEdgeOfSmallCounterexamples) {
  Rng rng(43);
  int checked = 0;
  while (checked < 40) {
    const RingInstance ring = testing::random_ring(rng, 6, 3, 3);
    if (ring.num_demands() != 3 || testing::brute_max_coverage(ring) < 3) continue;
    const Counterexample ce = build_three_class(ring);
    for (int e = 0; e < ring.num_edges(); ++e) {
      const Counterexample lifted = subdivide_lift(ce, e);
      EXPECT_EQ(lifted.ring->num_vertices(), ring.num_vertices() + 1);
      EXPECT_EQ(lifted.sigma, ce.sigma);
      expect_sound(lifted);
    }
    ++checked;
  }
}

TEST(LiftTest, FreshLabelsAndRepeatedLifts) {
  Counterexample ce = merge_two_class(testing::triangle());
  for (int i = 0; i < 4; ++i) ce = subdivide_lift(ce, 0);
  EXPECT_EQ(ce.ring->num_vertices(), 7);
  const auto& v = ce.ring->vertices();
  for (const char* s : {"sub1", "sub2", "sub3", "sub4"}) {
    EXPECT_NE(std::find(v.begin(), v.end(), s), v.end());
  }
  expect_sound(ce);
  EXPECT_THROW(subdivide_lift(ce, 7), Error);
}

}  // namespace
}  // namespace ringeq
