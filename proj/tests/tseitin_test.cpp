#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"

using namespace twdnnf;
namespace fam = twdnnf::families;

namespace {

Charge odd(int n, std::vector<int> vs) { return Charge::from_vertices(n, vs); }

}  // namespace

TEST(Tseitin, Satisfiability) {
  EXPECT_TRUE(TseitinFormula(fixtures::c3(), Charge::zero(3)).is_satisfiable());
  EXPECT_FALSE(TseitinFormula(fixtures::c3(), odd(3, {0})).is_satisfiable());
  EXPECT_TRUE(TseitinFormula(fixtures::two_disjoint_edges(), odd(4, {0, 1})).is_satisfiable());
  EXPECT_FALSE(TseitinFormula(fixtures::two_disjoint_edges(), odd(4, {0, 2})).is_satisfiable());
}

TEST(Tseitin, ModelCounts) {
  EXPECT_EQ(TseitinFormula(fam::complete(4), Charge::zero(4)).model_count(), 8U);
  EXPECT_EQ(TseitinFormula(fixtures::c3(), odd(3, {0})).model_count(), 0U);
  EXPECT_EQ(TseitinFormula(fam::cycle(4), Charge::zero(4)).model_count(), 2U);
  EXPECT_EQ(fixtures::count_tseitin_models(fam::cycle(4), {0, 0, 0, 0}), 2U);
}

TEST(Tseitin, C3ModelsInEdgeOrder) {
  const auto models = TseitinFormula(fixtures::c3(), Charge::zero(3)).brute_force_models();
  EXPECT_EQ(models, (ModelSet{0b000, 0b111}));
  EXPECT_EQ(TseitinFormula(fam::path(2), Charge::zero(2)).brute_force_models(), (ModelSet{0}));
}

TEST(Tseitin, CountMatchesDirectEnumeration) {
  std::mt19937_64 rng(11);
  std::vector<Graph> gs;
  for (const auto& [name, g] : fixtures::connected_family())
    if (g.edge_count() <= 14) gs.push_back(g);
  gs.push_back(fixtures::two_disjoint_edges());
  gs.push_back(Graph(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}}));
  for (const Graph& g : gs)
    for (int trial = 0; trial < 6; ++trial) {
      std::vector<int> bits(static_cast<std::size_t>(g.vertex_count()));
      for (auto& b : bits) b = static_cast<int>(rng() & 1U);
      std::vector<int> odd_vertices;
      for (int v = 0; v < g.vertex_count(); ++v)
        if (bits[static_cast<std::size_t>(v)]) odd_vertices.push_back(v);
      const TseitinFormula t(g, odd(g.vertex_count(), odd_vertices));
      const auto expected = fixtures::count_tseitin_models(g, bits);
      EXPECT_EQ(t.model_count(), expected);
      EXPECT_EQ(t.brute_force_models().size(), expected);
      EXPECT_EQ(t.is_satisfiable(), expected > 0);
    }
}

TEST(Tseitin, ConditioningOnC3) {
  const TseitinFormula t(fixtures::c3(), Charge::zero(3));
  const auto one = t.condition(0, true);
  EXPECT_EQ(one.charge(), odd(3, {0, 1}));
  EXPECT_EQ(one.model_count(), 1U);
  const auto zero = t.condition(0, false);
  EXPECT_EQ(zero.charge(), Charge::zero(3));
  EXPECT_EQ(zero.model_count(), 1U);
  EXPECT_THROW(one.condition(0, false), Error);
}

TEST(Tseitin, ConditioningChainReplaysModels) {
  const Graph g = fam::complete(4);
  const TseitinFormula t(g, Charge::zero(4));
  const auto models = t.brute_force_models();
  for (Model m : models) {
    TseitinFormula cur = t;
    for (int e = 0; e < g.edge_count(); ++e) {
      cur = cur.condition(e, (m >> e) & 1U);
      const auto expected = static_cast<std::uint64_t>(std::count_if(
          models.begin(), models.end(), [&](Model x) {
            const Model mask = (Model{1} << (e + 1)) - 1;
            return (x & mask) == (m & mask);
          }));
      EXPECT_EQ(cur.model_count(), expected);
    }
    EXPECT_TRUE(cur.is_satisfiable());
    EXPECT_EQ(cur.active_count(), 0);
  }
}

TEST(Tseitin, SearchVertexRelation) {
  const Graph g = fixtures::c3();
  const Assignment zero(3);
  EXPECT_TRUE(searchvertex_holds(g, odd(3, {0}), zero, 0));
  EXPECT_FALSE(searchvertex_holds(g, odd(3, {0}), zero, 1));
  for (const auto& [name, h] : fixtures::connected_family()) {
    if (h.edge_count() > 12) continue;
    const Charge c = odd(h.vertex_count(), {0});
    for (Model m = 0; m < (Model{1} << h.edge_count()); ++m) {
      bool some = false;
      for (int v = 0; v < h.vertex_count(); ++v) some |= searchvertex_holds(h, c, to_assignment(m, h.edge_count()), v);
      EXPECT_TRUE(some) << name;
    }
  }
}

TEST(Tseitin, SubConstraintCounts) {
  const Graph c4 = fam::cycle(4);
  const TseitinFormula t4(c4, Charge::zero(4));
  const SubConstraint s4{0, {*c4.edge_between(0, 1)}, 0};
  EXPECT_EQ(conjoin_subconstraints_count(t4, {s4}), 1U);
  EXPECT_EQ(brute_force_conjoin_count(t4, {s4}), 1U);

  const Graph k4 = fam::complete(4);
  const TseitinFormula t(k4, Charge::zero(4));
  const SubConstraint s{0, {*k4.edge_between(0, 1)}, 0};
  EXPECT_EQ(conjoin_subconstraints_count(t, {s}), 4U);
  EXPECT_EQ(brute_force_conjoin_count(t, {s}), 4U);
  EXPECT_EQ(conjoin_subconstraints_count(t, {}), t.model_count());
  EXPECT_THROW(check_subconstraint(k4, {0, {0, 1, 2}, 0}), Error);
  EXPECT_THROW(check_subconstraint(k4, {0, {5}, 0}), Error);
}

TEST(Tseitin, SubConstraintCountsMatchBruteForceOnSafeSplits) {
  for (const auto& [name, g] : fixtures::three_connected_family()) {
    const TseitinFormula t(g, Charge::zero(g.vertex_count()));
    for (const auto& set : fixtures::independent_sets(g, 3)) {
      std::vector<SplitRequest> requests;
      for (int v : set) requests.push_back(fixtures::patterned_split(g, v, static_cast<unsigned>(v) * 3U));
      const auto safe = safe_split_subset(g, requests);
      for (int p = 0; p < 2; ++p) {
        std::vector<SubConstraint> subs;
        for (const auto& r : safe) {
          SubConstraint s{r.vertex, {}, p};
          for (int u : r.first) s.edges.push_back(*g.edge_between(r.vertex, u));
          std::sort(s.edges.begin(), s.edges.end());
          subs.push_back(s);
        }
        EXPECT_EQ(conjoin_subconstraints_count(t, subs), brute_force_conjoin_count(t, subs)) << name;
      }
    }
  }
}

TEST(Tseitin, RetargetFlipsMapModelSets) {
  const Graph c3 = fixtures::c3();
  const auto flips = charge_retarget_flips(c3, odd(3, {0, 1}), Charge::zero(3));
  EXPECT_EQ(members(flips), (std::vector<int>{0}));
  EXPECT_TRUE(charge_retarget_flips(c3, Charge::zero(3), Charge::zero(3)).none());
  for (const auto& [name, g] : fixtures::connected_family()) {
    if (g.edge_count() > 14) continue;
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      const Charge a = random_charge(g, seed, true), b = random_charge(g, seed + 100, true);
      const Bitset f = charge_retarget_flips(g, a, b);
      ModelSet mapped;
      for (Model m : TseitinFormula(g, a).brute_force_models()) mapped.push_back(apply_flips(m, f));
      std::sort(mapped.begin(), mapped.end());
      EXPECT_EQ(mapped, TseitinFormula(g, b).brute_force_models()) << name;
    }
  }
  EXPECT_THROW(charge_retarget_flips(c3, odd(3, {0}), Charge::zero(3)), Error);
}

TEST(Tseitin, RandomChargeParity) {
  for (const auto& [name, g] : fixtures::connected_family())
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
      EXPECT_TRUE(TseitinFormula(g, random_charge(g, seed, true)).is_satisfiable()) << name;
      EXPECT_FALSE(TseitinFormula(g, random_charge(g, seed, false)).is_satisfiable()) << name;
      EXPECT_EQ(random_charge(g, seed, true), random_charge(g, seed, true));
    }
}
