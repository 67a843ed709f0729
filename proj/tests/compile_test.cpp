#include <gtest/gtest.h>

#include "fixtures.hpp"

using namespace twdnnf;
namespace fam = twdnnf::families;

TEST(Compile, SingleEdge) {
  const Graph g = fam::path(2);
  const Charge c = Charge::unit(2, 0);
  const auto w = build_well_structured_bp(g, c);
  const auto d = compile_bp_to_dnnf(w.bp, w.annotations, g, c, 0);
  EXPECT_TRUE(validate_decomposable(d));
  EXPECT_EQ(brute_force_models(d), (ModelSet{0}));
}

TEST(Compile, TriangleRootedAtFirstVertex) {
  const Graph g = fixtures::c3();
  const Charge c = Charge::unit(3, 0);
  const auto w = build_well_structured_bp(g, c);
  const auto d = compile_bp_to_dnnf(w.bp, w.annotations, g, c, 0);
  EXPECT_EQ(brute_force_models(d), (ModelSet{0b000, 0b111}));
}

TEST(Compile, EveryNodeGateComputesShiftedFormula) {
  for (const auto& [name, g] : fixtures::connected_family()) {
    if (g.edge_count() > 10) continue;
    const Charge c = Charge::unit(g.vertex_count(), 0);
    const auto w = build_well_structured_bp(g, c);
    const auto compiled = compile_with_maps(w.bp, w.annotations, g, c, 0);
    EXPECT_TRUE(validate_decomposable(compiled.full)) << name;
    for (int k = 0; k < w.bp.size(); ++k) {
      const auto& a = w.annotations[static_cast<std::size_t>(k)];
      const Bitset outside = ~a.edges;
      for (int v : members(a.vertices)) {
        const int gate = compiled.gate_of[static_cast<std::size_t>(k)][static_cast<std::size_t>(v)];
        ASSERT_GE(gate, 0) << name;
        const Charge target = a.charge + Charge::unit(g.vertex_count(), v);
        for (Model m = 0; m < (Model{1} << g.edge_count()); ++m) {
          if (m & mask_of(outside)) continue;
          bool ok = true;
          for (int u : members(a.vertices)) {
            int p = 0;
            for (const Incidence& inc : g.incident(u))
              if (a.edges.test(static_cast<std::size_t>(inc.edge))) p ^= static_cast<int>((m >> inc.edge) & 1U);
            ok = ok && p == static_cast<int>(target[u]);
          }
          ASSERT_EQ(evaluate_all(compiled.full, m)[static_cast<std::size_t>(gate)] != 0, ok) << name << " node " << k;
        }
      }
    }
    EXPECT_LE(compiled.constructed_gates, 3 * compiled.annotation_vertex_total) << name;
  }
}

TEST(Compile, RetargetToOtherCharges) {
  const Graph g = fixtures::c3();
  const Charge c = Charge::unit(3, 0);
  const auto w = build_well_structured_bp(g, c);
  const auto d = compile_bp_to_dnnf(w.bp, w.annotations, g, c, 0);
  EXPECT_EQ(retarget(d, g, Charge::zero(3), Charge::zero(3)), d);
  const Charge t = Charge::from_vertices(3, {0, 1});
  const auto moved = retarget(d, g, Charge::zero(3), t);
  EXPECT_EQ(brute_force_models(moved), TseitinFormula(g, t).brute_force_models());
  const auto back = retarget(moved, g, t, Charge::zero(3));
  EXPECT_EQ(back, d);
}

TEST(Compile, PipelineReports) {
  const auto r3 = pipeline(fixtures::c3(), Charge::unit(3, 0), Charge::zero(3));
  ASSERT_TRUE(r3.equivalent.has_value());
  EXPECT_TRUE(*r3.equivalent);
  EXPECT_EQ(*r3.model_count, 2U);
  EXPECT_LE(r3.size_ratio(), 3.0);
  const auto r4 = pipeline(fam::complete(4), Charge::unit(4, 0), Charge::zero(4));
  EXPECT_TRUE(*r4.equivalent);
  EXPECT_EQ(*r4.model_count, 8U);
  EXPECT_TRUE(r4.size_bound_holds);
  EXPECT_TRUE(r4.gate_bound_holds);
}

TEST(Compile, PipelineFamilyWithRandomTargets) {
  for (const auto& [name, g] : fixtures::connected_family()) {
    if (g.edge_count() > 16) continue;
    for (std::uint64_t seed = 0; seed < 2; ++seed) {
      const Charge target = random_charge(g, seed, true);
      const auto r = pipeline(g, random_charge(g, seed + 7, false), target);
      ASSERT_TRUE(r.equivalent.has_value()) << name;
      EXPECT_TRUE(*r.equivalent) << name;
      EXPECT_EQ(*r.model_count, TseitinFormula(g, target).model_count()) << name;
      EXPECT_TRUE(r.size_bound_holds) << name;
      EXPECT_TRUE(r.gate_bound_holds) << name;
      EXPECT_TRUE(validate_decomposable(r.dnnf)) << name;
    }
  }
}

TEST(Compile, CycleSizesGrowLinearly) {
  int previous = 0;
  for (int n = 4; n <= 8; ++n) {
    const auto r = pipeline(fam::cycle(n), Charge::unit(n, 0), Charge::zero(n));
    EXPECT_LE(r.dnnf_size, 12 * n) << n;
    EXPECT_GT(r.dnnf_size, previous) << n;
    previous = r.dnnf_size;
  }
}

TEST(Compile, RejectsBadInput) {
  EXPECT_THROW(pipeline(fixtures::two_disjoint_edges(), Charge::unit(4, 0), Charge::zero(4)), Error);
  EXPECT_THROW(pipeline(fixtures::c3(), Charge::unit(3, 0), Charge::unit(3, 1)), Error);
  const Graph g = fixtures::c3();
  const auto w = build_well_structured_bp(g, Charge::unit(3, 0));
  EXPECT_THROW(compile_bp_to_dnnf(w.bp, w.annotations, g, Charge::unit(3, 1), 0), Error);
  EXPECT_THROW(compile_bp_to_dnnf(w.bp, w.annotations, g, Charge::unit(3, 0), 5), Error);
}
