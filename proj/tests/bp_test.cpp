#include <gtest/gtest.h>

#include "fixtures.hpp"

using namespace twdnnf;
namespace fam = twdnnf::families;

namespace {

BranchingProgram single_edge_bp() {
  BranchingProgram b;
  b.nodes = {{BpNode::Kind::Sink, 0, -1, -1, -1, 0}, {BpNode::Kind::Sink, 1, -1, -1, -1, 1},
             {BpNode::Kind::Decision, 2, 0, 0, 1, -1}};
  b.source = 2;
  return b;
}

// Oracle: the returned vertex is in G and its parity constraint fails.
bool violates(const Graph& g, const Charge& c, Model m, int v) {
  int p = 0;
  for (const Incidence& inc : g.incident(v)) p ^= static_cast<int>((m >> inc.edge) & 1U);
  return p != static_cast<int>(c[v]);
}

}  // namespace

TEST(Bp, SingleEdgeEvaluation) {
  const auto b = single_edge_bp();
  EXPECT_EQ(eval_bp(b, Assignment(1, 0)), 0);
  EXPECT_EQ(eval_bp(b, Assignment(1, 1)), 1);
  EXPECT_TRUE(validate_read_once(b));
  const Graph g = fam::path(2);
  const Charge c = Charge::unit(2, 0);
  EXPECT_TRUE(validate_well_structured(b, g, c, infer_annotations(b, g, c)).ok);
}

TEST(Bp, BuilderOnSingleEdgeMatchesHandConstruction) {
  const auto w = build_well_structured_bp(fam::path(2), Charge::unit(2, 0));
  EXPECT_EQ(w.bp.size(), 3);
  const BpNode& s = w.bp.node(w.bp.source);
  EXPECT_EQ(w.bp.node(s.low).vertex, 0);
  EXPECT_EQ(w.bp.node(s.high).vertex, 1);
}

TEST(Bp, RepeatedVariableIsNotReadOnce) {
  BranchingProgram b;
  b.nodes = {{BpNode::Kind::Sink, 0, -1, -1, -1, 0}, {BpNode::Kind::Sink, 1, -1, -1, -1, 1},
             {BpNode::Kind::Decision, 2, 0, 0, 1, -1}, {BpNode::Kind::Decision, 3, 0, 2, 1, -1}};
  b.source = 3;
  EXPECT_FALSE(validate_read_once(b));
  const auto d = validate_well_structured(b, fam::path(2), Charge::unit(2, 0), std::vector<NodeAnnotation>(4));
  EXPECT_FALSE(d.ok);
  EXPECT_EQ(d.condition, 5);
}

TEST(Bp, TriangleBuilderOutput) {
  const Graph g = fixtures::c3();
  const Charge c = Charge::unit(3, 0);
  const auto w = build_well_structured_bp(g, c);
  EXPECT_LE(w.bp.size(), 9);
  EXPECT_TRUE(validate_well_structured(w.bp, g, c, w.annotations).ok);
  for (Model m = 0; m < 8; ++m) EXPECT_TRUE(violates(g, c, m, eval_bp(w.bp, to_assignment(m, 3))));
}

TEST(Bp, WrongSourceChargeRejected) {
  const Graph g = fixtures::c3();
  const Charge c = Charge::unit(3, 0);
  auto w = build_well_structured_bp(g, c);
  w.annotations[static_cast<std::size_t>(w.bp.source)].charge = Charge::unit(3, 1);
  const auto d = validate_well_structured(w.bp, g, c, w.annotations);
  EXPECT_FALSE(d.ok);
  EXPECT_EQ(d.condition, 1);
}

TEST(Bp, WrongSinkVertexRejected) {
  const Graph g = fixtures::c3();
  const Charge c = Charge::unit(3, 0);
  auto w = build_well_structured_bp(g, c);
  for (auto& n : w.bp.nodes)
    if (n.is_sink()) {
      n.vertex = (n.vertex + 1) % 3;
      break;
    }
  EXPECT_FALSE(validate_well_structured(w.bp, g, c, w.annotations).ok);
}

TEST(Bp, BridgeChildrenFollowOddSide) {
  const Graph g = fixtures::rhombus_bridge_triangle();
  const int bridge = *g.edge_between(0, 4);
  const Charge c = Charge::unit(7, 5);
  BuildOptions opt;
  opt.choose_edge = [bridge](const NodeAnnotation& a) {
    if (a.edges.test(static_cast<std::size_t>(bridge))) return bridge;
    return static_cast<int>(a.edges.find_first());
  };
  const auto w = build_well_structured_bp(g, c, opt);
  const BpNode& s = w.bp.node(w.bp.source);
  ASSERT_EQ(s.variable, bridge);
  EXPECT_EQ(members(w.annotations[static_cast<std::size_t>(s.low)].vertices), (std::vector<int>{4, 5, 6}));
  EXPECT_EQ(members(w.annotations[static_cast<std::size_t>(s.high)].vertices), (std::vector<int>{0, 1, 2, 3}));
  EXPECT_EQ(w.annotations[static_cast<std::size_t>(s.high)].charge, Charge::unit(7, 0));
  EXPECT_TRUE(validate_well_structured(w.bp, g, c, w.annotations).ok);
}

TEST(Bp, MemoizedNodesAreSound) {
  for (const auto& [name, g] : fixtures::connected_family()) {
    if (g.edge_count() > 16) continue;
    const Charge c = Charge::unit(g.vertex_count(), 0);
    const auto w = build_well_structured_bp(g, c);
    EXPECT_TRUE(validate_read_once(w.bp)) << name;
    const auto d = validate_well_structured(w.bp, g, c, w.annotations);
    EXPECT_TRUE(d.ok) << name << ": " << d.message;
    EXPECT_EQ(infer_annotations(w.bp, g, c), w.annotations) << name;
    for (Model m = 0; m < (Model{1} << g.edge_count()); ++m)
      ASSERT_TRUE(violates(g, c, m, eval_bp(w.bp, to_assignment(m, g.edge_count())))) << name;
  }
}

TEST(Bp, CycleSizesGrowLinearly) {
  for (int n = 4; n <= 8; ++n) {
    const auto w = build_well_structured_bp(fam::cycle(n), Charge::unit(n, 0));
    EXPECT_LE(w.bp.size(), 6 * n) << n;
  }
}

TEST(Bp, BuilderRejectsSatisfiableOrDisconnected) {
  EXPECT_THROW(build_well_structured_bp(fixtures::c3(), Charge::zero(3)), Error);
  EXPECT_THROW(build_well_structured_bp(fixtures::two_disjoint_edges(), Charge::unit(4, 0)), Error);
}

TEST(Bp, CycleDetected) {
  BranchingProgram b;
  b.nodes = {{BpNode::Kind::Decision, 0, 0, 1, 1, -1}, {BpNode::Kind::Decision, 1, 1, 0, 0, -1}};
  b.source = 0;
  EXPECT_THROW(topological_order(b), Error);
  EXPECT_FALSE(validate_read_once(b));
}
