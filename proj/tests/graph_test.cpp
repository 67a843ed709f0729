#include <gtest/gtest.h>

#include "fixtures.hpp"

using namespace twdnnf;
namespace fam = twdnnf::families;

TEST(Graph, RejectsLoopsParallelEdgesAndBadEndpoints) {
  EXPECT_THROW(Graph(3, {{0, 0}}), Error);
  EXPECT_THROW(Graph(3, {{0, 1}, {1, 0}}), Error);
  EXPECT_THROW(Graph(3, {{0, 3}}), Error);
  EXPECT_THROW(Graph(0, {}), Error);
}

TEST(Graph, IncidenceAndDegrees) {
  const Graph g = fixtures::c3();
  EXPECT_EQ(g.edge_count(), 3);
  EXPECT_EQ(g.edge(0).u, 0);
  EXPECT_EQ(g.edge(0).v, 1);
  EXPECT_EQ(g.edge(1).v, 2);
  EXPECT_EQ(g.edge(2).u, 1);
  for (int v = 0; v < 3; ++v) EXPECT_EQ(g.degree(v), 2);
  EXPECT_EQ(*g.edge_between(2, 1), 2);
  EXPECT_FALSE(fam::path(3).edge_between(0, 2).has_value());
  EXPECT_EQ(fam::wheel(5).max_degree(), 5);
}

TEST(Graph, FamiliesHaveExpectedSizes) {
  EXPECT_EQ(fam::path(5).edge_count(), 4);
  EXPECT_EQ(fam::cycle(7).edge_count(), 7);
  EXPECT_EQ(fam::complete(5).edge_count(), 10);
  EXPECT_EQ(fam::grid(3, 3).edge_count(), 12);
  EXPECT_EQ(fam::wheel(4).edge_count(), 8);
  EXPECT_EQ(fam::cube(3).edge_count(), 12);
  EXPECT_EQ(fixtures::octahedron().edge_count(), 12);
  const Graph r = fam::random_regular(10, 3, 7);
  for (int v = 0; v < 10; ++v) EXPECT_EQ(r.degree(v), 3);
  EXPECT_EQ(graph_hash(r), graph_hash(fam::random_regular(10, 3, 7)));
}

TEST(Graph, ComponentsAgreeWithUnionFind) {
  const std::vector<Graph> gs = {fixtures::two_disjoint_edges(), fam::path(4), Graph(5, {{0, 1}, {3, 4}}), fixtures::bowtie()};
  for (const Graph& g : gs) EXPECT_EQ(static_cast<int>(connected_components(g).size()), fixtures::component_count(g));
  const auto comps = connected_components(Graph(5, {{3, 4}, {0, 2}}));
  ASSERT_EQ(comps.size(), 3U);
  EXPECT_EQ(comps[0], (std::vector<int>{0, 2}));
  EXPECT_EQ(comps[1], (std::vector<int>{1}));
}

TEST(Graph, ThreeConnectivity) {
  for (const auto& [name, g] : fixtures::three_connected_family()) EXPECT_TRUE(is_3_connected(g)) << name;
  EXPECT_FALSE(is_3_connected(fam::cycle(5)));
  EXPECT_FALSE(is_3_connected(fixtures::two_k4_shared_edge()));
  EXPECT_FALSE(is_3_connected(fam::grid(3, 3)));
  EXPECT_FALSE(is_3_connected(fam::complete(3)));
}

TEST(Graph, GreedyIndependentSetMeetsDegreeBound) {
  for (const auto& [name, g] : fixtures::connected_family()) {
    const auto all = members(g.all_vertices());
    const auto s = greedy_independent_set(g, all);
    EXPECT_TRUE(is_independent(g, s)) << name;
    EXPECT_GE(static_cast<int>(s.size()) * (g.max_degree() + 1), g.vertex_count()) << name;
  }
}

TEST(Graph, SplitVertexMovesSecondSideToNewVertex) {
  const Graph g = fam::complete(4);
  const auto r = split_vertex(g, {0, {1}, {2, 3}});
  EXPECT_EQ(r.graph.vertex_count(), 5);
  EXPECT_EQ(r.graph.edge_count(), 6);
  EXPECT_EQ(r.graph.degree(0), 1);
  EXPECT_EQ(r.graph.degree(4), 2);
  EXPECT_TRUE(r.graph.adjacent(4, 3));
  EXPECT_THROW(split_vertex(g, {0, {}, {1, 2, 3}}), Error);
  EXPECT_THROW(split_vertex(g, {0, {1, 2}, {2, 3}}), Error);
  EXPECT_THROW(split_vertex(g, {0, {1}, {2}}), Error);
}

TEST(Graph, InducedSubgraphWithClique) {
  const Graph g = fam::path(4);
  const auto h = induced_subgraph(g, {0, 1, 3}, {1, 3});
  EXPECT_EQ(h.graph.vertex_count(), 3);
  EXPECT_EQ(h.graph.edge_count(), 2);
  EXPECT_EQ(h.origin, (std::vector<int>{0, 1, 3}));
}
