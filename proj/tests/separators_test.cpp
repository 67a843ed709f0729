#include <gtest/gtest.h>

#include "fixtures.hpp"

using namespace twdnnf;
namespace fam = twdnnf::families;

TEST(Separators, CutVertexFoundFirst) {
  const auto s = find_safe_separator(fixtures::bowtie());
  ASSERT_TRUE(s.has_value());
  EXPECT_EQ(s->separator, (std::vector<int>{0}));
  EXPECT_EQ(s->treewidth, 2);
}

TEST(Separators, PairSeparatorKeepsTreewidthSide) {
  const auto s = find_safe_separator(fixtures::two_k4_shared_edge());
  ASSERT_TRUE(s.has_value());
  EXPECT_EQ(s->separator, (std::vector<int>{0, 1}));
  EXPECT_EQ(s->treewidth, 3);
  EXPECT_EQ(s->component.size(), 2U);
  EXPECT_FALSE(find_safe_separator(fam::complete(5)).has_value());
  EXPECT_THROW(find_safe_separator(fixtures::two_disjoint_edges()), Error);
}

TEST(Separators, MinorIsThreeConnectedAndKeepsTreewidth) {
  const std::vector<fixtures::Named> composites = {
      {"twoK4", fixtures::two_k4_shared_edge()}, {"K4+path", fixtures::k4_pendant_path()},
      {"K4-path-triangle", fixtures::k4_path_triangle()}, {"K5+ear", fixtures::k5_with_ear()},
      {"grid3x3", fam::grid(3, 3)}, {"K4", fam::complete(4)}};
  for (const auto& [name, g] : composites) {
    const auto m = three_connected_minor(g);
    EXPECT_TRUE(is_3_connected(m.graph)) << name;
    EXPECT_EQ(treewidth_exact(m.graph), fixtures::treewidth_by_orderings(g)) << name;
    EXPECT_EQ(static_cast<int>(m.edge_variable.size()), m.graph.edge_count()) << name;
    EXPECT_EQ(static_cast<int>(m.vertex_origin.size()), m.graph.vertex_count()) << name;
    for (int e = 0; e < m.graph.edge_count(); ++e) {
      const int var = m.edge_variable[static_cast<std::size_t>(e)];
      ASSERT_GE(var, 0);
      ASSERT_LT(var, g.edge_count());
    }
  }
  EXPECT_TRUE(three_connected_minor(fam::complete(4)).trace.empty());
  EXPECT_THROW(three_connected_minor(fam::cycle(5)), Error);
}

TEST(Separators, GridMinorUsesSubdivisionElimination) {
  const auto m = three_connected_minor(fam::grid(3, 3));
  bool eliminated = false;
  for (const auto& s : m.trace) eliminated |= s.kind == MinorStep::Kind::EliminateSubdivision;
  EXPECT_TRUE(eliminated);
}

TEST(Separators, SafeSplitSubsetKeepsConnectivity) {
  for (const auto& [name, g] : fixtures::three_connected_family()) {
    for (const auto& set : fixtures::independent_sets(g, 4)) {
      for (unsigned pattern : {0U, 1U, 5U}) {
        std::vector<SplitRequest> requests;
        for (int v : set) requests.push_back(fixtures::patterned_split(g, v, pattern + static_cast<unsigned>(v)));
        const auto safe = safe_split_subset(g, requests);
        EXPECT_GE(3 * safe.size(), set.size()) << name;
        EXPECT_EQ(fixtures::component_count(apply_splits(g, safe)), 1) << name;
      }
    }
  }
}

TEST(Separators, SafeSplitSubsetRejectsBadInput) {
  const Graph k4 = fam::complete(4);
  EXPECT_THROW(safe_split_subset(k4, {{0, {1}, {2, 3}}, {1, {0}, {2, 3}}}), Error);
  EXPECT_THROW(safe_split_subset(fam::cycle(5), {{0, {1}, {4}}}), Error);
}
