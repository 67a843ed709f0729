#include <gtest/gtest.h>

#include "fixtures.hpp"

using namespace twdnnf;
namespace fam = twdnnf::families;

namespace {

Literal pos(int v) { return {v, true}; }
Literal neg(int v) { return {v, false}; }

}  // namespace

TEST(Cnf, DegreeTwoVertexGivesEquality) {
  const Cnf cnf = to_cnf(TseitinFormula(fam::path(3), Charge::zero(3)));
  const Clause a = make_clause({pos(0), neg(1)}), b = make_clause({neg(0), pos(1)});
  ASSERT_EQ(cnf.variable_count, 2);
  EXPECT_NE(std::find(cnf.clauses.begin(), cnf.clauses.end(), a), cnf.clauses.end());
  EXPECT_NE(std::find(cnf.clauses.begin(), cnf.clauses.end(), b), cnf.clauses.end());
}

TEST(Cnf, DegreeThreeVertexForbidsOddAssignments) {
  const Cnf cnf = to_cnf(TseitinFormula(fixtures::star3(), Charge::zero(4)));
  std::vector<Clause> at_center;
  for (const auto& c : cnf.clauses)
    if (c.size() == 3) at_center.push_back(c);
  std::vector<Clause> expected = {make_clause({neg(0), neg(1), neg(2)}), make_clause({neg(0), pos(1), pos(2)}),
                                  make_clause({pos(0), neg(1), pos(2)}), make_clause({pos(0), pos(1), neg(2)})};
  std::sort(at_center.begin(), at_center.end());
  std::sort(expected.begin(), expected.end());
  EXPECT_EQ(at_center, expected);
}

TEST(Cnf, UnsatTriangleHasSixClausesAndNoModels) {
  const Cnf cnf = to_cnf(TseitinFormula(fixtures::c3(), Charge::unit(3, 0)));
  EXPECT_EQ(cnf.clauses.size(), 6U);
  EXPECT_TRUE(cnf.brute_force_models().empty());
}

TEST(Cnf, EquivalentToTseitinOnFamily) {
  for (const auto& [name, g] : fixtures::connected_family()) {
    if (g.edge_count() > 16) continue;
    for (std::uint64_t seed = 0; seed < 2; ++seed)
      for (bool sat : {true, false}) {
        const TseitinFormula t(g, random_charge(g, seed, sat));
        const Cnf cnf = to_cnf(t);
        std::size_t expected_clauses = 0;
        for (int v = 0; v < g.vertex_count(); ++v) expected_clauses += g.degree(v) == 0 ? 0 : pow2(g.degree(v) - 1);
        EXPECT_EQ(cnf.clauses.size(), expected_clauses) << name;
        EXPECT_EQ(cnf.brute_force_models(), t.brute_force_models()) << name;
      }
  }
}

TEST(Cnf, LiteralHelpers) {
  EXPECT_EQ(pos(2).dimacs(), 3);
  EXPECT_EQ(neg(0).dimacs(), -1);
  EXPECT_EQ(Literal::from_dimacs(-4), neg(3));
  EXPECT_THROW(Literal::from_dimacs(0), Error);
  EXPECT_TRUE(is_tautology(make_clause({pos(1), neg(1)})));
  EXPECT_EQ(make_clause({pos(1), neg(0), pos(1)}).size(), 2U);
  EXPECT_TRUE(clause_satisfied(make_clause({neg(0), pos(1)}), 0b10));
  EXPECT_FALSE(clause_satisfied(make_clause({pos(0), neg(1)}), 0b10));
}

TEST(Cnf, RejectsHighDegree) { EXPECT_THROW(to_cnf(TseitinFormula(fam::wheel(9), Charge::zero(10))), Error); }
