#pragma once

#include <algorithm>
#include <cstdlib>
#include <vector>

#include "twdnnf/tseitin.hpp"

namespace twdnnf {

struct Literal {
  int var = 0;
  bool positive = true;

  int dimacs() const { return positive ? var + 1 : -(var + 1); }
  static Literal from_dimacs(int lit) {
    if (lit == 0) throw Error("literal 0 is not a literal");
    return {std::abs(lit) - 1, lit > 0};
  }
  Literal negated() const { return {var, !positive}; }

  friend bool operator==(const Literal&, const Literal&) = default;
  friend bool operator<(const Literal& a, const Literal& b) {
    return a.var != b.var ? a.var < b.var : (!a.positive && b.positive);
  }
};

/// Literal set, kept sorted by (variable, negative first) without duplicates.
using Clause = std::vector<Literal>;

inline Clause make_clause(std::vector<Literal> lits) {
  std::sort(lits.begin(), lits.end());
  lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
  return lits;
}

inline bool is_tautology(const Clause& c) {
  for (std::size_t i = 0; i + 1 < c.size(); ++i)
    if (c[i].var == c[i + 1].var) return true;
  return false;
}

inline bool clause_contains(const Clause& c, Literal l) { return std::binary_search(c.begin(), c.end(), l); }

inline bool clause_satisfied(const Clause& c, Model m) {
  for (const Literal& l : c)
    if ((((m >> l.var) & 1U) != 0) == l.positive) return true;
  return false;
}

struct Cnf {
  int variable_count = 0;
  std::vector<Clause> clauses;

  bool evaluate(Model m) const {
    for (const auto& c : clauses)
      if (!clause_satisfied(c, m)) return false;
    return true;
  }

  ModelSet brute_force_models() const {
    if (variable_count > kBruteForceEdgeCap) throw Error("Cnf::brute_force_models: too many variables");
    ModelSet out;
    for (Model m = 0; m < (Model{1} << variable_count); ++m)
      if (evaluate(m)) out.push_back(m);
    return out;
  }
};

inline constexpr int kDefaultCnfDegreeCap = 8;

/// One clause per odd-offence local assignment at each vertex: 2^{deg-1}
/// clauses of width deg. Vertices in ascending order; within a vertex the
/// clauses are listed from the all-negative one downwards, reading the local
/// assignment as a binary number whose most significant bit is the first
/// incident edge in ascending id order.
inline Cnf to_cnf(const TseitinFormula& t, int max_degree = kDefaultCnfDegreeCap) {
  const Graph& g = t.graph();
  Cnf cnf;
  cnf.variable_count = g.edge_count();
  for (int v = 0; v < g.vertex_count(); ++v) {
    std::vector<int> edges;
    for (const Incidence& inc : g.incident(v))
      if (t.active().test(static_cast<std::size_t>(inc.edge))) edges.push_back(inc.edge);
    std::sort(edges.begin(), edges.end());
    const int d = static_cast<int>(edges.size());
    if (d > max_degree) throw Error("to_cnf: vertex degree " + std::to_string(d) + " exceeds the cap");
    if (d == 0) {
      if (t.charge()[v]) cnf.clauses.push_back({});
      continue;
    }
    for (std::uint32_t local = (1U << d); local-- > 0;) {
      if (std::popcount(local) % 2 == static_cast<int>(t.charge()[v])) continue;
      Clause c;
      for (int i = 0; i < d; ++i) {
        const bool bit = (local >> (d - 1 - i)) & 1U;
        c.push_back({edges[static_cast<std::size_t>(i)], !bit});
      }
      cnf.clauses.push_back(make_clause(std::move(c)));
    }
  }
  return cnf;
}

}  // namespace twdnnf
