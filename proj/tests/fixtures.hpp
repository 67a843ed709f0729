#pragma once

#include <algorithm>
#include <functional>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "twdnnf/twdnnf.hpp"

namespace fixtures {

using twdnnf::Graph;
namespace fam = twdnnf::families;

// v1, v2, v3 are vertices 0, 1, 2; edges e12 = 0, e13 = 1, e23 = 2.
inline Graph c3() { return fam::cycle(3); }

// Two triangles sharing vertex 0.
inline Graph bowtie() { return fam::from_pairs(5, {{0, 1}, {0, 2}, {1, 2}, {0, 3}, {0, 4}, {3, 4}}); }

// K4 on {0,1,2,3} and K4 on {0,1,4,5} sharing the edge 01.
inline Graph two_k4_shared_edge() {
  return fam::from_pairs(6, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}, {0, 4}, {0, 5}, {1, 4}, {1, 5}, {4, 5}});
}

// K6 minus the perfect matching 01, 23, 45.
inline Graph octahedron() {
  std::vector<std::pair<int, int>> pairs;
  for (int a = 0; a < 6; ++a)
    for (int b = a + 1; b < 6; ++b)
      if (!(a % 2 == 0 && b == a + 1)) pairs.push_back({a, b});
  return fam::from_pairs(6, pairs);
}

// K4 with a pendant path 3-4-5.
inline Graph k4_pendant_path() { return fam::from_pairs(6, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}, {3, 4}, {4, 5}}); }

inline Graph star3() { return fam::from_pairs(4, {{0, 1}, {0, 2}, {0, 3}}); }

inline Graph two_disjoint_edges() { return fam::from_pairs(4, {{0, 1}, {2, 3}}); }

// Rhombus 0-1-2-3 with diagonal 1-3, bridge 0-4, triangle 4-5-6.
inline Graph rhombus_bridge_triangle() {
  return fam::from_pairs(7, {{0, 1}, {1, 2}, {2, 3}, {0, 3}, {1, 3}, {0, 4}, {4, 5}, {5, 6}, {4, 6}});
}

// K4 and a triangle joined through a path of length 2 (cut vertices 3 and 4).
inline Graph k4_path_triangle() {
  return fam::from_pairs(8, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {5, 7}, {6, 7}});
}

// K5 with an extra path 0-5-6-1.
inline Graph k5_with_ear() {
  std::vector<std::pair<int, int>> pairs;
  for (int a = 0; a < 5; ++a)
    for (int b = a + 1; b < 5; ++b) pairs.push_back({a, b});
  pairs.push_back({0, 5});
  pairs.push_back({5, 6});
  pairs.push_back({1, 6});
  return fam::from_pairs(7, pairs);
}

struct Named {
  std::string name;
  Graph graph;
};

/// Connected desk-scale family used across property tests.
inline std::vector<Named> connected_family() {
  return {
      {"P2", fam::path(2)},   {"P3", fam::path(3)},    {"P5", fam::path(5)},     {"C3", fam::cycle(3)},
      {"C4", fam::cycle(4)},  {"C6", fam::cycle(6)},   {"K4", fam::complete(4)}, {"K5", fam::complete(5)},
      {"W4", fam::wheel(4)},  {"W5", fam::wheel(5)},   {"grid2x3", fam::grid(2, 3)}, {"grid3x3", fam::grid(3, 3)},
      {"Q3", fam::cube(3)},   {"bowtie", bowtie()},    {"twoK4", two_k4_shared_edge()}, {"octahedron", octahedron()},
      {"K4+path", k4_pendant_path()}, {"star3", star3()}, {"rhombus", rhombus_bridge_triangle()},
  };
}

inline std::vector<Named> three_connected_family() {
  return {{"K4", fam::complete(4)}, {"K5", fam::complete(5)}, {"W4", fam::wheel(4)},
          {"W5", fam::wheel(5)},    {"Q3", fam::cube(3)},     {"octahedron", octahedron()}};
}

// ---------------------------------------------------------------------------
// Independent oracles

/// Treewidth by trying every elimination ordering (n <= 8).
inline int treewidth_by_orderings(const Graph& g) {
  const int n = g.vertex_count();
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  int best = n;
  do {
    std::vector<std::vector<char>> adj(static_cast<std::size_t>(n), std::vector<char>(static_cast<std::size_t>(n), 0));
    for (const auto& e : g.edges()) adj[e.u][e.v] = adj[e.v][e.u] = 1;
    std::vector<char> gone(static_cast<std::size_t>(n), 0);
    int width = 0;
    for (int v : order) {
      std::vector<int> nb;
      for (int w = 0; w < n; ++w)
        if (!gone[w] && adj[v][w]) nb.push_back(w);
      width = std::max(width, static_cast<int>(nb.size()));
      for (int a : nb)
        for (int b : nb)
          if (a != b) adj[a][b] = 1;
      gone[v] = 1;
    }
    best = std::min(best, width);
  } while (std::next_permutation(order.begin(), order.end()));
  return best;
}

/// Number of assignments satisfying every parity constraint, by direct evaluation.
inline std::uint64_t count_tseitin_models(const Graph& g, const std::vector<int>& charge) {
  std::uint64_t count = 0;
  const int m = g.edge_count();
  for (std::uint64_t a = 0; a < (std::uint64_t{1} << m); ++a) {
    std::vector<int> par(static_cast<std::size_t>(g.vertex_count()), 0);
    for (int e = 0; e < m; ++e)
      if ((a >> e) & 1U) {
        par[g.edge(e).u] ^= 1;
        par[g.edge(e).v] ^= 1;
      }
    count += par == charge ? 1 : 0;
  }
  return count;
}

/// Component count by union-find.
inline int component_count(const Graph& g) {
  std::vector<int> p(static_cast<std::size_t>(g.vertex_count()));
  std::iota(p.begin(), p.end(), 0);
  std::function<int(int)> find = [&](int x) { return p[x] == x ? x : p[x] = find(p[x]); };
  int k = g.vertex_count();
  for (const auto& e : g.edges()) {
    const int a = find(e.u), b = find(e.v);
    if (a != b) {
      p[a] = b;
      --k;
    }
  }
  return k;
}

/// Minimum width over all rooted binary trees on the edges, enumerated by
/// recursively splitting edge sets into two non-empty halves.
inline int branchwidth_by_splitting(const Graph& g) {
  const int m = g.edge_count();
  if (m <= 1) return 0;
  auto order_of = [&](unsigned side) {
    int order = 0;
    for (int v = 0; v < g.vertex_count(); ++v) {
      bool in = false, out = false;
      for (const auto& inc : g.incident(v)) ((side >> inc.edge) & 1U ? in : out) = true;
      order += in && out;
    }
    return order;
  };
  // best[s] = minimal max order of cuts strictly inside a tree on edge set s.
  const unsigned full = (1U << m) - 1;
  std::vector<int> best(full + 1, 1 << 20);
  for (unsigned s = 1; s <= full; ++s) {
    if ((s & (s - 1)) == 0) {
      best[s] = 0;
      continue;
    }
    for (unsigned a = (s - 1) & s; a > 0; a = (a - 1) & s) {
      const unsigned b = s & ~a;
      if (a < b) continue;
      const int w = std::max({best[a], best[b], order_of(a), order_of(b)});
      best[s] = std::min(best[s], w);
    }
  }
  return best[full];
}

/// Every independent set of size 1..max_size, in lexicographic order.
inline std::vector<std::vector<int>> independent_sets(const Graph& g, int max_size) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::function<void(int)> rec = [&](int from) {
    if (!cur.empty()) out.push_back(cur);
    if (static_cast<int>(cur.size()) == max_size) return;
    for (int v = from; v < g.vertex_count(); ++v) {
      bool ok = true;
      for (int u : cur) ok = ok && !g.adjacent(u, v);
      if (!ok) continue;
      cur.push_back(v);
      rec(v + 1);
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

/// A proper split of v's neighbourhood chosen by `pattern`: bit i of the
/// pattern (mod 2^deg - 2, shifted past the empty set) puts neighbour i first.
inline twdnnf::SplitRequest patterned_split(const Graph& g, int v, unsigned pattern) {
  const auto nb = g.neighbors(v);
  const unsigned proper = (1U << nb.size()) - 2;
  const unsigned mask = 1 + pattern % proper;
  twdnnf::SplitRequest r{v, {}, {}};
  for (std::size_t i = 0; i < nb.size(); ++i) ((mask >> i) & 1U ? r.first : r.second).push_back(nb[i]);
  return r;
}

/// Single-point corruptions of a refutation, each breaking a local rule the
/// checker must enforce: out-of-range literal, pivot on an axiom, missing or
/// wrong pivot, altered resolvent, dangling antecedent, repeated id, lost
/// final step.
inline std::vector<twdnnf::ResolutionTrace> mutate_trace(const twdnnf::ResolutionTrace& t, int variables, std::size_t want) {
  using twdnnf::Literal;
  std::vector<twdnnf::ResolutionTrace> out;
  const std::size_t s = t.steps.size();
  for (int kind = 0; kind < 8 && out.size() < want; ++kind) {
    for (std::size_t i = 0; i < s && out.size() < want; ++i) {
      auto m = t;
      auto& step = m.steps[i];
      bool made = true;
      switch (kind) {
        case 0:
          step.clause.push_back({variables, true});
          break;
        case 1:
          if (step.is_axiom()) step.pivot = 0; else made = false;
          break;
        case 2:
          if (!step.is_axiom()) step.pivot.reset(); else made = false;
          break;
        case 3:
          if (!step.is_axiom() && variables > 1) step.pivot = (*step.pivot + 1) % variables; else made = false;
          break;
        case 4:
          if (!step.is_axiom() && !step.clause.empty()) step.clause.pop_back(); else made = false;
          break;
        case 5: {
          made = false;
          if (step.is_axiom()) break;
          for (int v = 0; v < variables && !made; ++v)
            if (!twdnnf::clause_contains(step.clause, {v, true}) && !twdnnf::clause_contains(step.clause, {v, false})) {
              step.clause = twdnnf::make_clause([&] { auto c = step.clause; c.push_back({v, false}); return c; }());
              made = true;
            }
          break;
        }
        case 6:
          if (!step.is_axiom()) step.antecedents[0] = step.id; else made = false;
          break;
        case 7:
          if (i > 0) step.id = m.steps[i - 1].id; else made = false;
          break;
      }
      if (made) out.push_back(std::move(m));
    }
  }
  if (out.size() < want && s > 1) {
    auto m = t;
    m.steps.pop_back();
    out.push_back(std::move(m));
  }
  return out;
}

/// Complete (smooth, constant-free) DNNF for T(g, c) from the compilation pipeline.
inline twdnnf::NnfCircuit complete_dnnf(const Graph& g, const twdnnf::Charge& c) {
  using namespace twdnnf;
  const auto report = pipeline(g, Charge::unit(g.vertex_count(), 0), c, 0);
  return smooth(propagate_constants(report.dnnf));
}

inline std::vector<int> bits_of(const twdnnf::Charge& c) {
  std::vector<int> out;
  for (int v = 0; v < c.size(); ++v) out.push_back(c[v] ? 1 : 0);
  return out;
}

}  // namespace fixtures
