#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "twdnnf/graph.hpp"

namespace twdnnf {

inline constexpr int kExactTreewidthCap = 16;

namespace detail {

inline std::vector<std::uint32_t> adjacency_masks(const Graph& g) {
  std::vector<std::uint32_t> adj(static_cast<std::size_t>(g.vertex_count()), 0);
  for (const Edge& e : g.edges()) {
    adj[static_cast<std::size_t>(e.u)] |= 1U << e.v;
    adj[static_cast<std::size_t>(e.v)] |= 1U << e.u;
  }
  return adj;
}

// |Q(S, v)|: vertices outside S + v reachable from v through inner vertices in S.
inline int q_size(const std::vector<std::uint32_t>& adj, std::uint32_t inner, int v) {
  std::uint32_t reached = 1U << v;
  std::uint32_t frontier = reached;
  std::uint32_t outside = 0;
  while (frontier != 0) {
    std::uint32_t next = 0;
    for (std::uint32_t f = frontier; f != 0; f &= f - 1) next |= adj[static_cast<std::size_t>(std::countr_zero(f))];
    outside |= next & ~inner;
    next &= inner & ~reached;
    reached |= next;
    frontier = next;
  }
  outside &= ~(1U << v);
  return std::popcount(outside);
}

}  // namespace detail

/// Exact treewidth by the subset recurrence
///   TW(S) = min_{v in S} max(TW(S - v), |Q(S - v, v)|),  TW({}) = -inf.
inline int treewidth_exact(const Graph& g) {
  const int n = g.vertex_count();
  if (n > kExactTreewidthCap)
    throw Error("treewidth_exact: " + std::to_string(n) + " vertices exceed the exact cap of " +
                std::to_string(kExactTreewidthCap));
  const auto adj = detail::adjacency_masks(g);
  const std::uint32_t full = (n == 32) ? ~0U : ((1U << n) - 1U);
  std::vector<std::int8_t> tw(static_cast<std::size_t>(full) + 1, 0);
  tw[0] = -1;
  for (std::uint32_t s = 1; s <= full; ++s) {
    int best = std::numeric_limits<int>::max();
    for (std::uint32_t rest = s; rest != 0; rest &= rest - 1) {
      const int v = std::countr_zero(rest);
      const std::uint32_t without = s & ~(1U << v);
      const int sub = tw[without];
      if (sub >= best) continue;
      const int val = std::max(sub, detail::q_size(adj, without, v));
      best = std::min(best, val);
    }
    tw[s] = static_cast<std::int8_t>(best);
  }
  return tw[full];
}

namespace detail {

struct WorkGraph {
  std::vector<std::vector<char>> adj;
  std::vector<char> alive;
  int n = 0;

  explicit WorkGraph(const Graph& g) : n(g.vertex_count()) {
    adj.assign(static_cast<std::size_t>(n), std::vector<char>(static_cast<std::size_t>(n), 0));
    alive.assign(static_cast<std::size_t>(n), 1);
    for (const Edge& e : g.edges()) {
      adj[static_cast<std::size_t>(e.u)][static_cast<std::size_t>(e.v)] = 1;
      adj[static_cast<std::size_t>(e.v)][static_cast<std::size_t>(e.u)] = 1;
    }
  }
  int degree(int v) const {
    int d = 0;
    for (int w = 0; w < n; ++w) d += alive[static_cast<std::size_t>(w)] && adj[static_cast<std::size_t>(v)][static_cast<std::size_t>(w)];
    return d;
  }
  std::vector<int> neighbors(int v) const {
    std::vector<int> out;
    for (int w = 0; w < n; ++w)
      if (alive[static_cast<std::size_t>(w)] && adj[static_cast<std::size_t>(v)][static_cast<std::size_t>(w)]) out.push_back(w);
    return out;
  }
  void remove(int v) { alive[static_cast<std::size_t>(v)] = 0; }
  void connect(int a, int b) {
    adj[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = 1;
    adj[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)] = 1;
  }
};

}  // namespace detail

/// Width of the min-fill elimination ordering (ties by smallest id): an upper bound.
inline int treewidth_min_fill(const Graph& g) {
  detail::WorkGraph w(g);
  int width = 0;
  for (int step = 0; step < w.n; ++step) {
    int best = -1;
    long best_fill = std::numeric_limits<long>::max();
    for (int v = 0; v < w.n; ++v) {
      if (!w.alive[static_cast<std::size_t>(v)]) continue;
      const auto nb = w.neighbors(v);
      long fill = 0;
      for (std::size_t i = 0; i < nb.size(); ++i)
        for (std::size_t j = i + 1; j < nb.size(); ++j)
          fill += !w.adj[static_cast<std::size_t>(nb[i])][static_cast<std::size_t>(nb[j])];
      if (fill < best_fill) {
        best_fill = fill;
        best = v;
      }
    }
    const auto nb = w.neighbors(best);
    width = std::max(width, static_cast<int>(nb.size()));
    for (std::size_t i = 0; i < nb.size(); ++i)
      for (std::size_t j = i + 1; j < nb.size(); ++j) w.connect(nb[i], nb[j]);
    w.remove(best);
  }
  return width;
}

/// Minor-min-width (MMD+ with least-degree contraction): a lower bound.
inline int treewidth_mmd_plus(const Graph& g) {
  detail::WorkGraph w(g);
  int lower = 0;
  int remaining = w.n;
  while (remaining > 1) {
    int v = -1;
    int dv = std::numeric_limits<int>::max();
    for (int x = 0; x < w.n; ++x)
      if (w.alive[static_cast<std::size_t>(x)] && w.degree(x) < dv) {
        dv = w.degree(x);
        v = x;
      }
    lower = std::max(lower, dv);
    const auto nb = w.neighbors(v);
    if (!nb.empty()) {
      int u = nb.front();
      for (int x : nb)
        if (w.degree(x) < w.degree(u)) u = x;
      for (int x : nb)
        if (x != u) w.connect(u, x);
    }
    w.remove(v);
    --remaining;
  }
  return lower;
}

/// Treewidth value together with the oracle that produced it.
struct TreewidthEstimate {
  int lower = 0;
  int upper = 0;
  bool exact = false;

  int value() const { return exact ? lower : upper; }
  std::string provenance() const { return exact ? "exact-dp" : "heuristic"; }
};

inline TreewidthEstimate estimate_treewidth(const Graph& g, int exact_cap = kExactTreewidthCap) {
  if (g.vertex_count() <= std::min(exact_cap, kExactTreewidthCap)) {
    const int tw = treewidth_exact(g);
    return {tw, tw, true};
  }
  const int lo = treewidth_mmd_plus(g);
  const int hi = treewidth_min_fill(g);
  return {lo, hi, lo == hi};
}

}  // namespace twdnnf
