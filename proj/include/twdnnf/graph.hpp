#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <queue>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "twdnnf/bits.hpp"

namespace twdnnf {

struct Edge {
  int u = 0;
  int v = 0;

  int other(int w) const { return w == u ? v : u; }
  bool touches(int w) const { return w == u || w == v; }
  friend bool operator==(const Edge&, const Edge&) = default;
};

struct Incidence {
  int neighbor;
  int edge;
};

/// Simple undirected graph with dense vertex ids 0..n-1 and dense edge ids
/// 0..m-1 in insertion order. Edge ids double as Tseitin variable ids.
class Graph {
 public:
  Graph() = default;

  Graph(int vertex_count, std::vector<Edge> edges) : n_(vertex_count), edges_(std::move(edges)) {
    if (n_ <= 0) throw Error("graph needs at least one vertex");
    adjacency_.assign(static_cast<std::size_t>(n_), {});
    for (int id = 0; id < static_cast<int>(edges_.size()); ++id) {
      const Edge& e = edges_[static_cast<std::size_t>(id)];
      if (e.u < 0 || e.u >= n_ || e.v < 0 || e.v >= n_)
        throw Error("edge " + std::to_string(id) + " has an endpoint out of range");
      if (e.u == e.v) throw Error("edge " + std::to_string(id) + " is a loop");
      for (const Incidence& inc : adjacency_[static_cast<std::size_t>(e.u)])
        if (inc.neighbor == e.v) throw Error("edge " + std::to_string(id) + " is a parallel edge");
      adjacency_[static_cast<std::size_t>(e.u)].push_back({e.v, id});
      adjacency_[static_cast<std::size_t>(e.v)].push_back({e.u, id});
    }
  }

  int vertex_count() const { return n_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }

  const Edge& edge(int id) const { return edges_.at(static_cast<std::size_t>(id)); }
  std::span<const Edge> edges() const { return edges_; }
  std::span<const Incidence> incident(int v) const { return adjacency_.at(static_cast<std::size_t>(v)); }

  int degree(int v) const { return static_cast<int>(incident(v).size()); }

  int max_degree() const {
    int d = 0;
    for (const auto& adj : adjacency_) d = std::max(d, static_cast<int>(adj.size()));
    return d;
  }

  std::optional<int> edge_between(int u, int v) const {
    for (const Incidence& inc : incident(u))
      if (inc.neighbor == v) return inc.edge;
    return std::nullopt;
  }

  bool adjacent(int u, int v) const { return edge_between(u, v).has_value(); }

  std::vector<int> neighbors(int v) const {
    std::vector<int> out;
    for (const Incidence& inc : incident(v)) out.push_back(inc.neighbor);
    std::sort(out.begin(), out.end());
    return out;
  }

  Bitset all_vertices() const { return Bitset(static_cast<std::size_t>(n_)).set(); }
  Bitset all_edges() const { return Bitset(edges_.size()).set(); }

  friend bool operator==(const Graph& a, const Graph& b) { return a.n_ == b.n_ && a.edges_ == b.edges_; }

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<Incidence>> adjacency_;
};

/// Vertices reachable from `start` using only vertices in `vertices` and edges in `edges`.
inline Bitset reachable(const Graph& g, const Bitset& vertices, const Bitset& edges, int start) {
  Bitset seen(static_cast<std::size_t>(g.vertex_count()));
  std::vector<int> stack{start};
  seen.set(static_cast<std::size_t>(start));
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    for (const Incidence& inc : g.incident(v)) {
      const auto w = static_cast<std::size_t>(inc.neighbor);
      if (!edges.test(static_cast<std::size_t>(inc.edge)) || !vertices.test(w) || seen.test(w)) continue;
      seen.set(w);
      stack.push_back(inc.neighbor);
    }
  }
  return seen;
}

/// Connected components of the subgraph (vertices, edges), each as a sorted
/// vertex list; components are ordered by their smallest vertex.
inline std::vector<std::vector<int>> connected_components(const Graph& g, const Bitset& vertices, const Bitset& edges) {
  std::vector<std::vector<int>> out;
  Bitset done(static_cast<std::size_t>(g.vertex_count()));
  for (auto v = vertices.find_first(); v != Bitset::npos; v = vertices.find_next(v)) {
    if (done.test(v)) continue;
    const Bitset comp = reachable(g, vertices, edges, static_cast<int>(v));
    done |= comp;
    out.push_back(members(comp));
  }
  return out;
}

inline std::vector<std::vector<int>> connected_components(const Graph& g) {
  return connected_components(g, g.all_vertices(), g.all_edges());
}

inline bool is_connected(const Graph& g) { return connected_components(g).size() == 1; }

/// Edges of `edges` with both endpoints in `vertices`.
inline Bitset edges_within(const Graph& g, const Bitset& vertices, const Bitset& edges) {
  Bitset out(static_cast<std::size_t>(g.edge_count()));
  for (auto e = edges.find_first(); e != Bitset::npos; e = edges.find_next(e)) {
    const Edge& ed = g.edge(static_cast<int>(e));
    if (vertices.test(static_cast<std::size_t>(ed.u)) && vertices.test(static_cast<std::size_t>(ed.v))) out.set(e);
  }
  return out;
}

/// Graph induced on `vertices` (kept in ascending order), with the map new id -> old id.
struct InducedGraph {
  Graph graph;
  std::vector<int> origin;
};

/// Optional `clique` vertices are made pairwise adjacent.
inline InducedGraph induced_subgraph(const Graph& g, const std::vector<int>& vertices, const std::vector<int>& clique = {}) {
  std::vector<int> sorted = vertices;
  std::sort(sorted.begin(), sorted.end());
  std::vector<int> local(static_cast<std::size_t>(g.vertex_count()), -1);
  for (std::size_t i = 0; i < sorted.size(); ++i) local[static_cast<std::size_t>(sorted[i])] = static_cast<int>(i);
  std::vector<Edge> edges;
  for (const Edge& e : g.edges()) {
    const int a = local[static_cast<std::size_t>(e.u)];
    const int b = local[static_cast<std::size_t>(e.v)];
    if (a >= 0 && b >= 0) edges.push_back({a, b});
  }
  for (std::size_t i = 0; i < clique.size(); ++i)
    for (std::size_t j = i + 1; j < clique.size(); ++j) {
      const int a = local[static_cast<std::size_t>(clique[i])];
      const int b = local[static_cast<std::size_t>(clique[j])];
      if (a < 0 || b < 0) throw Error("clique vertex outside the induced set");
      if (!g.adjacent(clique[i], clique[j])) edges.push_back({std::min(a, b), std::max(a, b)});
    }
  return {Graph(static_cast<int>(sorted.size()), std::move(edges)), sorted};
}

/// G minus the vertices in `removed`; true iff what remains is non-empty and connected.
inline bool connected_without(const Graph& g, const std::vector<int>& removed) {
  Bitset keep = g.all_vertices();
  for (int v : removed) keep.reset(static_cast<std::size_t>(v));
  if (keep.none()) return false;
  return reachable(g, keep, g.all_edges(), static_cast<int>(keep.find_first())).count() == keep.count();
}

inline bool is_3_connected(const Graph& g) {
  const int n = g.vertex_count();
  if (n < 4) return false;
  if (!connected_without(g, {})) return false;
  for (int a = 0; a < n; ++a) {
    if (!connected_without(g, {a})) return false;
    for (int b = a + 1; b < n; ++b)
      if (!connected_without(g, {a, b})) return false;
  }
  return true;
}

inline bool is_independent(const Graph& g, const std::vector<int>& vertices) {
  for (std::size_t i = 0; i < vertices.size(); ++i)
    for (std::size_t j = i + 1; j < vertices.size(); ++j)
      if (vertices[i] == vertices[j] || g.adjacent(vertices[i], vertices[j])) return false;
  return true;
}

/// Greedy by ascending id: keeps a candidate when none of its neighbours was kept.
/// Guarantees at least ceil(|candidates| / (max degree + 1)) vertices.
inline std::vector<int> greedy_independent_set(const Graph& g, std::vector<int> candidates) {
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  std::vector<int> chosen;
  Bitset blocked(static_cast<std::size_t>(g.vertex_count()));
  for (int v : candidates) {
    if (blocked.test(static_cast<std::size_t>(v))) continue;
    chosen.push_back(v);
    for (const Incidence& inc : g.incident(v)) blocked.set(static_cast<std::size_t>(inc.neighbor));
  }
  return chosen;
}

// ---------------------------------------------------------------------------
// Vertex splitting

/// Replace `vertex` by two copies, the first adjacent to `first`, the second to `second`.
struct SplitRequest {
  int vertex = -1;
  std::vector<int> first;
  std::vector<int> second;
};

struct SplitResult {
  Graph graph;
  int first_copy = -1;   // keeps the id of the split vertex
  int second_copy = -1;  // the new vertex id n
  std::vector<int> edge_map;  // old edge id -> new edge id
};

inline void check_split_request(const Graph& g, const SplitRequest& r) {
  if (r.vertex < 0 || r.vertex >= g.vertex_count()) throw Error("split vertex out of range");
  if (r.first.empty() || r.second.empty()) throw Error("split partition is not proper: empty side");
  std::vector<int> all = r.first;
  all.insert(all.end(), r.second.begin(), r.second.end());
  std::sort(all.begin(), all.end());
  if (std::adjacent_find(all.begin(), all.end()) != all.end()) throw Error("split sides overlap");
  if (all != g.neighbors(r.vertex)) throw Error("split sides do not partition the neighbourhood");
}

inline SplitResult split_vertex(const Graph& g, const SplitRequest& r) {
  check_split_request(g, r);
  const int copy = g.vertex_count();
  std::vector<Edge> edges(g.edges().begin(), g.edges().end());
  for (int u : r.second) {
    const int id = *g.edge_between(r.vertex, u);
    Edge& e = edges[static_cast<std::size_t>(id)];
    if (e.u == r.vertex) e.u = copy; else e.v = copy;
  }
  SplitResult out{Graph(copy + 1, std::move(edges)), r.vertex, copy, {}};
  out.edge_map.resize(static_cast<std::size_t>(g.edge_count()));
  std::iota(out.edge_map.begin(), out.edge_map.end(), 0);
  return out;
}

/// The split request at `v` induced by an edge partition: first side = neighbours via `side` edges.
inline SplitRequest split_along(const Graph& g, int v, const Bitset& side) {
  SplitRequest r{v, {}, {}};
  for (const Incidence& inc : g.incident(v))
    (side.test(static_cast<std::size_t>(inc.edge)) ? r.first : r.second).push_back(inc.neighbor);
  std::sort(r.first.begin(), r.first.end());
  std::sort(r.second.begin(), r.second.end());
  return r;
}

// ---------------------------------------------------------------------------
// Hashing

/// FNV-1a over the canonical edge list; stable across runs and platforms.
inline std::uint64_t graph_hash(const Graph& g) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](std::uint64_t x) {
    for (int i = 0; i < 8; ++i) {
      h ^= (x >> (8 * i)) & 0xFFU;
      h *= 0x100000001b3ULL;
    }
  };
  mix(static_cast<std::uint64_t>(g.vertex_count()));
  mix(static_cast<std::uint64_t>(g.edge_count()));
  for (const Edge& e : g.edges()) {
    mix(static_cast<std::uint64_t>(e.u));
    mix(static_cast<std::uint64_t>(e.v));
  }
  return h;
}

// ---------------------------------------------------------------------------
// Graph families. Edges are listed in lexicographic order of (smaller, larger) endpoint.

namespace families {

inline Graph from_pairs(int n, std::vector<std::pair<int, int>> pairs) {
  for (auto& [a, b] : pairs)
    if (a > b) std::swap(a, b);
  std::sort(pairs.begin(), pairs.end());
  std::vector<Edge> edges;
  for (auto [a, b] : pairs) edges.push_back({a, b});
  return Graph(n, std::move(edges));
}

inline Graph path(int n) {
  if (n < 1) throw Error("path needs n >= 1");
  std::vector<std::pair<int, int>> p;
  for (int i = 0; i + 1 < n; ++i) p.emplace_back(i, i + 1);
  return from_pairs(n, p);
}

inline Graph cycle(int n) {
  if (n < 3) throw Error("cycle needs n >= 3");
  std::vector<std::pair<int, int>> p;
  for (int i = 0; i < n; ++i) p.emplace_back(i, (i + 1) % n);
  return from_pairs(n, p);
}

inline Graph complete(int n) {
  if (n < 1) throw Error("complete graph needs n >= 1");
  std::vector<std::pair<int, int>> p;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) p.emplace_back(i, j);
  return from_pairs(n, p);
}

inline Graph grid(int rows, int cols) {
  if (rows < 1 || cols < 1) throw Error("grid needs positive dimensions");
  std::vector<std::pair<int, int>> p;
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      const int v = r * cols + c;
      if (c + 1 < cols) p.emplace_back(v, v + 1);
      if (r + 1 < rows) p.emplace_back(v, v + cols);
    }
  return from_pairs(rows * cols, p);
}

/// Hub 0 joined to the rim cycle 1..n.
inline Graph wheel(int n) {
  if (n < 3) throw Error("wheel needs a rim of at least 3 vertices");
  std::vector<std::pair<int, int>> p;
  for (int i = 1; i <= n; ++i) {
    p.emplace_back(0, i);
    p.emplace_back(i, i % n + 1);
  }
  return from_pairs(n + 1, p);
}

inline Graph cube(int d) {
  if (d < 1 || d > 10) throw Error("cube dimension must be in 1..10");
  const int n = 1 << d;
  std::vector<std::pair<int, int>> p;
  for (int v = 0; v < n; ++v)
    for (int b = 0; b < d; ++b)
      if (!((v >> b) & 1)) p.emplace_back(v, v | (1 << b));
  return from_pairs(n, p);
}

/// Uniform pairing model with rejection of loops and parallel edges.
/// Fisher-Yates over raw mt19937_64 output keeps the result identical across standard libraries.
inline Graph random_regular(int n, int d, std::uint64_t seed) {
  if (n < 1 || d < 0 || d >= n || (n * d) % 2 != 0) throw Error("random-regular needs 0 <= d < n and n*d even");
  std::mt19937_64 rng(seed);
  for (int attempt = 0; attempt < 10000; ++attempt) {
    std::vector<int> points;
    for (int v = 0; v < n; ++v)
      for (int k = 0; k < d; ++k) points.push_back(v);
    for (std::size_t i = points.size(); i > 1; --i) {
      const auto j = static_cast<std::size_t>(rng() % i);
      std::swap(points[i - 1], points[j]);
    }
    std::vector<std::pair<int, int>> p;
    bool ok = true;
    for (std::size_t i = 0; i < points.size() && ok; i += 2) {
      int a = points[i], b = points[i + 1];
      if (a == b) ok = false;
      if (a > b) std::swap(a, b);
      p.emplace_back(a, b);
    }
    if (!ok) continue;
    std::sort(p.begin(), p.end());
    if (std::adjacent_find(p.begin(), p.end()) != p.end()) continue;
    return from_pairs(n, p);
  }
  throw Error("random-regular: no simple pairing found");
}

}  // namespace families

}  // namespace twdnnf
