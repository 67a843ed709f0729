#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <queue>
#include <vector>

#include "twdnnf/graph.hpp"
#include "twdnnf/treewidth.hpp"

namespace twdnnf {

struct SafeSeparator {
  std::vector<int> separator;
  std::vector<int> component;  // the kept side V'
  int treewidth = 0;           // tw(G[S + V'] + clique(S))
  bool treewidth_exact = true;
};

namespace detail {

inline std::vector<int> separator_components_choice(const Graph& g, const std::vector<int>& sep, SafeSeparator& out) {
  Bitset rest = g.all_vertices();
  for (int v : sep) rest.reset(static_cast<std::size_t>(v));
  const auto comps = connected_components(g, rest, g.all_edges());
  int best = -1;
  for (const auto& comp : comps) {
    std::vector<int> vertices = comp;
    vertices.insert(vertices.end(), sep.begin(), sep.end());
    const auto h = induced_subgraph(g, vertices, sep);
    const bool exact = h.graph.vertex_count() <= kExactTreewidthCap;
    const int tw = exact ? treewidth_exact(h.graph) : treewidth_min_fill(h.graph);
    if (tw > best) {
      best = tw;
      out.component = comp;
      out.treewidth = tw;
      out.treewidth_exact = exact;
    }
  }
  return out.component;
}

}  // namespace detail

/// Smallest separator of size 1, else of size 2 (lexicographic), with the
/// component that carries the treewidth once the separator is made a clique.
inline std::optional<SafeSeparator> find_safe_separator(const Graph& g) {
  if (!is_connected(g)) throw Error("find_safe_separator: graph is disconnected");
  const int n = g.vertex_count();
  for (int a = 0; a < n && n >= 3; ++a) {
    if (connected_without(g, {a})) continue;
    SafeSeparator s;
    s.separator = {a};
    detail::separator_components_choice(g, s.separator, s);
    return s;
  }
  for (int a = 0; a < n && n >= 4; ++a)
    for (int b = a + 1; b < n; ++b) {
      if (connected_without(g, {a, b})) continue;
      SafeSeparator s;
      s.separator = {a, b};
      detail::separator_components_choice(g, s.separator, s);
      return s;
    }
  return std::nullopt;
}

/// Graph after applying every split in `requests` (vertices must be pairwise
/// non-adjacent). Request i moves its second side to the new vertex n + i.
inline Graph apply_splits(const Graph& g, const std::vector<SplitRequest>& requests) {
  std::vector<Edge> edges(g.edges().begin(), g.edges().end());
  for (std::size_t i = 0; i < requests.size(); ++i) {
    check_split_request(g, requests[i]);
    const int copy = g.vertex_count() + static_cast<int>(i);
    for (int u : requests[i].second) {
      Edge& e = edges[static_cast<std::size_t>(*g.edge_between(requests[i].vertex, u))];
      if (e.u == requests[i].vertex) e.u = copy; else e.v = copy;
    }
  }
  return Graph(g.vertex_count() + static_cast<int>(requests.size()), std::move(edges));
}

/// Subset of at least ceil(k/3) requests whose joint application keeps g
/// connected: split everything, contract the resulting components, keep the
/// links inside a component and the links outside a spanning tree of the
/// contracted multigraph.
inline std::vector<SplitRequest> safe_split_subset(const Graph& g, const std::vector<SplitRequest>& requests) {
  if (!is_3_connected(g)) throw Error("safe_split_subset: graph is not 3-connected");
  std::vector<int> vertices;
  for (const auto& r : requests) vertices.push_back(r.vertex);
  if (!is_independent(g, vertices)) throw Error("safe_split_subset: request vertices are not independent");
  if (requests.empty()) return {};

  const Graph split = apply_splits(g, requests);
  const auto comps = connected_components(split);
  std::vector<int> comp_of(static_cast<std::size_t>(split.vertex_count()), -1);
  for (std::size_t c = 0; c < comps.size(); ++c)
    for (int v : comps[c]) comp_of[static_cast<std::size_t>(v)] = static_cast<int>(c);

  std::vector<int> parent(comps.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&parent](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
    return x;
  };

  std::vector<SplitRequest> out;
  for (std::size_t i = 0; i < requests.size(); ++i) {
    const int a = comp_of[static_cast<std::size_t>(requests[i].vertex)];
    const int b = comp_of[static_cast<std::size_t>(g.vertex_count()) + i];
    if (a == b) {
      out.push_back(requests[i]);  // inner link
      continue;
    }
    const int ra = find(a), rb = find(b);
    if (ra == rb) {
      out.push_back(requests[i]);  // outer link off the spanning tree
    } else {
      parent[static_cast<std::size_t>(ra)] = rb;
    }
  }

  const std::size_t k = requests.size();
  if (out.size() * 3 < k) throw Error("safe_split_subset: fewer than k/3 requests survived");
  if (!is_connected(apply_splits(g, out))) throw Error("safe_split_subset: selected splits disconnect the graph");
  return out;
}

// ---------------------------------------------------------------------------
// 3-connected topological minors

struct MinorStep {
  enum class Kind { DeleteEdge, DeleteVertex, EliminateSubdivision };
  Kind kind = Kind::DeleteEdge;
  int variable = -1;   // deleted edge, or the variable kept by a subdivision elimination
  int vertex = -1;     // deleted vertex, or the eliminated degree-2 vertex (original ids)
  int forgotten = -1;  // variable merged away by a subdivision elimination
};

/// H together with its provenance in the original graph: each vertex of H is
/// an original vertex, each edge of H carries one original edge variable.
struct TopologicalMinor {
  Graph graph;
  std::vector<int> vertex_origin;
  std::vector<int> edge_variable;
  std::vector<MinorStep> trace;
};

namespace detail {

struct MinorWork {
  struct WEdge {
    int u, v, var;
  };
  std::vector<int> origin;  // current vertex -> original vertex
  std::vector<WEdge> edges;

  Graph graph() const {
    std::vector<Edge> out;
    for (const auto& e : edges) out.push_back({e.u, e.v});
    return Graph(static_cast<int>(origin.size()), std::move(out));
  }

  // Keeps only `keep` vertices (which must have no edges to the rest), renumbered ascending.
  void compact(const std::vector<int>& keep) {
    std::vector<int> local(origin.size(), -1);
    std::vector<int> new_origin;
    for (int v : keep) {
      local[static_cast<std::size_t>(v)] = static_cast<int>(new_origin.size());
      new_origin.push_back(origin[static_cast<std::size_t>(v)]);
    }
    for (auto& e : edges) {
      e.u = local[static_cast<std::size_t>(e.u)];
      e.v = local[static_cast<std::size_t>(e.v)];
      if (e.u < 0 || e.v < 0) throw Error("minor reduction left an edge to a deleted vertex");
    }
    origin = std::move(new_origin);
  }
};

inline std::vector<int> bfs_path(const Graph& g, const Bitset& allowed, int from, int to) {
  std::vector<int> prev(static_cast<std::size_t>(g.vertex_count()), -2);
  std::queue<int> q;
  q.push(from);
  prev[static_cast<std::size_t>(from)] = -1;
  while (!q.empty()) {
    const int x = q.front();
    q.pop();
    if (x == to) break;
    auto nb = g.neighbors(x);
    for (int y : nb) {
      if (prev[static_cast<std::size_t>(y)] != -2) continue;
      if (y != to && !allowed.test(static_cast<std::size_t>(y))) continue;
      prev[static_cast<std::size_t>(y)] = x;
      q.push(y);
    }
  }
  if (prev[static_cast<std::size_t>(to)] == -2) throw Error("no path through the component");
  std::vector<int> path;
  for (int x = to; x != -1; x = prev[static_cast<std::size_t>(x)]) path.push_back(x);
  std::reverse(path.begin(), path.end());
  return path;
}

}  // namespace detail

/// Reduces g along safe separators until it is 3-connected. Only edge
/// deletions, isolated-vertex deletions and subdivision eliminations are used,
/// and each is recorded so that a DNNF for T(g,0) can be replayed onto H.
inline TopologicalMinor three_connected_minor(const Graph& g) {
  if (!is_connected(g)) throw Error("three_connected_minor: graph is disconnected");
  const auto tw = estimate_treewidth(g);
  if (tw.upper < 3) throw Error("three_connected_minor: treewidth below 3");

  detail::MinorWork w;
  w.origin.resize(static_cast<std::size_t>(g.vertex_count()));
  std::iota(w.origin.begin(), w.origin.end(), 0);
  for (int id = 0; id < g.edge_count(); ++id) w.edges.push_back({g.edge(id).u, g.edge(id).v, id});

  std::vector<MinorStep> trace;
  for (;;) {
    const Graph h = w.graph();
    if (is_3_connected(h)) break;
    const auto sep = find_safe_separator(h);
    if (!sep) throw Error("three_connected_minor: no separator in a graph that is not 3-connected");

    Bitset keep(static_cast<std::size_t>(h.vertex_count()));
    for (int v : sep->separator) keep.set(static_cast<std::size_t>(v));
    for (int v : sep->component) keep.set(static_cast<std::size_t>(v));

    std::vector<int> path;  // vertices of the path realizing the separator edge, if needed
    if (sep->separator.size() == 2) {
      const int u = sep->separator[0], v = sep->separator[1];
      if (!h.adjacent(u, v)) {
        Bitset others = ~keep;
        path = detail::bfs_path(h, others, u, v);
      }
    }
    Bitset on_path(static_cast<std::size_t>(h.vertex_count()));
    for (int x : path) on_path.set(static_cast<std::size_t>(x));

    std::vector<detail::MinorWork::WEdge> kept;
    for (const auto& e : w.edges) {
      const bool inside = keep.test(static_cast<std::size_t>(e.u)) && keep.test(static_cast<std::size_t>(e.v));
      bool path_edge = false;
      for (std::size_t i = 0; i + 1 < path.size(); ++i)
        path_edge |= (e.u == path[i] && e.v == path[i + 1]) || (e.v == path[i] && e.u == path[i + 1]);
      if (inside || path_edge) {
        kept.push_back(e);
      } else {
        trace.push_back({MinorStep::Kind::DeleteEdge, e.var, -1, -1});
      }
    }
    w.edges = std::move(kept);
    std::vector<int> survivors;
    for (int x = 0; x < h.vertex_count(); ++x) {
      if (keep.test(static_cast<std::size_t>(x)) || on_path.test(static_cast<std::size_t>(x))) {
        survivors.push_back(x);
      } else {
        trace.push_back({MinorStep::Kind::DeleteVertex, -1, w.origin[static_cast<std::size_t>(x)], -1});
      }
    }

    // Contract the path to a single edge u-v carrying the u-side variable.
    for (std::size_t i = 1; i + 1 < path.size(); ++i) {
      const int mid = path[i], next = path[i + 1];
      auto first = std::find_if(w.edges.begin(), w.edges.end(), [&](const auto& e) {
        return (e.u == path[0] && e.v == mid) || (e.v == path[0] && e.u == mid);
      });
      auto second = std::find_if(w.edges.begin(), w.edges.end(), [&](const auto& e) {
        return (e.u == mid && e.v == next) || (e.v == mid && e.u == next);
      });
      trace.push_back({MinorStep::Kind::EliminateSubdivision, first->var, w.origin[static_cast<std::size_t>(mid)], second->var});
      first->u = std::min(path[0], next);
      first->v = std::max(path[0], next);
      w.edges.erase(second);
      survivors.erase(std::find(survivors.begin(), survivors.end(), mid));
    }
    w.compact(survivors);
  }

  TopologicalMinor out{w.graph(), w.origin, {}, std::move(trace)};
  for (const auto& e : w.edges) out.edge_variable.push_back(e.var);
  return out;
}

}  // namespace twdnnf
