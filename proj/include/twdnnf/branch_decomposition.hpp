#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "twdnnf/graph.hpp"
#include "twdnnf/treewidth.hpp"

namespace twdnnf {

/// Rooted binary tree whose leaves carry the edge ids of a graph. Because the
/// variables of a Tseitin formula are edges, the same tree is also a v-tree.
class BranchDecomposition {
 public:
  struct Node {
    int left = -1;
    int right = -1;
    int parent = -1;
    int edge = -1;  // leaf label, -1 on internal nodes

    bool is_leaf() const { return left < 0; }
  };

  BranchDecomposition() = default;

  int add_leaf(int edge) {
    nodes_.push_back({-1, -1, -1, edge});
    return static_cast<int>(nodes_.size()) - 1;
  }

  int add_internal(int left, int right) {
    nodes_.push_back({left, right, -1, -1});
    const int id = static_cast<int>(nodes_.size()) - 1;
    nodes_.at(static_cast<std::size_t>(left)).parent = id;
    nodes_.at(static_cast<std::size_t>(right)).parent = id;
    return id;
  }

  void set_root(int root) { root_ = root; }

  int root() const { return root_; }
  int size() const { return static_cast<int>(nodes_.size()); }
  const Node& node(int id) const { return nodes_.at(static_cast<std::size_t>(id)); }
  bool empty() const { return nodes_.empty(); }

  int depth(int id) const {
    int d = 0;
    for (int x = id; node(x).parent >= 0; x = node(x).parent) ++d;
    return d;
  }

  /// Edge ids at the leaves below `id`.
  Bitset edges_below(int id, int edge_count) const {
    Bitset out(static_cast<std::size_t>(edge_count));
    std::vector<int> stack{id};
    while (!stack.empty()) {
      const Node& nd = node(stack.back());
      stack.pop_back();
      if (nd.is_leaf()) {
        out.set(static_cast<std::size_t>(nd.edge));
      } else {
        stack.push_back(nd.left);
        stack.push_back(nd.right);
      }
    }
    return out;
  }

  /// Leaf labels in left-to-right order.
  std::vector<int> leaf_order() const {
    std::vector<int> out;
    if (root_ < 0) return out;
    std::vector<int> stack{root_};
    while (!stack.empty()) {
      const Node& nd = node(stack.back());
      stack.pop_back();
      if (nd.is_leaf()) {
        out.push_back(nd.edge);
      } else {
        stack.push_back(nd.right);
        stack.push_back(nd.left);
      }
    }
    return out;
  }

  /// Throws unless this is a binary tree whose leaves biject with E(g).
  void validate(const Graph& g) const {
    if (g.edge_count() == 0) {
      if (!nodes_.empty()) throw Error("branch decomposition of an edgeless graph must be empty");
      return;
    }
    if (root_ < 0 || root_ >= size() || node(root_).parent != -1) throw Error("branch decomposition has no valid root");
    std::vector<int> seen_edge(static_cast<std::size_t>(g.edge_count()), 0);
    std::vector<int> visited(nodes_.size(), 0);
    std::vector<int> stack{root_};
    while (!stack.empty()) {
      const int id = stack.back();
      stack.pop_back();
      if (visited[static_cast<std::size_t>(id)]++) throw Error("branch decomposition is not a tree");
      const Node& nd = node(id);
      if (nd.is_leaf()) {
        if (nd.right >= 0) throw Error("node with a single child");
        if (nd.edge < 0 || nd.edge >= g.edge_count()) throw Error("leaf label out of range");
        if (seen_edge[static_cast<std::size_t>(nd.edge)]++) throw Error("edge labels two leaves");
      } else {
        if (nd.right < 0 || nd.edge >= 0) throw Error("internal node must have two children and no label");
        stack.push_back(nd.left);
        stack.push_back(nd.right);
      }
    }
    if (std::count(visited.begin(), visited.end(), 1) != size()) throw Error("unreachable decomposition nodes");
    if (std::count(seen_edge.begin(), seen_edge.end(), 1) != g.edge_count()) throw Error("leaves miss an edge");
  }

 private:
  std::vector<Node> nodes_;
  int root_ = -1;
};

/// The edge partition induced by the tree edge above `node`.
struct Cut {
  int node = -1;
  Bitset side;   // E1: edges below the node
  Bitset other;  // E2
  std::vector<int> boundary;

  int order() const { return static_cast<int>(boundary.size()); }
};

/// Vertices incident to an edge of `side` and to an edge outside it.
inline std::vector<int> cut_boundary(const Graph& g, const Bitset& side) {
  std::vector<int> out;
  for (int v = 0; v < g.vertex_count(); ++v) {
    bool in = false, out_side = false;
    for (const Incidence& inc : g.incident(v)) (side.test(static_cast<std::size_t>(inc.edge)) ? in : out_side) = true;
    if (in && out_side) out.push_back(v);
  }
  return out;
}

inline Cut make_cut(const BranchDecomposition& t, const Graph& g, int node) {
  Cut c;
  c.node = node;
  c.side = t.edges_below(node, g.edge_count());
  c.other = ~c.side;
  c.boundary = cut_boundary(g, c.side);
  return c;
}

/// One cut per non-root node.
inline std::vector<Cut> all_cuts(const BranchDecomposition& t, const Graph& g) {
  std::vector<Cut> out;
  for (int id = 0; id < t.size(); ++id)
    if (id != t.root()) out.push_back(make_cut(t, g, id));
  return out;
}

inline int decomposition_width(const BranchDecomposition& t, const Graph& g) {
  int w = 0;
  for (const Cut& c : all_cuts(t, g)) w = std::max(w, c.order());
  return w;
}

/// Cut of maximum order; ties go to the larger side below the node, then the smallest node id.
inline std::optional<Cut> max_order_cut(const BranchDecomposition& t, const Graph& g) {
  std::optional<Cut> best;
  for (Cut& c : all_cuts(t, g)) {
    if (!best || c.order() > best->order() ||
        (c.order() == best->order() && c.side.count() > best->side.count()))
      best = std::move(c);
  }
  return best;
}

namespace detail {

class DecompositionBuilder {
 public:
  explicit DecompositionBuilder(const Graph& g) : g_(g) {}

  int order_of(const Bitset& part) const { return static_cast<int>(cut_boundary(g_, part).size()); }

  std::pair<Bitset, Bitset> bipartition(const Bitset& edges) const {
    const auto list = members(edges);
    const std::size_t target = list.size() / 2;
    std::pair<Bitset, Bitset> best;
    std::pair<int, int> best_cost{1 << 30, 1 << 30};
    const std::size_t seeds = std::min<std::size_t>(list.size(), 8);
    for (std::size_t s = 0; s < seeds; ++s) {
      const int seed = list[s * list.size() / seeds];
      Bitset first(edges.size());
      first.set(static_cast<std::size_t>(seed));
      while (first.count() < target) {
        int pick = -1;
        std::pair<int, int> pick_cost{1 << 30, 1 << 30};
        for (int e : list) {
          if (first.test(static_cast<std::size_t>(e))) continue;
          Bitset trial = first;
          trial.set(static_cast<std::size_t>(e));
          const Edge& ed = g_.edge(e);
          int touching = 0;
          for (int f : members(first)) touching += g_.edge(f).touches(ed.u) || g_.edge(f).touches(ed.v);
          const std::pair<int, int> cost{order_of(trial), -touching};
          if (cost < pick_cost) {
            pick_cost = cost;
            pick = e;
          }
        }
        first.set(static_cast<std::size_t>(pick));
      }
      Bitset second = edges & ~first;
      refine(first, second);
      const auto cost = split_cost(first, second);
      if (cost < best_cost) {
        best_cost = cost;
        best = {first, second};
      }
    }
    return best;
  }

  int build(const Bitset& edges, BranchDecomposition& t) const {
    if (edges.count() == 1) return t.add_leaf(static_cast<int>(edges.find_first()));
    auto [first, second] = bipartition(edges);
    const int l = build(first, t);
    const int r = build(second, t);
    return t.add_internal(l, r);
  }

 private:
  std::pair<int, int> split_cost(const Bitset& a, const Bitset& b) const {
    const int oa = order_of(a), ob = order_of(b);
    return {std::max(oa, ob), oa + ob};
  }

  // Pairwise swaps between the halves while they lower the cost.
  void refine(Bitset& a, Bitset& b) const {
    for (int pass = 0; pass < 8; ++pass) {
      bool improved = false;
      auto cost = split_cost(a, b);
      for (int x : members(a)) {
        for (int y : members(b)) {
          Bitset na = a, nb = b;
          na.reset(static_cast<std::size_t>(x));
          na.set(static_cast<std::size_t>(y));
          nb.reset(static_cast<std::size_t>(y));
          nb.set(static_cast<std::size_t>(x));
          const auto c = split_cost(na, nb);
          if (c < cost) {
            a = std::move(na);
            b = std::move(nb);
            cost = c;
            improved = true;
            break;
          }
        }
        if (improved) break;
      }
      if (!improved) return;
    }
  }

  const Graph& g_;
};

}  // namespace detail

/// Recursive balanced edge bipartition (greedy growth from a few deterministic
/// seeds, then pairwise-swap refinement).
inline BranchDecomposition heuristic_branch_decomposition(const Graph& g) {
  BranchDecomposition t;
  if (g.edge_count() == 0) return t;
  detail::DecompositionBuilder builder(g);
  t.set_root(builder.build(g.all_edges(), t));
  return t;
}

/// Calls `visit` on every rooted branch decomposition of g, identifying trees
/// that differ only by swapping the two children of a node. Exponential; meant
/// for graphs with a handful of edges.
inline void for_each_branch_decomposition(const Graph& g, const std::function<void(const BranchDecomposition&)>& visit) {
  const int m = g.edge_count();
  if (m == 0) return;
  if (m > 8) throw Error("for_each_branch_decomposition: too many edges to enumerate");
  // Internal nodes as child pairs; a negative reference -1-e is the leaf of edge e.
  // Every tree on edges 0..k arises exactly once by hanging leaf k above some
  // node of a tree on edges 0..k-1.
  std::vector<std::pair<int, int>> internal;
  std::function<void(int, int)> grow = [&](int root, int next) {
    if (next == m) {
      BranchDecomposition t;
      std::function<int(int)> emit = [&](int ref) -> int {
        if (ref < 0) return t.add_leaf(-1 - ref);
        const auto [l, r] = internal[static_cast<std::size_t>(ref)];
        const int a = emit(l);
        const int b = emit(r);
        return t.add_internal(a, b);
      };
      t.set_root(emit(root));
      visit(t);
      return;
    }
    const int leaf = -1 - next;
    const int fresh = static_cast<int>(internal.size());
    internal.emplace_back(root, leaf);
    grow(fresh, next + 1);
    for (int i = 0; i < fresh; ++i) {
      for (int side = 0; side < 2; ++side) {
        const int old = side == 0 ? internal[static_cast<std::size_t>(i)].first : internal[static_cast<std::size_t>(i)].second;
        internal[static_cast<std::size_t>(fresh)] = {old, leaf};
        (side == 0 ? internal[static_cast<std::size_t>(i)].first : internal[static_cast<std::size_t>(i)].second) = fresh;
        grow(root, next + 1);
        (side == 0 ? internal[static_cast<std::size_t>(i)].first : internal[static_cast<std::size_t>(i)].second) = old;
      }
    }
    internal.pop_back();
  };
  grow(-1, 1);
}

/// Exact branchwidth by enumeration (tiny graphs only).
inline int branchwidth_by_enumeration(const Graph& g) {
  int best = 1 << 30;
  if (g.edge_count() == 0) return 0;
  for_each_branch_decomposition(g, [&](const BranchDecomposition& t) { best = std::min(best, decomposition_width(t, g)); });
  return best;
}

struct BranchwidthBounds {
  int lower = 0;
  int upper = 0;
  TreewidthEstimate treewidth;
};

/// lower = ceil(2 tw / 3) (valid whenever bw >= 2), upper = width of the
/// heuristic decomposition; width <= 1 is reported as exact.
inline BranchwidthBounds branchwidth_bounds(const Graph& g) {
  BranchwidthBounds b;
  b.treewidth = estimate_treewidth(g);
  const auto t = heuristic_branch_decomposition(g);
  b.upper = t.empty() ? 0 : decomposition_width(t, g);
  if (b.upper <= 1) {
    b.lower = b.upper;
    return b;
  }
  b.lower = std::min(b.upper, (2 * b.treewidth.lower + 2) / 3);
  return b;
}

}  // namespace twdnnf
