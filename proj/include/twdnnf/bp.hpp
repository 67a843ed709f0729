#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "twdnnf/branch_decomposition.hpp"
#include "twdnnf/tseitin.hpp"

namespace twdnnf {

struct BpNode {
  enum class Kind { Decision, Sink };
  Kind kind = Kind::Sink;
  int label = 0;      // external id, preserved by the text format
  int variable = -1;  // decision: edge id
  int low = -1;       // decision: child index for x = 0
  int high = -1;      // decision: child index for x = 1
  int vertex = -1;    // sink: vertex id

  bool is_sink() const { return kind == Kind::Sink; }
  friend bool operator==(const BpNode&, const BpNode&) = default;
};

/// Decision DAG over edge variables whose sinks name vertices.
struct BranchingProgram {
  std::vector<BpNode> nodes;
  int source = -1;

  int size() const { return static_cast<int>(nodes.size()); }
  const BpNode& node(int i) const { return nodes.at(static_cast<std::size_t>(i)); }
  friend bool operator==(const BranchingProgram&, const BranchingProgram&) = default;
};

/// Node indices reachable from the source, children before parents.
/// Throws on dangling references or cycles.
inline std::vector<int> topological_order(const BranchingProgram& b) {
  if (b.source < 0 || b.source >= b.size()) throw Error("branching program has no valid source");
  std::vector<int> state(b.nodes.size(), 0);
  std::vector<int> order;
  std::vector<std::pair<int, int>> stack{{b.source, 0}};
  state[static_cast<std::size_t>(b.source)] = 1;
  while (!stack.empty()) {
    auto& [id, phase] = stack.back();
    const BpNode& n = b.node(id);
    if (n.is_sink() || phase == 2) {
      state[static_cast<std::size_t>(id)] = 2;
      order.push_back(id);
      stack.pop_back();
      continue;
    }
    const int child = phase == 0 ? n.low : n.high;
    ++phase;
    if (child < 0 || child >= b.size()) throw Error("decision node " + std::to_string(n.label) + " has a dangling child");
    const int s = state[static_cast<std::size_t>(child)];
    if (s == 1) throw Error("branching program has a cycle");
    if (s == 0) {
      state[static_cast<std::size_t>(child)] = 1;
      stack.push_back({child, 0});
    }
  }
  return order;
}

inline int eval_bp_from(const BranchingProgram& b, int start, Model a) {
  int id = start;
  for (int steps = 0; !b.node(id).is_sink(); ++steps) {
    if (steps > b.size()) throw Error("eval_bp: cycle");
    const BpNode& n = b.node(id);
    id = ((a >> n.variable) & 1U) ? n.high : n.low;
  }
  return b.node(id).vertex;
}

inline int eval_bp(const BranchingProgram& b, const Assignment& a) {
  int id = b.source;
  for (int steps = 0; !b.node(id).is_sink(); ++steps) {
    if (steps > b.size()) throw Error("eval_bp: cycle");
    const BpNode& n = b.node(id);
    id = a.test(static_cast<std::size_t>(n.variable)) ? n.high : n.low;
  }
  return b.node(id).vertex;
}

/// No source-to-sink path queries a variable twice.
inline bool validate_read_once(const BranchingProgram& b) {
  std::vector<int> order;
  try {
    order = topological_order(b);
  } catch (const Error&) {
    return false;
  }
  int vars = 0;
  for (const auto& n : b.nodes) vars = std::max(vars, n.variable + 1);
  std::vector<Bitset> above(b.nodes.size(), Bitset(static_cast<std::size_t>(vars)));
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const BpNode& n = b.node(*it);
    if (n.is_sink()) continue;
    const auto x = static_cast<std::size_t>(n.variable);
    if (above[static_cast<std::size_t>(*it)].test(x)) return false;
    Bitset next = above[static_cast<std::size_t>(*it)];
    next.set(x);
    above[static_cast<std::size_t>(n.low)] |= next;
    above[static_cast<std::size_t>(n.high)] |= next;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Annotations

/// Connected subgraph G_k with an unsatisfiable charge c_k (zero outside G_k).
struct NodeAnnotation {
  Bitset vertices;
  Bitset edges;
  Charge charge;

  friend bool operator==(const NodeAnnotation&, const NodeAnnotation&) = default;
};

inline NodeAnnotation root_annotation(const Graph& g, const Charge& c) { return {g.all_vertices(), g.all_edges(), c}; }

inline NodeAnnotation sink_annotation(const Graph& g, int v) {
  return {make_set(static_cast<std::size_t>(g.vertex_count()), {v}), Bitset(static_cast<std::size_t>(g.edge_count())),
          Charge::unit(g.vertex_count(), v)};
}

/// The child annotation required at the `value`-child of a decision on e:
/// drop e, apply the literal, and keep the side of e that stays unsatisfiable.
inline NodeAnnotation conditioned_annotation(const Graph& g, const NodeAnnotation& k, int e, bool value) {
  if (!k.edges.test(static_cast<std::size_t>(e))) throw Error("decision edge is not in the annotated subgraph");
  const Edge& ed = g.edge(e);
  Charge gamma = k.charge;
  if (value) gamma.toggle(ed.u).toggle(ed.v);
  Bitset edges = k.edges;
  edges.reset(static_cast<std::size_t>(e));
  const Bitset side_a = reachable(g, k.vertices, edges, ed.u);
  if (side_a.test(static_cast<std::size_t>(ed.v))) return {k.vertices, edges, gamma};
  const Bitset side = gamma.parity_over(side_a) ? side_a : (k.vertices & ~side_a);
  return {side, edges_within(g, side, edges), gamma.restricted_to(side)};
}

struct Diagnostic {
  bool ok = true;
  int node = -1;  // node index
  int condition = 0;  // 0 shape, 1 source, 2 sink, 3 decision child, 4 computed relation, 5 read-once
  std::string message;

  explicit operator bool() const { return ok; }
};

inline constexpr int kBpBruteForceCap = 16;

inline Diagnostic validate_well_structured(const BranchingProgram& b, const Graph& g, const Charge& c,
                                           const std::vector<NodeAnnotation>& ann, int brute_force_cap = kBpBruteForceCap) {
  auto fail = [](int node, int condition, std::string msg) { return Diagnostic{false, node, condition, std::move(msg)}; };
  if (!validate_read_once(b)) return fail(-1, 5, "branching program is not read-once");
  if (ann.size() != b.nodes.size()) return fail(-1, 0, "one annotation per node is required");
  const auto order = topological_order(b);
  for (int id : order) {
    const auto& a = ann[static_cast<std::size_t>(id)];
    if (static_cast<int>(a.vertices.size()) != g.vertex_count() || static_cast<int>(a.edges.size()) != g.edge_count() ||
        a.charge.size() != g.vertex_count())
      return fail(id, 0, "annotation sizes do not match the graph");
    if (edges_within(g, a.vertices, a.edges) != a.edges) return fail(id, 0, "annotated edges leave the annotated vertices");
    if (a.vertices.none() || reachable(g, a.vertices, a.edges, static_cast<int>(a.vertices.find_first())) != a.vertices)
      return fail(id, 0, "annotated subgraph is not connected");
    if (a.charge.restricted_to(a.vertices) != a.charge) return fail(id, 0, "annotated charge is non-zero outside the subgraph");
    if (!a.charge.parity_over(a.vertices)) return fail(id, 0, "annotated formula is satisfiable");
  }
  if (!(ann[static_cast<std::size_t>(b.source)] == root_annotation(g, c)))
    return fail(b.source, 1, "source is not annotated with (G, c)");
  for (int id : order) {
    const BpNode& n = b.node(id);
    const auto& a = ann[static_cast<std::size_t>(id)];
    if (n.is_sink()) {
      if (n.vertex < 0 || n.vertex >= g.vertex_count()) return fail(id, 2, "sink vertex out of range");
      if (!(a == sink_annotation(g, n.vertex))) return fail(id, 2, "sink is not annotated with ({v}, empty, 1_v)");
      continue;
    }
    if (n.variable < 0 || n.variable >= g.edge_count()) return fail(id, 3, "decision variable out of range");
    if (!a.edges.test(static_cast<std::size_t>(n.variable))) return fail(id, 3, "decision edge outside the annotated subgraph");
    for (int value = 0; value < 2; ++value) {
      const int child = value ? n.high : n.low;
      if (!(ann[static_cast<std::size_t>(child)] == conditioned_annotation(g, a, n.variable, value != 0)))
        return fail(id, 3, std::string("child ") + char('0' + value) + " has the wrong annotation");
    }
  }
  for (int id : order) {
    const auto& a = ann[static_cast<std::size_t>(id)];
    if (static_cast<int>(a.edges.count()) > brute_force_cap) continue;
    const auto vars = members(a.edges);
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << vars.size()); ++bits) {
      Model m = 0;
      for (std::size_t i = 0; i < vars.size(); ++i)
        if ((bits >> i) & 1U) m |= Model{1} << vars[i];
      const int v = eval_bp_from(b, id, m);
      bool violated = a.vertices.test(static_cast<std::size_t>(v));
      if (violated) {
        int p = 0;
        for (const Incidence& inc : g.incident(v))
          if (a.edges.test(static_cast<std::size_t>(inc.edge))) p ^= static_cast<int>((m >> inc.edge) & 1U);
        violated = p != static_cast<int>(a.charge[v]);
      }
      if (!violated) return fail(id, 4, "node returns a vertex whose constraint holds on assignment " + bit_string(m, g.edge_count()));
    }
  }
  return {};
}

/// Annotations forced by the source and the decision rule; throws if two
/// parents force different annotations on a shared node.
inline std::vector<NodeAnnotation> infer_annotations(const BranchingProgram& b, const Graph& g, const Charge& c) {
  const auto order = topological_order(b);
  std::vector<std::optional<NodeAnnotation>> ann(b.nodes.size());
  ann[static_cast<std::size_t>(b.source)] = root_annotation(g, c);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const BpNode& n = b.node(*it);
    const auto& a = ann[static_cast<std::size_t>(*it)];
    if (!a) throw Error("infer_annotations: node without annotation");
    if (n.is_sink()) continue;
    if (n.variable < 0 || n.variable >= g.edge_count() || !a->edges.test(static_cast<std::size_t>(n.variable)))
      throw Error("infer_annotations: node " + std::to_string(n.label) + " decides an edge outside its subgraph");
    for (int value = 0; value < 2; ++value) {
      const int child = value ? n.high : n.low;
      auto want = conditioned_annotation(g, *a, n.variable, value != 0);
      auto& slot = ann[static_cast<std::size_t>(child)];
      if (slot && !(*slot == want)) throw Error("infer_annotations: node " + std::to_string(b.node(child).label) + " has conflicting annotations");
      slot = std::move(want);
    }
  }
  std::vector<NodeAnnotation> out;
  for (std::size_t i = 0; i < ann.size(); ++i) {
    if (!ann[i]) throw Error("infer_annotations: node unreachable from the source");
    out.push_back(*ann[i]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Builder

struct WellStructuredBp {
  BranchingProgram bp;
  std::vector<NodeAnnotation> annotations;
};

struct BuildOptions {
  /// Picks the decision edge for a non-trivial annotation; default: the first
  /// surviving edge in the leaf order of a heuristic branch decomposition of G.
  std::function<int(const NodeAnnotation&)> choose_edge;
};

namespace detail {

class BpBuilder {
 public:
  BpBuilder(const Graph& g, BuildOptions options) : g_(g), options_(std::move(options)) {
    if (!options_.choose_edge) {
      const auto order = heuristic_branch_decomposition(g).leaf_order();
      options_.choose_edge = [order](const NodeAnnotation& a) {
        for (int e : order)
          if (a.edges.test(static_cast<std::size_t>(e))) return e;
        throw Error("no edge left to decide");
      };
    }
  }

  int build(const NodeAnnotation& a) {
    auto key = std::make_tuple(a.edges, a.vertices, a.charge.bits());
    if (const auto it = memo_.find(key); it != memo_.end()) return it->second;
    BpNode node;
    if (a.edges.none()) {
      if (a.vertices.count() != 1) throw Error("edgeless annotation with several vertices");
      node.kind = BpNode::Kind::Sink;
      node.vertex = static_cast<int>(a.vertices.find_first());
    } else {
      const int e = options_.choose_edge(a);
      node.kind = BpNode::Kind::Decision;
      node.variable = e;
      node.low = build(conditioned_annotation(g_, a, e, false));
      node.high = build(conditioned_annotation(g_, a, e, true));
    }
    node.label = static_cast<int>(out_.bp.nodes.size());
    out_.bp.nodes.push_back(node);
    out_.annotations.push_back(a);
    memo_.emplace(std::move(key), node.label);
    return node.label;
  }

  WellStructuredBp finish(int source) {
    out_.bp.source = source;
    return std::move(out_);
  }

 private:
  const Graph& g_;
  BuildOptions options_;
  std::map<std::tuple<Bitset, Bitset, Bitset>, int> memo_;
  WellStructuredBp out_;
};

}  // namespace detail

/// Memoized recursive construction of a well-structured read-once BP for
/// SearchVertex(g, c). Nodes are stored children first; the source is last.
inline WellStructuredBp build_well_structured_bp(const Graph& g, const Charge& c, BuildOptions options = {}) {
  if (!is_connected(g)) throw Error("build_well_structured_bp: graph is disconnected");
  if (TseitinFormula(g, c).is_satisfiable()) throw Error("build_well_structured_bp: formula is satisfiable");
  detail::BpBuilder builder(g, std::move(options));
  const int source = builder.build(root_annotation(g, c));
  return builder.finish(source);
}

}  // namespace twdnnf
