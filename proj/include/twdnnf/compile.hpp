#pragma once

#include <optional>
#include <vector>

#include "twdnnf/bp.hpp"
#include "twdnnf/nnf.hpp"
#include "twdnnf/tseitin.hpp"

namespace twdnnf {

/// Everything built while compiling: the circuit holding every constructed
/// node (its root is the requested gate) and, per BP node, the gate computing
/// T(G_k, c_k + 1_v) for each vertex v of G_k.
struct CompiledBp {
  NnfCircuit full;
  std::vector<std::vector<int>> gate_of;  // [bp node][vertex] -> node of `full`, -1 outside G_k
  int constructed_gates = 0;              // and/or gates created
  long long annotation_vertex_total = 0;  // sum over BP nodes of |V(G_k)|
};

inline CompiledBp compile_with_maps(const BranchingProgram& b, const std::vector<NodeAnnotation>& ann, const Graph& g,
                                    const Charge& c, int root_vertex, int brute_force_cap = kBpBruteForceCap) {
  if (root_vertex < 0 || root_vertex >= g.vertex_count()) throw Error("compile: root vertex out of range");
  if (const auto diag = validate_well_structured(b, g, c, ann, brute_force_cap); !diag)
    throw Error("compile: branching program rejected (node " + std::to_string(diag.node) + ", condition " +
                std::to_string(diag.condition) + "): " + diag.message);

  NnfBuilder builder(g.edge_count());
  CompiledBp out;
  out.gate_of.assign(b.nodes.size(), std::vector<int>(static_cast<std::size_t>(g.vertex_count()), -1));
  int gates = 0;
  auto conj = [&](int x, int y) { ++gates; return builder.conjoin(x, y); };
  auto disj = [&](int x, int y) { ++gates; return builder.disjoin(x, y); };

  for (int k : topological_order(b)) {
    const BpNode& n = b.node(k);
    const NodeAnnotation& a = ann[static_cast<std::size_t>(k)];
    auto& map = out.gate_of[static_cast<std::size_t>(k)];
    out.annotation_vertex_total += static_cast<long long>(a.vertices.count());
    if (n.is_sink()) {
      map[static_cast<std::size_t>(n.vertex)] = builder.constant(true);
      continue;
    }
    const auto& low = out.gate_of[static_cast<std::size_t>(n.low)];
    const auto& high = out.gate_of[static_cast<std::size_t>(n.high)];
    const Edge& e = g.edge(n.variable);
    const int neg = builder.literal(n.variable, false);
    const int pos = builder.literal(n.variable, true);
    Bitset rest = a.edges;
    rest.reset(static_cast<std::size_t>(n.variable));
    const Bitset side_a = reachable(g, a.vertices, rest, e.u);
    if (side_a.test(static_cast<std::size_t>(e.v))) {
      for (int v : members(a.vertices))
        map[static_cast<std::size_t>(v)] =
            disj(conj(neg, low[static_cast<std::size_t>(v)]), conj(pos, high[static_cast<std::size_t>(v)]));
      continue;
    }
    // Bridge: the two children sit on opposite sides of e. Child i lies on the u side.
    const int i = ann[static_cast<std::size_t>(n.low)].vertices.test(static_cast<std::size_t>(e.u)) ? 0 : 1;
    const auto& child_u = i == 0 ? low : high;
    const auto& child_v = i == 0 ? high : low;
    const int lit_u = i == 0 ? neg : pos;
    const int lit_v = i == 0 ? pos : neg;
    for (int v : members(a.vertices)) {
      if (side_a.test(static_cast<std::size_t>(v))) {
        map[static_cast<std::size_t>(v)] =
            conj(lit_u, conj(child_u[static_cast<std::size_t>(v)], child_v[static_cast<std::size_t>(e.v)]));
      } else {
        map[static_cast<std::size_t>(v)] =
            conj(lit_v, conj(child_v[static_cast<std::size_t>(v)], child_u[static_cast<std::size_t>(e.u)]));
      }
    }
  }
  out.constructed_gates = gates;
  const int root = out.gate_of[static_cast<std::size_t>(b.source)][static_cast<std::size_t>(root_vertex)];
  std::vector<NnfNode> all;
  for (int id = 0; id < builder.size(); ++id) all.push_back(builder.node(id));
  out.full = NnfCircuit(g.edge_count(), std::move(all), root);
  return out;
}

/// DNNF for T(g, c + 1_root) from a well-structured BP for SearchVertex(g, c),
/// restricted to the gates below its root.
inline NnfCircuit compile_bp_to_dnnf(const BranchingProgram& b, const std::vector<NodeAnnotation>& ann, const Graph& g,
                                     const Charge& c, int root_vertex, int brute_force_cap = kBpBruteForceCap) {
  const auto compiled = compile_with_maps(b, ann, g, c, root_vertex, brute_force_cap);
  return rooted_at(compiled.full, compiled.full.root());
}

/// Moves a circuit for T(g, current) to one for T(g, target) by literal flips.
inline NnfCircuit retarget(const NnfCircuit& d, const Graph& g, const Charge& current, const Charge& target) {
  return rename_flip(d, charge_retarget_flips(g, current, target));
}

struct PipelineReport {
  int vertices = 0;
  int edges = 0;
  int bp_size = 0;
  int dnnf_size = 0;   // all nodes, leaves included
  int dnnf_gates = 0;  // and/or gates
  long long annotation_vertex_total = 0;
  bool size_bound_holds = false;  // dnnf_size <= 3 * bp_size * |V|
  bool gate_bound_holds = false;  // dnnf_gates <= 3 * sum_k |V(G_k)|
  std::optional<bool> equivalent;
  std::optional<std::uint64_t> model_count;
  NnfCircuit dnnf;
  WellStructuredBp bp;

  double size_ratio() const { return static_cast<double>(dnnf_size) / (static_cast<double>(bp_size) * vertices); }
};

inline constexpr int kDefaultDeskScaleCap = 16;

/// Build BP for the unsatisfiable charge, compile, retarget to `target`, and
/// (when |E| fits the desk-scale cap) verify the result by brute force.
inline PipelineReport pipeline(const Graph& g, const Charge& c_unsat, const Charge& target,
                               int desk_scale_cap = kDefaultDeskScaleCap) {
  if (!is_connected(g)) throw Error("pipeline: graph is disconnected");
  if (!TseitinFormula(g, target).is_satisfiable()) throw Error("pipeline: target charge is unsatisfiable");
  PipelineReport r;
  r.vertices = g.vertex_count();
  r.edges = g.edge_count();
  r.bp = build_well_structured_bp(g, c_unsat);
  r.bp_size = r.bp.bp.size();
  const int root_vertex = 0;
  const auto compiled = compile_with_maps(r.bp.bp, r.bp.annotations, g, c_unsat, root_vertex, desk_scale_cap);
  const NnfCircuit raw = rooted_at(compiled.full, compiled.full.root());
  r.dnnf = retarget(raw, g, c_unsat + Charge::unit(g.vertex_count(), root_vertex), target);
  r.dnnf_size = r.dnnf.size();
  r.dnnf_gates = r.dnnf.gate_count();
  r.annotation_vertex_total = compiled.annotation_vertex_total;
  r.size_bound_holds = static_cast<long long>(r.dnnf_size) <= 3LL * r.bp_size * r.vertices;
  r.gate_bound_holds = static_cast<long long>(r.dnnf_gates) <= 3LL * r.annotation_vertex_total;
  if (g.edge_count() <= desk_scale_cap) {
    r.equivalent = brute_force_models(r.dnnf) == TseitinFormula(g, target).brute_force_models();
    r.model_count = model_count_all(smooth(propagate_constants(r.dnnf)));
  }
  return r;
}

}  // namespace twdnnf
