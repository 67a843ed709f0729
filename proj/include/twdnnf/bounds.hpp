#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "twdnnf/branch_decomposition.hpp"
#include "twdnnf/rectangle.hpp"
#include "twdnnf/separators.hpp"
#include "twdnnf/tseitin.hpp"

namespace twdnnf {

/// Adam's answer to a v-tree: the widest cut, an independent part of its
/// boundary, and the subset of those vertices whose splits keep G connected.
struct AdamResponse {
  Cut cut;
  std::vector<int> boundary;     // V'
  std::vector<int> independent;  // V''
  std::vector<int> safe;         // V*
  std::vector<SplitRequest> splits;  // one per vertex of V*
  int cap_exponent = 0;              // |E| - |V| - |V*| + 1
  bool vacuous = false;              // premises failed; cap is the total model count
};

inline int total_model_exponent(const Graph& g) { return g.edge_count() - g.vertex_count() + 1; }

inline AdamResponse adam_response(const Graph& g, const BranchDecomposition& t) {
  if (!is_3_connected(g)) throw Error("adam_response: graph is not 3-connected");
  t.validate(g);
  auto cut = max_order_cut(t, g);
  if (!cut) throw Error("adam_response: decomposition has no cut");
  AdamResponse r;
  r.cut = *cut;
  r.boundary = r.cut.boundary;
  r.independent = greedy_independent_set(g, r.boundary);
  std::vector<SplitRequest> requests;
  for (int v : r.independent) requests.push_back(split_along(g, v, r.cut.side));
  r.splits = safe_split_subset(g, requests);
  for (const auto& s : r.splits) r.safe.push_back(s.vertex);
  r.cap_exponent = total_model_exponent(g) - static_cast<int>(r.safe.size());
  return r;
}

/// Adam's fallback when the 3-connected argument does not apply: widest cut, no cap.
inline AdamResponse vacuous_response(const Graph& g, const BranchDecomposition& t) {
  AdamResponse r;
  if (auto cut = max_order_cut(t, g)) {
    r.cut = *cut;
    r.boundary = r.cut.boundary;
  }
  r.cap_exponent = total_model_exponent(g);
  r.vacuous = true;
  return r;
}

struct CapCheck {
  bool holds = false;
  std::uint64_t rectangle_size = 0;
  std::uint64_t cap = 0;
  std::vector<SubConstraint> subconstraints;
};

/// |R| <= 2^cap, obtained by inducing a sub-constraint at every vertex of V*
/// and counting the models of T(g,c) conjoined with them.
inline CapCheck rectangle_cap_check(const Graph& g, const Charge& c, const AdamResponse& adam, const Rectangle& r) {
  const TseitinFormula t(g, c);
  CapCheck out;
  out.rectangle_size = r.size();
  if (adam.vacuous) {
    out.cap = pow2(adam.cap_exponent);
    out.holds = out.rectangle_size <= out.cap;
    return out;
  }
  if (r.first != adam.cut.side) throw Error("rectangle_cap_check: rectangle partition differs from the cut");
  for (int v : adam.safe) out.subconstraints.push_back(induced_subconstraint(r, t, v));
  out.cap = conjoin_subconstraints_count(t, out.subconstraints);
  if (out.cap != pow2(adam.cap_exponent)) throw Error("rectangle_cap_check: count disagrees with the cap exponent");
  out.holds = out.rectangle_size <= out.cap;
  return out;
}

// ---------------------------------------------------------------------------
// Certified lower bounds

struct LowerBoundCertificate {
  std::uint64_t graph_hash = 0;
  int vertices = 0;
  int edges = 0;
  int treewidth = 0;  // lower bound on tw(G); exact when provenance is exact-dp
  std::string treewidth_provenance;
  bool trivial = false;  // treewidth <= 2: bound 1, no witness

  // witness on the 3-connected minor H
  TopologicalMinor minor;
  int minor_max_degree = 0;
  int branchwidth_lower = 0;
  std::vector<int> cut_side;     // edge ids of H below the chosen cut
  std::vector<int> boundary;     // V'
  std::vector<int> independent;  // V''
  std::vector<int> safe;         // V*
  int cap_exponent = 0;          // |E(H)| - |V(H)| - |V*| + 1

  int k = 0;  // certified exponent: every complete DNNF of T(G, .) has >= 2^k gates

  std::uint64_t bound() const { return pow2(k); }
  int witness_size() const { return static_cast<int>(safe.size()); }
};

inline int ceil_div(int a, int b) { return (a + b - 1) / b; }

/// k = ceil(ceil(ceil(2 tw / 3) / (Delta_H + 1)) / 3) on a 3-connected
/// topological minor H of g with tw(H) = tw(g), plus one concrete Adam
/// answer on H that reaches at least k safe vertices.
inline LowerBoundCertificate certified_lower_bound(const Graph& g) {
  if (!is_connected(g)) throw Error("certified_lower_bound: graph is disconnected");
  LowerBoundCertificate cert;
  cert.graph_hash = graph_hash(g);
  cert.vertices = g.vertex_count();
  cert.edges = g.edge_count();
  const auto tw = estimate_treewidth(g);
  cert.treewidth = tw.lower;
  cert.treewidth_provenance = tw.provenance();
  if (tw.lower <= 2) {
    cert.trivial = true;
    return cert;
  }
  cert.minor = three_connected_minor(g);
  const Graph& h = cert.minor.graph;
  if (tw.exact && h.vertex_count() <= kExactTreewidthCap && treewidth_exact(h) != tw.lower)
    throw Error("certified_lower_bound: minor changed the treewidth");
  cert.minor_max_degree = h.max_degree();
  cert.branchwidth_lower = ceil_div(2 * cert.treewidth, 3);
  cert.k = ceil_div(ceil_div(cert.branchwidth_lower, cert.minor_max_degree + 1), 3);

  const auto adam = adam_response(h, heuristic_branch_decomposition(h));
  cert.cut_side = members(adam.cut.side);
  cert.boundary = adam.boundary;
  cert.independent = adam.independent;
  cert.safe = adam.safe;
  cert.cap_exponent = adam.cap_exponent;
  if (cert.witness_size() < cert.k) throw Error("certified_lower_bound: witness smaller than the certified exponent");
  return cert;
}

struct CertificateCheck {
  bool ok = false;
  std::string message;
  explicit operator bool() const { return ok; }
};

/// Replays the minor trace on g and re-derives every quantity of the chain.
inline CertificateCheck verify_certificate(const Graph& g, const LowerBoundCertificate& cert) {
  auto fail = [](std::string m) { return CertificateCheck{false, std::move(m)}; };
  if (graph_hash(g) != cert.graph_hash) return fail("graph hash mismatch");
  if (g.vertex_count() != cert.vertices || g.edge_count() != cert.edges) return fail("graph size mismatch");
  const auto tw = estimate_treewidth(g);
  if (tw.exact ? cert.treewidth != tw.lower : cert.treewidth > tw.lower) return fail("treewidth does not match");
  if (cert.trivial) {
    if (cert.treewidth > 2 || cert.k != 0) return fail("trivial certificate with a non-trivial claim");
    return {true, "trivial"};
  }

  // Replay the minor operations on (vertex set, edge list keyed by variable).
  std::vector<char> alive(static_cast<std::size_t>(g.vertex_count()), 1);
  std::map<int, Edge> edges;
  for (int e = 0; e < g.edge_count(); ++e) edges[e] = g.edge(e);
  auto degree = [&](int v) {
    int d = 0;
    for (const auto& [var, e] : edges) d += e.touches(v) ? 1 : 0;
    return d;
  };
  for (const auto& step : cert.minor.trace) {
    switch (step.kind) {
      case MinorStep::Kind::DeleteEdge:
        if (!edges.erase(step.variable)) return fail("trace deletes a missing edge");
        break;
      case MinorStep::Kind::DeleteVertex:
        if (step.vertex < 0 || step.vertex >= g.vertex_count() || !alive[static_cast<std::size_t>(step.vertex)] || degree(step.vertex) != 0)
          return fail("trace deletes a non-isolated vertex");
        alive[static_cast<std::size_t>(step.vertex)] = 0;
        break;
      case MinorStep::Kind::EliminateSubdivision: {
        const auto a = edges.find(step.variable), b = edges.find(step.forgotten);
        const int w = step.vertex;
        if (a == edges.end() || b == edges.end() || !a->second.touches(w) || !b->second.touches(w) || degree(w) != 2)
          return fail("trace eliminates a vertex that is not a subdivision");
        const int x = a->second.other(w), y = b->second.other(w);
        for (const auto& [var, e] : edges)
          if (e.touches(x) && e.touches(y)) return fail("subdivision elimination creates a parallel edge");
        a->second = {std::min(x, y), std::max(x, y)};
        edges.erase(b);
        alive[static_cast<std::size_t>(w)] = 0;
        break;
      }
    }
  }
  const Graph& h = cert.minor.graph;
  std::vector<int> origin;
  for (int v = 0; v < g.vertex_count(); ++v)
    if (alive[static_cast<std::size_t>(v)]) origin.push_back(v);
  if (origin != cert.minor.vertex_origin) return fail("minor vertices do not match the replay");
  if (static_cast<int>(edges.size()) != h.edge_count() || static_cast<int>(cert.minor.edge_variable.size()) != h.edge_count())
    return fail("minor edge count does not match the replay");
  for (int id = 0; id < h.edge_count(); ++id) {
    const auto it = edges.find(cert.minor.edge_variable[static_cast<std::size_t>(id)]);
    if (it == edges.end()) return fail("minor edge variable missing from the replay");
    const int a = origin[static_cast<std::size_t>(h.edge(id).u)], b = origin[static_cast<std::size_t>(h.edge(id).v)];
    if (!it->second.touches(a) || !it->second.touches(b)) return fail("minor edge endpoints do not match the replay");
  }
  if (!is_3_connected(h)) return fail("minor is not 3-connected");
  if (tw.exact && h.vertex_count() <= kExactTreewidthCap && treewidth_exact(h) != cert.treewidth)
    return fail("minor treewidth differs");

  // The arithmetic chain.
  if (h.max_degree() != cert.minor_max_degree) return fail("max degree mismatch");
  if (cert.branchwidth_lower != ceil_div(2 * cert.treewidth, 3)) return fail("branchwidth bound mismatch");
  if (cert.k != ceil_div(ceil_div(cert.branchwidth_lower, cert.minor_max_degree + 1), 3)) return fail("k mismatch");

  // The witness.
  const Bitset side = make_set(static_cast<std::size_t>(h.edge_count()), cert.cut_side);
  if (cut_boundary(h, side) != cert.boundary) return fail("boundary does not match the cut");
  if (static_cast<int>(cert.boundary.size()) < cert.branchwidth_lower) return fail("cut narrower than the branchwidth bound");
  for (int v : cert.independent)
    if (!std::binary_search(cert.boundary.begin(), cert.boundary.end(), v)) return fail("V'' leaves the boundary");
  if (!is_independent(h, cert.independent)) return fail("V'' is not independent");
  if (static_cast<int>(cert.independent.size()) < ceil_div(static_cast<int>(cert.boundary.size()), h.max_degree() + 1))
    return fail("V'' too small");
  std::vector<SplitRequest> splits;
  for (int v : cert.safe) {
    if (std::find(cert.independent.begin(), cert.independent.end(), v) == cert.independent.end()) return fail("V* leaves V''");
    splits.push_back(split_along(h, v, side));
  }
  if (!is_connected(apply_splits(h, splits))) return fail("V* splits disconnect the minor");
  if (static_cast<int>(cert.safe.size()) < ceil_div(static_cast<int>(cert.independent.size()), 3)) return fail("V* too small");
  if (cert.witness_size() < cert.k) return fail("witness smaller than k");
  if (cert.cap_exponent != total_model_exponent(h) - cert.witness_size()) return fail("cap exponent mismatch");
  return {true, "verified"};
}

/// A DNNF for T(g, 0) turned into one for T(H, 0) over H's edge ids: deleted
/// edges are conditioned to 0, merged subdivision variables are forgotten.
inline NnfCircuit replay_minor(const NnfCircuit& d, const TopologicalMinor& minor) {
  NnfCircuit out = d;
  for (const auto& step : minor.trace) {
    if (step.kind == MinorStep::Kind::DeleteEdge) out = condition_dnnf(out, step.variable, false);
    if (step.kind == MinorStep::Kind::EliminateSubdivision) out = forget_var(out, step.forgotten);
  }
  std::vector<int> map(static_cast<std::size_t>(d.variable_count()), -1);
  for (std::size_t id = 0; id < minor.edge_variable.size(); ++id)
    map[static_cast<std::size_t>(minor.edge_variable[id])] = static_cast<int>(id);
  return remap_variables(out, map, minor.graph.edge_count());
}

// ---------------------------------------------------------------------------
// The rectangle game

namespace detail {

/// v-tree read off a proof tree of a complete DNNF: literal leaves become
/// variable leaves, single-input (or) gates are contracted. Returns the tree
/// and, per tree node, the topmost gate carrying that variable set.
inline std::pair<BranchDecomposition, std::vector<int>> vtree_of_proof_tree(const NnfCircuit& d, const std::vector<int>& tree) {
  std::vector<char> in(static_cast<std::size_t>(d.size()), 0);
  for (int g : tree) in[static_cast<std::size_t>(g)] = 1;
  BranchDecomposition t;
  std::vector<int> gate;
  std::function<int(int)> go = [&](int g) -> int {
    const NnfNode& n = d.node(g);
    if (n.kind == NnfKind::Literal) {
      gate.push_back(g);
      return t.add_leaf(n.var);
    }
    if (n.kind == NnfKind::Or) {
      const int child = in[static_cast<std::size_t>(n.left)] ? n.left : n.right;
      const int id = go(child);
      gate[static_cast<std::size_t>(id)] = g;  // topmost gate wins
      return id;
    }
    if (n.kind == NnfKind::And) {
      const bool l = d.vars(n.left).any(), r = d.vars(n.right).any();
      if (l && r) {
        const int a = go(n.left);
        const int b = go(n.right);
        gate.push_back(g);
        return t.add_internal(a, b);
      }
      const int id = go(l ? n.left : n.right);
      gate[static_cast<std::size_t>(id)] = g;
      return id;
    }
    throw Error("v-tree construction: constant inside a proof tree of a non-constant circuit");
  };
  t.set_root(go(d.root()));
  return {std::move(t), std::move(gate)};
}

}  // namespace detail

struct GameRound {
  Model model = 0;
  int gate = -1;
  int cut_order = 0;
  std::uint64_t rectangle_size = 0;
  std::uint64_t cap = 0;
  bool cap_holds = true;
};

struct GameTranscript {
  std::vector<GameRound> rounds;
  std::uint64_t total_models = 0;
  std::uint64_t max_cap = 0;
  int circuit_size = 0;

  int round_count() const { return static_cast<int>(rounds.size()); }
  /// ceil(total models / largest cap): the fewest rounds any strategy could need.
  std::uint64_t round_lower_bound() const { return max_cap == 0 ? 0 : (total_models + max_cap - 1) / max_cap; }
};

/// Plays the game on a complete DNNF of a satisfiable T(g, c). Charlotte takes
/// the smallest uncovered model (x_0 most significant) and its leftmost proof
/// tree; Adam answers with adam_response on 3-connected graphs and with the
/// widest cut and no cap otherwise.
inline GameTranscript game_simulate(const NnfCircuit& d, const Graph& g, const Charge& c) {
  const ProofTreeAnalysis analysis(d);
  if (analysis.variables() != g.all_edges()) throw Error("game_simulate: circuit must mention every edge variable");
  GameTranscript out;
  out.circuit_size = d.size();
  ModelSet uncovered = analysis.models();
  out.total_models = uncovered.size();
  const bool three_connected = is_3_connected(g);
  while (!uncovered.empty()) {
    const Model m = *std::min_element(uncovered.begin(), uncovered.end(), lex_less);
    const auto tree = proof_tree(d, m);
    auto [vtree, gate_of] = detail::vtree_of_proof_tree(d, tree);
    GameRound round;
    round.model = m;
    int node = vtree.root();
    AdamResponse adam;
    if (vtree.size() > 1) {
      adam = three_connected ? adam_response(g, vtree) : vacuous_response(g, vtree);
      node = adam.cut.node;
      round.cut_order = adam.cut.order();
    } else {
      adam.cap_exponent = total_model_exponent(g);
      adam.vacuous = true;
    }
    round.gate = gate_of[static_cast<std::size_t>(node)];
    const Rectangle r = gate_rectangle(analysis, round.gate);
    if (!r.contains(m)) throw Error("game_simulate: rectangle misses the chosen model");
    const auto check = rectangle_cap_check(g, c, adam, r);
    round.rectangle_size = check.rectangle_size;
    round.cap = check.cap;
    round.cap_holds = check.holds;
    out.max_cap = std::max(out.max_cap, check.cap);
    ModelSet rest;
    for (Model x : uncovered)
      if (!r.contains(x)) rest.push_back(x);
    uncovered = std::move(rest);
    out.rounds.push_back(round);
    if (out.round_count() > d.size()) throw Error("game_simulate: more rounds than gates");
  }
  return out;
}

/// Balanced rectangles covering sat(d): for each uncovered model, walk its
/// proof tree from the root into the larger input until the gate mentions at
/// most two thirds of the variables.
inline std::vector<Rectangle> extract_balanced_cover(const NnfCircuit& d) {
  const ProofTreeAnalysis analysis(d);
  const auto x = static_cast<std::size_t>(analysis.variables().count());
  if (x < 3) throw Error("extract_balanced_cover: needs at least three variables");
  std::vector<Rectangle> cover;
  ModelSet uncovered = analysis.models();
  while (!uncovered.empty()) {
    const Model m = *std::min_element(uncovered.begin(), uncovered.end(), lex_less);
    const auto tree = proof_tree(d, m);
    int g = d.root();
    while (3 * d.vars(g).count() > 2 * x) {
      const NnfNode& n = d.node(g);
      if (!n.is_gate()) throw Error("extract_balanced_cover: no balanced gate on the proof tree");
      if (n.kind == NnfKind::Or) {
        g = std::binary_search(tree.begin(), tree.end(), n.left) ? n.left : n.right;
      } else {
        g = d.vars(n.left).count() >= d.vars(n.right).count() ? n.left : n.right;
      }
    }
    Rectangle r = gate_rectangle(analysis, g);
    if (!r.balanced()) throw Error("extract_balanced_cover: no balanced gate on the proof tree");
    ModelSet rest;
    for (Model y : uncovered)
      if (!r.contains(y)) rest.push_back(y);
    uncovered = std::move(rest);
    cover.push_back(std::move(r));
  }
  return cover;
}

}  // namespace twdnnf
