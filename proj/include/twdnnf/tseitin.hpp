#pragma once

#include <algorithm>
#include <optional>
#include <queue>
#include <random>
#include <vector>

#include "twdnnf/graph.hpp"

namespace twdnnf {

/// 0/1 label per vertex; addition is componentwise mod 2.
class Charge {
 public:
  Charge() = default;
  explicit Charge(Bitset bits) : bits_(std::move(bits)) {}

  static Charge zero(int n) { return Charge(Bitset(static_cast<std::size_t>(n))); }
  static Charge unit(int n, int v) {
    Charge c = zero(n);
    c.bits_.set(static_cast<std::size_t>(v));
    return c;
  }
  static Charge from_vertices(int n, const std::vector<int>& odd) { return Charge(make_set(static_cast<std::size_t>(n), odd)); }

  int size() const { return static_cast<int>(bits_.size()); }
  bool operator[](int v) const { return bits_.test(static_cast<std::size_t>(v)); }
  const Bitset& bits() const { return bits_; }

  Charge& toggle(int v) {
    bits_.flip(static_cast<std::size_t>(v));
    return *this;
  }
  Charge& operator+=(const Charge& o) {
    bits_ ^= o.bits_;
    return *this;
  }
  friend Charge operator+(Charge a, const Charge& b) { return a += b; }

  /// Sum of the charge over `vertices` mod 2.
  int parity_over(const Bitset& vertices) const { return static_cast<int>((bits_ & vertices).count() & 1U); }

  /// Zero outside `vertices`.
  Charge restricted_to(const Bitset& vertices) const { return Charge(bits_ & vertices); }

  friend bool operator==(const Charge& a, const Charge& b) { return a.bits_ == b.bits_; }
  friend bool operator<(const Charge& a, const Charge& b) { return a.bits_ < b.bits_; }

 private:
  Bitset bits_;
};

inline constexpr int kBruteForceEdgeCap = 24;

/// T(G,c) over the edges still `active`. Conditioning removes an edge from
/// the active set instead of rebuilding the graph, so variable ids stay
/// the edge ids of the original graph.
class TseitinFormula {
 public:
  TseitinFormula(Graph g, Charge c) : graph_(std::move(g)), charge_(std::move(c)), active_(graph_.all_edges()) {
    if (charge_.size() != graph_.vertex_count()) throw Error("charge length differs from the vertex count");
  }
  TseitinFormula(Graph g, Charge c, Bitset active)
      : graph_(std::move(g)), charge_(std::move(c)), active_(std::move(active)) {
    if (charge_.size() != graph_.vertex_count()) throw Error("charge length differs from the vertex count");
    if (static_cast<int>(active_.size()) != graph_.edge_count()) throw Error("active set has the wrong size");
  }

  const Graph& graph() const { return graph_; }
  const Charge& charge() const { return charge_; }
  const Bitset& active() const { return active_; }
  int variable_count() const { return graph_.edge_count(); }
  int active_count() const { return static_cast<int>(active_.count()); }

  /// T|x_e=value: drop e; a positive literal toggles the charge at both ends.
  TseitinFormula condition(int e, bool value) const {
    if (e < 0 || e >= graph_.edge_count()) throw Error("condition: edge out of range");
    if (!active_.test(static_cast<std::size_t>(e))) throw Error("condition: edge already removed");
    Charge c = charge_;
    if (value) c.toggle(graph_.edge(e).u).toggle(graph_.edge(e).v);
    Bitset act = active_;
    act.reset(static_cast<std::size_t>(e));
    return TseitinFormula(graph_, std::move(c), std::move(act));
  }

  std::vector<std::vector<int>> components() const { return connected_components(graph_, graph_.all_vertices(), active_); }

  bool is_satisfiable() const {
    for (const auto& comp : components())
      if (charge_.parity_over(make_set(static_cast<std::size_t>(graph_.vertex_count()), comp))) return false;
    return true;
  }

  /// |E| - |V| + K when satisfiable.
  std::optional<int> model_count_exponent() const {
    if (!is_satisfiable()) return std::nullopt;
    return active_count() - graph_.vertex_count() + static_cast<int>(components().size());
  }

  std::uint64_t model_count() const {
    const auto e = model_count_exponent();
    return e ? pow2(*e) : 0;
  }

  /// Parity of x restricted to E(v) (only active edges count).
  bool satisfied_at(int v, const Assignment& a) const {
    int p = 0;
    for (const Incidence& inc : graph_.incident(v))
      if (active_.test(static_cast<std::size_t>(inc.edge))) p ^= a.test(static_cast<std::size_t>(inc.edge)) ? 1 : 0;
    return p == static_cast<int>(charge_[v]);
  }

  bool evaluate(const Assignment& a) const {
    for (int v = 0; v < graph_.vertex_count(); ++v)
      if (!satisfied_at(v, a)) return false;
    return true;
  }

  /// All models, as masks over the original edge ids (inactive bits are 0).
  ModelSet brute_force_models() const {
    if (active_count() > kBruteForceEdgeCap) throw Error("brute_force_models: too many variables");
    const auto vars = members(active_);
    std::vector<Model> vertex_mask(static_cast<std::size_t>(graph_.vertex_count()), 0);
    for (int v = 0; v < graph_.vertex_count(); ++v)
      for (const Incidence& inc : graph_.incident(v))
        if (active_.test(static_cast<std::size_t>(inc.edge))) vertex_mask[static_cast<std::size_t>(v)] |= Model{1} << inc.edge;
    ModelSet out;
    const std::uint64_t total = std::uint64_t{1} << vars.size();
    for (std::uint64_t bits = 0; bits < total; ++bits) {
      Model m = 0;
      for (std::size_t i = 0; i < vars.size(); ++i)
        if ((bits >> i) & 1U) m |= Model{1} << vars[i];
      bool ok = true;
      for (int v = 0; v < graph_.vertex_count() && ok; ++v)
        ok = parity(m & vertex_mask[static_cast<std::size_t>(v)]) == static_cast<int>(charge_[v]);
      if (ok) out.push_back(m);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  Graph graph_;
  Charge charge_;
  Bitset active_;
};

/// Search relation: a violates the parity constraint at v.
inline bool searchvertex_holds(const Graph& g, const Charge& c, const Assignment& a, int v) {
  int p = 0;
  for (const Incidence& inc : g.incident(v)) p ^= a.test(static_cast<std::size_t>(inc.edge)) ? 1 : 0;
  return p != static_cast<int>(c[v]);
}

// ---------------------------------------------------------------------------
// Sub-constraints

/// Parity constraint on a non-empty proper subset of E(v).
struct SubConstraint {
  int vertex = -1;
  std::vector<int> edges;
  int parity = 0;
};

inline void check_subconstraint(const Graph& g, const SubConstraint& s) {
  if (s.vertex < 0 || s.vertex >= g.vertex_count()) throw Error("sub-constraint vertex out of range");
  if (s.edges.empty() || static_cast<int>(s.edges.size()) >= g.degree(s.vertex))
    throw Error("sub-constraint edge set must be a non-empty proper subset of E(v)");
  for (int e : s.edges)
    if (!g.edge(e).touches(s.vertex)) throw Error("sub-constraint edge not incident to its vertex");
}

/// Split request matching the sub-constraint: the first copy keeps the neighbours across `edges`.
inline SplitRequest subconstraint_split(const Graph& g, const SubConstraint& s) {
  check_subconstraint(g, s);
  return split_along(g, s.vertex, make_set(static_cast<std::size_t>(g.edge_count()), s.edges));
}

/// |sat(T(G,c) and the sub-constraints)| = 2^{|E|-|V|-k+1}, valid when the
/// graph split along all sub-constraints stays connected.
inline std::uint64_t conjoin_subconstraints_count(const TseitinFormula& t, const std::vector<SubConstraint>& subs) {
  const Graph& g = t.graph();
  if (t.active_count() != g.edge_count()) throw Error("conjoin_subconstraints_count: formula must be unconditioned");
  if (!is_connected(g)) throw Error("conjoin_subconstraints_count: graph is disconnected");
  if (!t.is_satisfiable()) throw Error("conjoin_subconstraints_count: formula is unsatisfiable");
  std::vector<int> vertices;
  std::vector<SplitRequest> requests;
  for (const auto& s : subs) {
    vertices.push_back(s.vertex);
    requests.push_back(subconstraint_split(g, s));
  }
  if (!is_independent(g, vertices)) throw Error("conjoin_subconstraints_count: vertices not independent");
  // Splits on an independent set commute; build the split graph one request at a time.
  std::vector<Edge> edges(g.edges().begin(), g.edges().end());
  int n = g.vertex_count();
  for (const auto& r : requests) {
    for (int u : r.second) {
      Edge& e = edges[static_cast<std::size_t>(*g.edge_between(r.vertex, u))];
      if (e.u == r.vertex) e.u = n; else e.v = n;
    }
    ++n;
  }
  if (!is_connected(Graph(n, std::move(edges))))
    throw Error("conjoin_subconstraints_count: split graph is disconnected");
  return pow2(g.edge_count() - g.vertex_count() - static_cast<int>(subs.size()) + 1);
}

inline std::uint64_t brute_force_conjoin_count(const TseitinFormula& t, const std::vector<SubConstraint>& subs) {
  std::uint64_t count = 0;
  for (Model m : t.brute_force_models()) {
    bool ok = true;
    for (const auto& s : subs) {
      int p = 0;
      for (int e : s.edges) p ^= static_cast<int>((m >> e) & 1U);
      ok = ok && p == s.parity;
    }
    count += ok ? 1 : 0;
  }
  return count;
}

// ---------------------------------------------------------------------------
// Charge retargeting

/// Edge set F whose flip maps sat(T(g,c)) onto sat(T(g,target)): a T-join for
/// the vertices where the charges differ, built from paths in a BFS forest.
inline Bitset charge_retarget_flips(const Graph& g, const Charge& c, const Charge& target) {
  if (!TseitinFormula(g, c).is_satisfiable() || !TseitinFormula(g, target).is_satisfiable())
    throw Error("charge_retarget_flips: both charges must be satisfiable");
  Bitset flips(static_cast<std::size_t>(g.edge_count()));
  std::vector<int> parent_edge(static_cast<std::size_t>(g.vertex_count()), -1);
  std::vector<int> depth(static_cast<std::size_t>(g.vertex_count()), 0);
  for (const auto& comp : connected_components(g)) {
    std::queue<int> q;
    q.push(comp.front());
    std::vector<char> seen(static_cast<std::size_t>(g.vertex_count()), 0);
    seen[static_cast<std::size_t>(comp.front())] = 1;
    while (!q.empty()) {
      const int x = q.front();
      q.pop();
      for (const Incidence& inc : g.incident(x)) {
        if (seen[static_cast<std::size_t>(inc.neighbor)]) continue;
        seen[static_cast<std::size_t>(inc.neighbor)] = 1;
        parent_edge[static_cast<std::size_t>(inc.neighbor)] = inc.edge;
        depth[static_cast<std::size_t>(inc.neighbor)] = depth[static_cast<std::size_t>(x)] + 1;
        q.push(inc.neighbor);
      }
    }
    std::vector<int> odd;
    for (int v : comp)
      if (c[v] != target[v]) odd.push_back(v);
    for (std::size_t i = 0; i + 1 < odd.size(); i += 2) {
      int a = odd[i], b = odd[i + 1];
      while (a != b) {
        int& deeper = depth[static_cast<std::size_t>(a)] >= depth[static_cast<std::size_t>(b)] ? a : b;
        const int e = parent_edge[static_cast<std::size_t>(deeper)];
        flips.flip(static_cast<std::size_t>(e));
        deeper = g.edge(e).other(deeper);
      }
    }
  }
  return flips;
}

inline Model apply_flips(Model m, const Bitset& flips) { return m ^ to_model(flips); }

/// Deterministic pseudo-random charge with the requested satisfiability.
inline Charge random_charge(const Graph& g, std::uint64_t seed, bool satisfiable) {
  std::mt19937_64 rng(seed);
  Charge c = Charge::zero(g.vertex_count());
  for (int v = 0; v < g.vertex_count(); ++v)
    if (rng() & 1U) c.toggle(v);
  const auto comps = connected_components(g);
  for (std::size_t i = 0; i < comps.size(); ++i) {
    const int p = c.parity_over(make_set(static_cast<std::size_t>(g.vertex_count()), comps[i]));
    const bool want_odd = !satisfiable && i == 0;
    if (p != (want_odd ? 1 : 0)) c.toggle(comps[i].front());
  }
  return c;
}

}  // namespace twdnnf
