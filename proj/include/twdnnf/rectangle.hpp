#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "twdnnf/nnf.hpp"
#include "twdnnf/tseitin.hpp"

namespace twdnnf {

/// A x B over the variable partition (first, second); A holds assignments to
/// `first` and B to `second`, both as masks over the full variable range.
struct Rectangle {
  Bitset first;
  Bitset second;
  ModelSet left;
  ModelSet right;

  std::uint64_t size() const { return static_cast<std::uint64_t>(left.size()) * right.size(); }

  bool balanced() const {
    const std::size_t x = first.count() + second.count();
    return 3 * first.count() >= x && 3 * first.count() <= 2 * x;
  }

  ModelSet models() const {
    ModelSet out;
    for (Model a : left)
      for (Model b : right) out.push_back(a | b);
    std::sort(out.begin(), out.end());
    return out;
  }

  bool contains(Model m) const {
    const Model a = m & mask_of(first), b = m & mask_of(second);
    return std::binary_search(left.begin(), left.end(), a) && std::binary_search(right.begin(), right.end(), b);
  }
};

/// The A x B decomposition of `s` for the partition (first, second), if s is a product set.
inline std::optional<Rectangle> is_rectangle(const ModelSet& s, const Bitset& first, const Bitset& second) {
  if (first.intersects(second)) throw Error("is_rectangle: partition blocks overlap");
  const Model m1 = mask_of(first), m2 = mask_of(second);
  Rectangle r{first, second, {}, {}};
  ModelSet distinct = s;
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  for (Model m : distinct) {
    if (m & ~(m1 | m2)) throw Error("is_rectangle: model sets a variable outside the partition");
    r.left.push_back(m & m1);
    r.right.push_back(m & m2);
  }
  for (auto* side : {&r.left, &r.right}) {
    std::sort(side->begin(), side->end());
    side->erase(std::unique(side->begin(), side->end()), side->end());
  }
  if (r.size() != distinct.size()) return std::nullopt;
  return r;
}

inline constexpr int kRectangleVariableCap = 20;

/// For a complete DNNF: every model over var(root) and, per model, the gates
/// lying on some proof tree accepting it. A gate is on such a tree exactly
/// when a root-to-gate path runs through gates that are all true.
class ProofTreeAnalysis {
 public:
  explicit ProofTreeAnalysis(const NnfCircuit& d) : d_(d) {
    if (!validate_decomposable(d_)) throw Error("proof-tree analysis needs a decomposable circuit");
    if (!is_smooth(d_)) throw Error("proof-tree analysis needs a smooth circuit");
    const Bitset& x = d_.vars(d_.root());
    if (static_cast<int>(x.count()) > kRectangleVariableCap) throw Error("proof-tree analysis: too many variables");
    const auto vars = members(x);
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << vars.size()); ++bits) {
      Model m = 0;
      for (std::size_t i = 0; i < vars.size(); ++i)
        if ((bits >> i) & 1U) m |= Model{1} << vars[i];
      const auto val = evaluate_all(d_, m);
      if (!val[static_cast<std::size_t>(d_.root())]) continue;
      Bitset on(static_cast<std::size_t>(d_.size()));
      on.set(static_cast<std::size_t>(d_.root()));
      for (int g = d_.root(); g >= 0; --g) {
        if (!on.test(static_cast<std::size_t>(g))) continue;
        const NnfNode& n = d_.node(g);
        if (!n.is_gate()) continue;
        for (int child : {n.left, n.right})
          if (val[static_cast<std::size_t>(child)]) on.set(static_cast<std::size_t>(child));
      }
      models_.push_back(m);
      on_tree_.push_back(std::move(on));
    }
    std::vector<std::size_t> idx(models_.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return models_[a] < models_[b]; });
    std::vector<Model> ms;
    std::vector<Bitset> ons;
    for (std::size_t i : idx) {
      ms.push_back(models_[i]);
      ons.push_back(std::move(on_tree_[i]));
    }
    models_ = std::move(ms);
    on_tree_ = std::move(ons);
  }

  const NnfCircuit& circuit() const { return d_; }
  const ModelSet& models() const { return models_; }
  const Bitset& variables() const { return d_.vars(d_.root()); }

  /// sat(D, gate): models accepted by a proof tree through `gate`.
  ModelSet models_through(int gate) const {
    ModelSet out;
    for (std::size_t i = 0; i < models_.size(); ++i)
      if (on_tree_[i].test(static_cast<std::size_t>(gate))) out.push_back(models_[i]);
    return out;
  }

 private:
  NnfCircuit d_;
  ModelSet models_;
  std::vector<Bitset> on_tree_;
};

/// sat(D, gate) as a rectangle over (var(gate), var(root) - var(gate)).
/// Throws if the product property fails.
inline Rectangle gate_rectangle(const ProofTreeAnalysis& analysis, int gate) {
  const Bitset& x = analysis.variables();
  const Bitset first = analysis.circuit().vars(gate) & x;
  const Bitset second = x & ~first;
  auto r = is_rectangle(analysis.models_through(gate), first, second);
  if (!r) throw Error("gate_rectangle: sat(D, v) is not a product set at gate " + std::to_string(gate));
  return *r;
}

inline Rectangle gate_rectangle(const NnfCircuit& d, int gate) { return gate_rectangle(ProofTreeAnalysis(d), gate); }

/// The sub-constraint at v shared by every element of A: parity over the
/// edges of v on the first side of the partition.
inline SubConstraint induced_subconstraint(const Rectangle& r, const TseitinFormula& t, int v) {
  const Graph& g = t.graph();
  for (Model m : r.models())
    if (!t.evaluate(to_assignment(m, static_cast<std::size_t>(g.edge_count()))))
      throw Error("induced_subconstraint: rectangle contains a non-model");
  SubConstraint s{v, {}, 0};
  bool touches_second = false;
  for (const Incidence& inc : g.incident(v)) {
    if (r.first.test(static_cast<std::size_t>(inc.edge))) s.edges.push_back(inc.edge);
    else if (r.second.test(static_cast<std::size_t>(inc.edge))) touches_second = true;
  }
  std::sort(s.edges.begin(), s.edges.end());
  if (s.edges.empty() || !touches_second) throw Error("induced_subconstraint: vertex is not on the cut boundary");
  const Model mask = mask_of(make_set(static_cast<std::size_t>(g.edge_count()), s.edges));
  bool first = true;
  for (Model a : r.left) {
    const int p = parity(a & mask);
    if (first) s.parity = p;
    else if (p != s.parity) throw Error("induced_subconstraint: parity is not constant on A");
    first = false;
  }
  return s;
}

}  // namespace twdnnf
