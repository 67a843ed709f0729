#pragma once

#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <vector>

#include "twdnnf/bits.hpp"

namespace twdnnf {

enum class NnfKind { Literal, True, False, And, Or };

struct NnfNode {
  NnfKind kind = NnfKind::True;
  int var = -1;          // literal only
  bool positive = true;  // literal only
  int left = -1;         // and/or only
  int right = -1;

  bool is_gate() const { return kind == NnfKind::And || kind == NnfKind::Or; }
  friend bool operator==(const NnfNode&, const NnfNode&) = default;
};

/// NNF DAG with binary and/or gates, stored in topological order (children
/// before parents), with var(g) cached per node.
class NnfCircuit {
 public:
  NnfCircuit() = default;

  NnfCircuit(int variable_count, std::vector<NnfNode> nodes, int root)
      : variables_(variable_count), nodes_(std::move(nodes)), root_(root) {
    if (nodes_.empty()) throw Error("circuit without nodes");
    if (root_ < 0 || root_ >= size()) throw Error("circuit root out of range");
    vars_.reserve(nodes_.size());
    for (int i = 0; i < size(); ++i) {
      const NnfNode& n = nodes_[static_cast<std::size_t>(i)];
      Bitset vs(static_cast<std::size_t>(variables_));
      switch (n.kind) {
        case NnfKind::Literal:
          if (n.var < 0 || n.var >= variables_) throw Error("literal variable out of range");
          vs.set(static_cast<std::size_t>(n.var));
          break;
        case NnfKind::True:
        case NnfKind::False:
          break;
        case NnfKind::And:
        case NnfKind::Or:
          if (n.left < 0 || n.right < 0 || n.left >= i || n.right >= i)
            throw Error("gate " + std::to_string(i) + " is not in topological order");
          vs = vars_[static_cast<std::size_t>(n.left)] | vars_[static_cast<std::size_t>(n.right)];
          break;
      }
      vars_.push_back(std::move(vs));
    }
  }

  int variable_count() const { return variables_; }
  int size() const { return static_cast<int>(nodes_.size()); }
  int root() const { return root_; }
  const NnfNode& node(int i) const { return nodes_.at(static_cast<std::size_t>(i)); }
  const std::vector<NnfNode>& nodes() const { return nodes_; }
  const Bitset& vars(int i) const { return vars_.at(static_cast<std::size_t>(i)); }

  /// Number of binary and/or gates.
  int gate_count() const {
    return static_cast<int>(std::count_if(nodes_.begin(), nodes_.end(), [](const NnfNode& n) { return n.is_gate(); }));
  }

  friend bool operator==(const NnfCircuit& a, const NnfCircuit& b) {
    return a.variables_ == b.variables_ && a.root_ == b.root_ && a.nodes_ == b.nodes_;
  }

 private:
  int variables_ = 0;
  std::vector<NnfNode> nodes_;
  std::vector<Bitset> vars_;
  int root_ = -1;
};

/// Appends nodes in topological order; literals and constants are shared.
class NnfBuilder {
 public:
  explicit NnfBuilder(int variable_count) : variables_(variable_count) {}

  int literal(int var, bool positive) {
    const auto key = std::make_pair(var, positive);
    if (const auto it = literals_.find(key); it != literals_.end()) return it->second;
    const int id = push({NnfKind::Literal, var, positive, -1, -1});
    literals_.emplace(key, id);
    return id;
  }
  int constant(bool value) {
    int& slot = value ? true_ : false_;
    if (slot < 0) slot = push({value ? NnfKind::True : NnfKind::False, -1, true, -1, -1});
    return slot;
  }
  int conjoin(int a, int b) { return push({NnfKind::And, -1, true, a, b}); }
  int disjoin(int a, int b) { return push({NnfKind::Or, -1, true, a, b}); }

  const NnfNode& node(int i) const { return nodes_.at(static_cast<std::size_t>(i)); }
  int size() const { return static_cast<int>(nodes_.size()); }

  /// Circuit of the nodes reachable from `root`, renumbered in order.
  NnfCircuit build(int root) const {
    std::vector<char> keep(nodes_.size(), 0);
    keep[static_cast<std::size_t>(root)] = 1;
    for (std::size_t i = nodes_.size(); i-- > 0;) {
      if (!keep[i] || !nodes_[i].is_gate()) continue;
      keep[static_cast<std::size_t>(nodes_[i].left)] = 1;
      keep[static_cast<std::size_t>(nodes_[i].right)] = 1;
    }
    std::vector<int> renumber(nodes_.size(), -1);
    std::vector<NnfNode> out;
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      if (!keep[i]) continue;
      NnfNode n = nodes_[i];
      if (n.is_gate()) {
        n.left = renumber[static_cast<std::size_t>(n.left)];
        n.right = renumber[static_cast<std::size_t>(n.right)];
      }
      renumber[i] = static_cast<int>(out.size());
      out.push_back(n);
    }
    return NnfCircuit(variables_, std::move(out), renumber[static_cast<std::size_t>(root)]);
  }

 private:
  int push(const NnfNode& n) {
    if (n.is_gate() && (n.left < 0 || n.right < 0 || n.left >= size() || n.right >= size()))
      throw Error("gate input does not exist yet");
    nodes_.push_back(n);
    return size() - 1;
  }

  int variables_;
  std::vector<NnfNode> nodes_;
  std::map<std::pair<int, int>, int> literals_;
  int true_ = -1;
  int false_ = -1;
};

/// Index of the first and gate whose inputs share a variable, if any.
inline std::optional<int> first_non_decomposable(const NnfCircuit& d) {
  for (int i = 0; i < d.size(); ++i) {
    const NnfNode& n = d.node(i);
    if (n.kind == NnfKind::And && d.vars(n.left).intersects(d.vars(n.right))) return i;
  }
  return std::nullopt;
}

inline bool validate_decomposable(const NnfCircuit& d) { return !first_non_decomposable(d); }

inline bool is_smooth(const NnfCircuit& d) {
  for (int i = 0; i < d.size(); ++i) {
    const NnfNode& n = d.node(i);
    if (n.kind == NnfKind::Or && d.vars(n.left) != d.vars(n.right)) return false;
  }
  return true;
}

inline bool has_constants(const NnfCircuit& d) {
  return std::any_of(d.nodes().begin(), d.nodes().end(),
                     [](const NnfNode& n) { return n.kind == NnfKind::True || n.kind == NnfKind::False; });
}

inline std::vector<char> evaluate_all(const NnfCircuit& d, Model a) {
  std::vector<char> val(static_cast<std::size_t>(d.size()), 0);
  for (int i = 0; i < d.size(); ++i) {
    const NnfNode& n = d.node(i);
    char& v = val[static_cast<std::size_t>(i)];
    switch (n.kind) {
      case NnfKind::Literal: v = (((a >> n.var) & 1U) != 0) == n.positive; break;
      case NnfKind::True: v = 1; break;
      case NnfKind::False: v = 0; break;
      case NnfKind::And: v = val[static_cast<std::size_t>(n.left)] && val[static_cast<std::size_t>(n.right)]; break;
      case NnfKind::Or: v = val[static_cast<std::size_t>(n.left)] || val[static_cast<std::size_t>(n.right)]; break;
    }
  }
  return val;
}

inline bool evaluate(const NnfCircuit& d, Model a) { return evaluate_all(d, a)[static_cast<std::size_t>(d.root())] != 0; }

inline bool evaluate(const NnfCircuit& d, const Assignment& a) { return evaluate(d, to_model(a)); }

/// All models over the circuit's full variable range.
inline ModelSet brute_force_models(const NnfCircuit& d) {
  if (d.variable_count() > 24) throw Error("brute_force_models: too many variables");
  ModelSet out;
  for (Model m = 0; m < (Model{1} << d.variable_count()); ++m)
    if (evaluate(d, m)) out.push_back(m);
  return out;
}

namespace detail {

// Rebuilds d bottom-up, letting `leaf` rewrite literal leaves; constants are
// folded away so the result contains a constant only as its root.
template <typename LeafFn>
NnfCircuit rebuild_folding(const NnfCircuit& d, LeafFn leaf) {
  NnfBuilder b(d.variable_count());
  std::vector<int> map(static_cast<std::size_t>(d.size()), -1);
  auto is_const = [&b](int id, NnfKind k) { return b.node(id).kind == k; };
  for (int i = 0; i < d.size(); ++i) {
    const NnfNode& n = d.node(i);
    int& out = map[static_cast<std::size_t>(i)];
    switch (n.kind) {
      case NnfKind::Literal: out = leaf(b, n); break;
      case NnfKind::True: out = b.constant(true); break;
      case NnfKind::False: out = b.constant(false); break;
      case NnfKind::And:
      case NnfKind::Or: {
        const int l = map[static_cast<std::size_t>(n.left)];
        const int r = map[static_cast<std::size_t>(n.right)];
        const bool is_and = n.kind == NnfKind::And;
        const NnfKind absorbing = is_and ? NnfKind::False : NnfKind::True;
        const NnfKind neutral = is_and ? NnfKind::True : NnfKind::False;
        if (is_const(l, absorbing) || is_const(r, absorbing)) out = b.constant(!is_and);
        else if (is_const(l, neutral)) out = r;
        else if (is_const(r, neutral)) out = l;
        else out = is_and ? b.conjoin(l, r) : b.disjoin(l, r);
        break;
      }
    }
  }
  return b.build(map[static_cast<std::size_t>(d.root())]);
}

}  // namespace detail

inline NnfCircuit propagate_constants(const NnfCircuit& d) {
  return detail::rebuild_folding(d, [](NnfBuilder& b, const NnfNode& n) { return b.literal(n.var, n.positive); });
}

/// d conditioned on x_var = value.
inline NnfCircuit condition_dnnf(const NnfCircuit& d, int var, bool value) {
  return detail::rebuild_folding(d, [&](NnfBuilder& b, const NnfNode& n) {
    if (n.var != var) return b.literal(n.var, n.positive);
    return b.constant(n.positive == value);
  });
}

/// Existential projection of a DNNF: both literals of `var` become true.
inline NnfCircuit forget_var(const NnfCircuit& d, int var) {
  return detail::rebuild_folding(d, [&](NnfBuilder& b, const NnfNode& n) {
    return n.var == var ? b.constant(true) : b.literal(n.var, n.positive);
  });
}

/// Swaps the polarity of every literal over a variable in `flips`. Node order
/// and count are unchanged.
inline NnfCircuit rename_flip(const NnfCircuit& d, const Bitset& flips) {
  std::vector<NnfNode> nodes = d.nodes();
  for (auto& n : nodes)
    if (n.kind == NnfKind::Literal && n.var < static_cast<int>(flips.size()) && flips.test(static_cast<std::size_t>(n.var)))
      n.positive = !n.positive;
  return NnfCircuit(d.variable_count(), std::move(nodes), d.root());
}

/// Renames variables through `map` (old id -> new id, -1 for variables that
/// must no longer occur).
inline NnfCircuit remap_variables(const NnfCircuit& d, const std::vector<int>& map, int new_variable_count) {
  std::vector<NnfNode> nodes = d.nodes();
  for (auto& n : nodes) {
    if (n.kind != NnfKind::Literal) continue;
    const int to = map.at(static_cast<std::size_t>(n.var));
    if (to < 0) throw Error("remap_variables: variable " + std::to_string(n.var) + " still occurs");
    n.var = to;
  }
  return NnfCircuit(new_variable_count, std::move(nodes), d.root());
}

/// The sub-circuit below `gate`.
inline NnfCircuit rooted_at(const NnfCircuit& d, int gate) {
  NnfBuilder b(d.variable_count());
  std::vector<int> map(static_cast<std::size_t>(gate) + 1, -1);
  for (int i = 0; i <= gate; ++i) {
    const NnfNode& n = d.node(i);
    int& out = map[static_cast<std::size_t>(i)];
    switch (n.kind) {
      case NnfKind::Literal: out = b.literal(n.var, n.positive); break;
      case NnfKind::True: out = b.constant(true); break;
      case NnfKind::False: out = b.constant(false); break;
      case NnfKind::And: out = b.conjoin(map[static_cast<std::size_t>(n.left)], map[static_cast<std::size_t>(n.right)]); break;
      case NnfKind::Or: out = b.disjoin(map[static_cast<std::size_t>(n.left)], map[static_cast<std::size_t>(n.right)]); break;
    }
  }
  return b.build(map[static_cast<std::size_t>(gate)]);
}

/// Pads each deficient or-input with a conjunction of (x or not x) units for
/// the variables only the other input mentions. Units are shared per
/// variable. A smooth circuit is returned unchanged.
inline NnfCircuit smooth(const NnfCircuit& d) {
  if (is_smooth(d)) return d;
  NnfBuilder b(d.variable_count());
  std::vector<int> map(static_cast<std::size_t>(d.size()), -1);
  std::map<int, int> unit;
  auto unit_of = [&](int var) {
    if (const auto it = unit.find(var); it != unit.end()) return it->second;
    const int u = b.disjoin(b.literal(var, true), b.literal(var, false));
    unit.emplace(var, u);
    return u;
  };
  auto pad = [&](int gate, const Bitset& missing) {
    for (int x : members(missing)) gate = b.conjoin(gate, unit_of(x));
    return gate;
  };
  for (int i = 0; i < d.size(); ++i) {
    const NnfNode& n = d.node(i);
    int& out = map[static_cast<std::size_t>(i)];
    switch (n.kind) {
      case NnfKind::Literal: out = b.literal(n.var, n.positive); break;
      case NnfKind::True: out = b.constant(true); break;
      case NnfKind::False: out = b.constant(false); break;
      case NnfKind::And: out = b.conjoin(map[static_cast<std::size_t>(n.left)], map[static_cast<std::size_t>(n.right)]); break;
      case NnfKind::Or: {
        const Bitset& vl = d.vars(n.left);
        const Bitset& vr = d.vars(n.right);
        const int l = pad(map[static_cast<std::size_t>(n.left)], vr & ~vl);
        const int r = pad(map[static_cast<std::size_t>(n.right)], vl & ~vr);
        out = b.disjoin(l, r);
        break;
      }
    }
  }
  return b.build(map[static_cast<std::size_t>(d.root())]);
}

/// Models of a smooth deterministic DNNF over var(root): literal 1, and =
/// product, or = sum. Without determinism this counts proof trees instead.
inline std::uint64_t model_count_smooth(const NnfCircuit& d) {
  if (!validate_decomposable(d)) throw Error("model_count_smooth: circuit is not decomposable");
  if (!is_smooth(d)) throw Error("model_count_smooth: circuit is not smooth");
  std::vector<unsigned __int128> count(static_cast<std::size_t>(d.size()), 0);
  for (int i = 0; i < d.size(); ++i) {
    const NnfNode& n = d.node(i);
    auto& c = count[static_cast<std::size_t>(i)];
    switch (n.kind) {
      case NnfKind::Literal:
      case NnfKind::True: c = 1; break;
      case NnfKind::False: c = 0; break;
      case NnfKind::And: c = count[static_cast<std::size_t>(n.left)] * count[static_cast<std::size_t>(n.right)]; break;
      case NnfKind::Or: c = count[static_cast<std::size_t>(n.left)] + count[static_cast<std::size_t>(n.right)]; break;
    }
    if (c > std::numeric_limits<std::uint64_t>::max()) throw Error("model_count_smooth: count overflows 64 bits");
  }
  return static_cast<std::uint64_t>(count[static_cast<std::size_t>(d.root())]);
}

/// Count over all variable_count() variables (variables outside var(root) are free).
inline std::uint64_t model_count_all(const NnfCircuit& d) {
  const int free = d.variable_count() - static_cast<int>(d.vars(d.root()).count());
  return model_count_smooth(d) * pow2(free);
}

// ---------------------------------------------------------------------------
// Proof trees

/// Gates of the leftmost proof tree accepting `m` (both inputs at an and,
/// the first true input at an or). Empty if m is not a model.
inline std::vector<int> proof_tree(const NnfCircuit& d, Model m) {
  const auto val = evaluate_all(d, m);
  if (!val[static_cast<std::size_t>(d.root())]) return {};
  std::vector<int> out;
  std::vector<int> stack{d.root()};
  std::vector<char> in(static_cast<std::size_t>(d.size()), 0);
  while (!stack.empty()) {
    const int g = stack.back();
    stack.pop_back();
    if (in[static_cast<std::size_t>(g)]) continue;
    in[static_cast<std::size_t>(g)] = 1;
    out.push_back(g);
    const NnfNode& n = d.node(g);
    if (n.kind == NnfKind::And) {
      stack.push_back(n.right);
      stack.push_back(n.left);
    } else if (n.kind == NnfKind::Or) {
      stack.push_back(val[static_cast<std::size_t>(n.left)] ? n.left : n.right);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Model encoded by a proof tree: the literal leaves it contains (unmentioned variables 0).
inline Model proof_tree_model(const NnfCircuit& d, const std::vector<int>& tree) {
  Model m = 0;
  for (int g : tree) {
    const NnfNode& n = d.node(g);
    if (n.kind == NnfKind::Literal && n.positive) m |= Model{1} << n.var;
  }
  return m;
}

/// Calls `visit` on every proof tree (as a sorted gate list). Exponential.
inline void for_each_proof_tree(const NnfCircuit& d, const std::function<void(const std::vector<int>&)>& visit) {
  // Expand pending gates one at a time; or gates branch.
  std::function<void(std::vector<int>&, std::vector<int>&)> go = [&](std::vector<int>& pending, std::vector<int>& tree) {
    if (pending.empty()) {
      std::vector<int> sorted = tree;
      std::sort(sorted.begin(), sorted.end());
      sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
      visit(sorted);
      return;
    }
    const int g = pending.back();
    pending.pop_back();
    tree.push_back(g);
    const NnfNode& n = d.node(g);
    if (n.kind == NnfKind::False) {
      // dead branch
    } else if (n.kind == NnfKind::And) {
      pending.push_back(n.right);
      pending.push_back(n.left);
      go(pending, tree);
      pending.pop_back();
      pending.pop_back();
    } else if (n.kind == NnfKind::Or) {
      for (int child : {n.left, n.right}) {
        pending.push_back(child);
        go(pending, tree);
        pending.pop_back();
      }
    } else {
      go(pending, tree);
    }
    tree.pop_back();
    pending.push_back(g);
  };
  std::vector<int> pending{d.root()}, tree;
  go(pending, tree);
}

}  // namespace twdnnf
