#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "twdnnf/cnf.hpp"

namespace twdnnf {

struct ResolutionStep {
  int id = 0;
  Clause clause;
  std::vector<int> antecedents;  // empty for an axiom
  std::optional<int> pivot;

  bool is_axiom() const { return antecedents.empty(); }
  friend bool operator==(const ResolutionStep&, const ResolutionStep&) = default;
};

struct ResolutionTrace {
  std::vector<ResolutionStep> steps;

  int length() const { return static_cast<int>(steps.size()); }
  friend bool operator==(const ResolutionTrace&, const ResolutionTrace&) = default;
};

/// Arcs from each derived step to its antecedents, labelled by the pivot.
struct RefutationDag {
  struct Arc {
    int from = 0;  // index into the trace
    int to = 0;
    int pivot = -1;
  };
  std::vector<Arc> arcs;
  int root = -1;
};

/// (C1 - {x}) + (C2 - {not x}) with x taken positively from whichever side holds it.
inline std::optional<Clause> resolve(const Clause& a, const Clause& b, int pivot) {
  const Literal pos{pivot, true}, neg{pivot, false};
  const Clause* p = nullptr;
  const Clause* n = nullptr;
  if (clause_contains(a, pos) && clause_contains(b, neg)) {
    p = &a;
    n = &b;
  } else if (clause_contains(b, pos) && clause_contains(a, neg)) {
    p = &b;
    n = &a;
  } else {
    return std::nullopt;
  }
  std::vector<Literal> out;
  for (const Literal& l : *p)
    if (!(l == pos)) out.push_back(l);
  for (const Literal& l : *n)
    if (!(l == neg)) out.push_back(l);
  return make_clause(std::move(out));
}

/// The pivot under which `a` and `b` resolve to exactly `result`, if any.
inline std::optional<int> infer_pivot(const Clause& a, const Clause& b, const Clause& result) {
  for (const Literal& l : a) {
    if (!clause_contains(b, l.negated())) continue;
    const auto r = resolve(a, b, l.var);
    if (r && *r == result) return l.var;
  }
  return std::nullopt;
}

struct RefutationCheck {
  bool valid = false;
  int failing_step = -1;  // step id
  std::string message;
  std::vector<int> tautologies;  // ids of derived steps whose clause is a tautology

  explicit operator bool() const { return valid; }
};

inline RefutationCheck check_refutation(const Cnf& cnf, const ResolutionTrace& trace) {
  RefutationCheck out;
  auto fail = [&out](int id, std::string msg) {
    out.valid = false;
    out.failing_step = id;
    out.message = "step " + std::to_string(id) + ": " + std::move(msg);
    return out;
  };
  if (trace.steps.empty()) return fail(-1, "empty trace");
  std::set<Clause> inputs;
  for (const auto& c : cnf.clauses) inputs.insert(make_clause(c));
  std::map<int, std::size_t> index;
  int last_id = -1;
  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    const auto& s = trace.steps[i];
    if (s.id <= last_id) return fail(s.id, "ids are not strictly increasing");
    last_id = s.id;
    for (const Literal& l : s.clause)
      if (l.var < 0 || l.var >= cnf.variable_count) return fail(s.id, "literal out of range");
    if (make_clause(s.clause) != s.clause) return fail(s.id, "clause is not a normalized literal set");
    if (s.is_axiom()) {
      if (s.pivot) return fail(s.id, "axiom carries a pivot");
      if (!inputs.count(s.clause)) return fail(s.id, "axiom is not a clause of the formula");
    } else {
      if (s.antecedents.size() != 2) return fail(s.id, "derived step needs exactly two antecedents");
      const auto a = index.find(s.antecedents[0]);
      const auto b = index.find(s.antecedents[1]);
      if (a == index.end() || b == index.end()) return fail(s.id, "antecedent does not precede the step");
      const Clause& ca = trace.steps[a->second].clause;
      const Clause& cb = trace.steps[b->second].clause;
      if (!s.pivot) return fail(s.id, "derived step has no pivot");
      const auto r = resolve(ca, cb, *s.pivot);
      if (!r) return fail(s.id, "antecedents do not clash on the pivot");
      if (*r != s.clause) return fail(s.id, "clause is not the resolvent of its antecedents");
      if (is_tautology(s.clause)) out.tautologies.push_back(s.id);
    }
    index[s.id] = i;
  }
  if (!trace.steps.back().clause.empty()) return fail(trace.steps.back().id, "final clause is not empty");
  out.valid = true;
  return out;
}

inline RefutationDag refutation_dag(const ResolutionTrace& trace) {
  RefutationDag dag;
  std::map<int, int> index;
  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    const auto& s = trace.steps[i];
    for (int a : s.antecedents) {
      const auto it = index.find(a);
      if (it == index.end()) throw Error("refutation_dag: dangling antecedent");
      dag.arcs.push_back({static_cast<int>(i), it->second, s.pivot.value_or(-1)});
    }
    index[s.id] = static_cast<int>(i);
  }
  dag.root = trace.steps.empty() ? -1 : static_cast<int>(trace.steps.size()) - 1;
  return dag;
}

/// No path from the final step to an axiom resolves twice on one variable.
/// Each step collects the pivots seen on any path reaching it; a step whose
/// own pivot is already in that set closes a repeating path.
inline bool check_regularity(const ResolutionTrace& trace) {
  if (trace.steps.empty()) return true;
  int vars = 0;
  for (const auto& s : trace.steps) {
    for (const Literal& l : s.clause) vars = std::max(vars, l.var + 1);
    if (s.pivot) vars = std::max(vars, *s.pivot + 1);
  }
  std::map<int, std::size_t> index;
  for (std::size_t i = 0; i < trace.steps.size(); ++i) index[trace.steps[i].id] = i;
  std::vector<Bitset> seen(trace.steps.size(), Bitset(static_cast<std::size_t>(vars)));
  std::vector<char> reached(trace.steps.size(), 0);
  reached.back() = 1;
  for (std::size_t i = trace.steps.size(); i-- > 0;) {
    if (!reached[i]) continue;
    const auto& s = trace.steps[i];
    if (s.is_axiom() || !s.pivot) continue;
    const auto x = static_cast<std::size_t>(*s.pivot);
    if (seen[i].test(x)) return false;
    Bitset below = seen[i];
    below.set(x);
    for (int a : s.antecedents) {
      const auto j = index.at(a);
      seen[j] |= below;
      reached[j] = 1;
    }
  }
  return true;
}

namespace detail {

class Dpll {
 public:
  explicit Dpll(const Cnf& cnf) : cnf_(cnf), value_(static_cast<std::size_t>(cnf.variable_count), -1) {
    for (auto& c : cnf_.clauses) c = make_clause(c);
  }

  ResolutionTrace run() {
    const int root = search();
    // Keep steps reachable from the root, renumbered in creation order.
    std::vector<char> keep(store_.size(), 0);
    keep[static_cast<std::size_t>(root)] = 1;
    for (std::size_t i = store_.size(); i-- > 0;)
      if (keep[i])
        for (int a : store_[i].antecedents) keep[static_cast<std::size_t>(a)] = 1;
    std::vector<int> renumber(store_.size(), -1);
    ResolutionTrace trace;
    for (std::size_t i = 0; i < store_.size(); ++i) {
      if (!keep[i]) continue;
      renumber[i] = static_cast<int>(trace.steps.size()) + 1;
      ResolutionStep s{renumber[i], store_[i].clause, {}, store_[i].pivot};
      for (int a : store_[i].antecedents) s.antecedents.push_back(renumber[static_cast<std::size_t>(a)]);
      trace.steps.push_back(std::move(s));
    }
    return trace;
  }

 private:
  struct Node {
    Clause clause;
    std::vector<int> antecedents;  // store indices
    std::optional<int> pivot;
    Bitset pivots;  // every pivot used in the sub-derivation
  };

  bool literal_false(const Literal& l) const {
    const int v = value_[static_cast<std::size_t>(l.var)];
    return v >= 0 && (v == 1) != l.positive;
  }
  bool literal_true(const Literal& l) const {
    const int v = value_[static_cast<std::size_t>(l.var)];
    return v >= 0 && (v == 1) == l.positive;
  }

  int axiom(std::size_t clause_index) {
    const auto it = axiom_of_.find(clause_index);
    if (it != axiom_of_.end()) return it->second;
    store_.push_back({cnf_.clauses[clause_index], {}, std::nullopt, Bitset(static_cast<std::size_t>(cnf_.variable_count))});
    const int id = static_cast<int>(store_.size()) - 1;
    axiom_of_[clause_index] = id;
    return id;
  }

  int choose_variable() const {
    std::size_t shortest = static_cast<std::size_t>(-1);
    std::vector<int> count(static_cast<std::size_t>(cnf_.variable_count), 0);
    for (const auto& c : cnf_.clauses) {
      if (std::any_of(c.begin(), c.end(), [&](const Literal& l) { return literal_true(l); })) continue;
      std::size_t open = 0;
      for (const Literal& l : c) open += value_[static_cast<std::size_t>(l.var)] < 0 ? 1 : 0;
      if (open < shortest) {
        shortest = open;
        std::fill(count.begin(), count.end(), 0);
      }
      if (open == shortest)
        for (const Literal& l : c)
          if (value_[static_cast<std::size_t>(l.var)] < 0) ++count[static_cast<std::size_t>(l.var)];
    }
    if (shortest == static_cast<std::size_t>(-1)) throw Error("dpll_refute: formula is satisfiable");
    return static_cast<int>(std::max_element(count.begin(), count.end()) - count.begin());
  }

  int search() {
    std::optional<std::size_t> falsified;
    for (std::size_t i = 0; i < cnf_.clauses.size(); ++i) {
      const auto& c = cnf_.clauses[i];
      if (!std::all_of(c.begin(), c.end(), [&](const Literal& l) { return literal_false(l); })) continue;
      if (!falsified || c.size() < cnf_.clauses[*falsified].size()) falsified = i;
    }
    if (falsified) return axiom(*falsified);

    const int x = choose_variable();
    const auto xi = static_cast<std::size_t>(x);
    value_[xi] = 0;
    path_.push_back(x);
    const int c0 = search();
    if (!clause_contains(store_[static_cast<std::size_t>(c0)].clause, {x, true})) {
      value_[xi] = -1;
      path_.pop_back();
      return c0;
    }
    value_[xi] = 1;
    const int c1 = search();
    value_[xi] = -1;
    path_.pop_back();
    if (!clause_contains(store_[static_cast<std::size_t>(c1)].clause, {x, false})) return c1;

    Clause r = *resolve(store_[static_cast<std::size_t>(c0)].clause, store_[static_cast<std::size_t>(c1)].clause, x);
    Bitset pivots = store_[static_cast<std::size_t>(c0)].pivots | store_[static_cast<std::size_t>(c1)].pivots;
    pivots.set(xi);
    Bitset on_path(static_cast<std::size_t>(cnf_.variable_count));
    for (int y : path_) on_path.set(static_cast<std::size_t>(y));
    const auto shared = derived_.find(r);
    if (shared != derived_.end()) {
      for (int id : shared->second)
        if (!store_[static_cast<std::size_t>(id)].pivots.intersects(on_path)) return id;
    }
    store_.push_back({r, {c0, c1}, x, std::move(pivots)});
    const int id = static_cast<int>(store_.size()) - 1;
    derived_[r].push_back(id);
    return id;
  }

  Cnf cnf_;
  std::vector<int> value_;
  std::vector<int> path_;
  std::vector<Node> store_;
  std::map<std::size_t, int> axiom_of_;
  std::map<Clause, std::vector<int>> derived_;
};

}  // namespace detail

/// Regular refutation read off a DPLL search tree: a node branching on x
/// resolves its children's clauses on x when both mention it, otherwise
/// passes up the child clause that does not. Identical derived clauses are
/// shared when that cannot repeat a pivot on any path.
inline ResolutionTrace dpll_refute(const Cnf& cnf) {
  if (cnf.variable_count <= kBruteForceEdgeCap && !cnf.brute_force_models().empty())
    throw Error("dpll_refute: formula is satisfiable");
  return detail::Dpll(cnf).run();
}

}  // namespace twdnnf
