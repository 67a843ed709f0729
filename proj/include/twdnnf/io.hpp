#pragma once

#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "twdnnf/bounds.hpp"
#include "twdnnf/bp.hpp"
#include "twdnnf/cnf.hpp"
#include "twdnnf/nnf.hpp"
#include "twdnnf/resolution.hpp"
#include "twdnnf/tseitin.hpp"

namespace twdnnf::io {

namespace detail {

// Non-empty lines with comments removed, split into tokens.
inline std::vector<std::vector<std::string>> token_lines(std::istream& in, const std::string& comment) {
  std::vector<std::vector<std::string>> out;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ss(line);
    std::vector<std::string> tokens;
    for (std::string tok; ss >> tok;) tokens.push_back(tok);
    if (tokens.empty() || tokens.front().rfind(comment, 0) == 0) continue;
    out.push_back(std::move(tokens));
  }
  return out;
}

inline long long to_int(const std::string& s) {
  std::size_t pos = 0;
  long long v = 0;
  try {
    v = std::stoll(s, &pos);
  } catch (const std::exception&) {
    throw Error("expected an integer, got '" + s + "'");
  }
  if (pos != s.size()) throw Error("expected an integer, got '" + s + "'");
  return v;
}

inline int to_index(const std::string& s, int lo, int hi, const char* what) {
  const long long v = to_int(s);
  if (v < lo || v > hi) throw Error(std::string(what) + " " + s + " out of range");
  return static_cast<int>(v);
}

inline void expect(bool cond, const std::string& msg) {
  if (!cond) throw Error(msg);
}

inline std::vector<Edge> read_edges(const std::vector<std::vector<std::string>>& lines, std::size_t from, int n, int m) {
  std::vector<Edge> edges;
  for (std::size_t i = from; i < lines.size(); ++i) {
    const auto& t = lines[i];
    expect(t.size() == 3 && t[0] == "e", "expected an edge line 'e u v'");
    edges.push_back({to_index(t[1], 1, n, "vertex") - 1, to_index(t[2], 1, n, "vertex") - 1});
  }
  expect(static_cast<int>(edges.size()) == m, "edge count differs from the header");
  return edges;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Graphs and Tseitin formulas

inline void write_graph(std::ostream& out, const Graph& g) {
  out << "p graph " << g.vertex_count() << ' ' << g.edge_count() << '\n';
  for (const Edge& e : g.edges()) out << "e " << e.u + 1 << ' ' << e.v + 1 << '\n';
}

inline Graph read_graph(std::istream& in) {
  const auto lines = detail::token_lines(in, "#");
  detail::expect(!lines.empty() && lines[0].size() == 4 && lines[0][0] == "p" && lines[0][1] == "graph",
                 "expected header 'p graph <n> <m>'");
  const int n = detail::to_index(lines[0][2], 1, 1 << 20, "vertex count");
  const int m = detail::to_index(lines[0][3], 0, 1 << 24, "edge count");
  return Graph(n, detail::read_edges(lines, 1, n, m));
}

inline void write_tseitin(std::ostream& out, const Graph& g, const Charge& c) {
  out << "p tseitin " << g.vertex_count() << ' ' << g.edge_count() << '\n' << 'g';
  for (int v = 0; v < g.vertex_count(); ++v) out << ' ' << (c[v] ? 1 : 0);
  out << '\n';
  for (const Edge& e : g.edges()) out << "e " << e.u + 1 << ' ' << e.v + 1 << '\n';
}

inline TseitinFormula read_tseitin(std::istream& in) {
  const auto lines = detail::token_lines(in, "#");
  detail::expect(!lines.empty() && lines[0].size() == 4 && lines[0][0] == "p" && lines[0][1] == "tseitin",
                 "expected header 'p tseitin <n> <m>'");
  const int n = detail::to_index(lines[0][2], 1, 1 << 20, "vertex count");
  const int m = detail::to_index(lines[0][3], 0, 1 << 24, "edge count");
  detail::expect(lines.size() >= 2 && lines[1][0] == "g" && static_cast<int>(lines[1].size()) == n + 1,
                 "expected charge line 'g <b1> ... <bn>'");
  Charge c = Charge::zero(n);
  for (int v = 0; v < n; ++v)
    if (detail::to_index(lines[1][static_cast<std::size_t>(v) + 1], 0, 1, "charge bit")) c.toggle(v);
  return TseitinFormula(Graph(n, detail::read_edges(lines, 2, n, m)), c);
}

// ---------------------------------------------------------------------------
// DIMACS CNF

inline void write_cnf(std::ostream& out, const Cnf& cnf) {
  out << "p cnf " << cnf.variable_count << ' ' << cnf.clauses.size() << '\n';
  for (const auto& c : cnf.clauses) {
    for (const Literal& l : c) out << l.dimacs() << ' ';
    out << "0\n";
  }
}

inline Cnf read_cnf(std::istream& in) {
  const auto lines = detail::token_lines(in, "c");
  detail::expect(!lines.empty() && lines[0].size() == 4 && lines[0][0] == "p" && lines[0][1] == "cnf",
                 "expected header 'p cnf <vars> <clauses>'");
  Cnf cnf;
  cnf.variable_count = detail::to_index(lines[0][2], 0, 1 << 24, "variable count");
  const int count = detail::to_index(lines[0][3], 0, 1 << 28, "clause count");
  std::vector<Literal> current;
  for (std::size_t i = 1; i < lines.size(); ++i)
    for (const auto& tok : lines[i]) {
      const auto lit = detail::to_int(tok);
      if (lit == 0) {
        cnf.clauses.push_back(make_clause(std::move(current)));
        current.clear();
        continue;
      }
      detail::expect(std::llabs(lit) <= cnf.variable_count, "literal " + tok + " out of range");
      current.push_back(Literal::from_dimacs(static_cast<int>(lit)));
    }
  detail::expect(current.empty(), "last clause is not terminated by 0");
  detail::expect(static_cast<int>(cnf.clauses.size()) == count, "clause count differs from the header");
  return cnf;
}

// ---------------------------------------------------------------------------
// NNF (c2d layout)

inline void write_nnf(std::ostream& out, const NnfCircuit& d) {
  int arcs = 0;
  for (const auto& n : d.nodes()) arcs += n.is_gate() ? 2 : 0;
  out << "nnf " << d.size() << ' ' << arcs << ' ' << d.variable_count() << '\n';
  for (const auto& n : d.nodes()) {
    switch (n.kind) {
      case NnfKind::Literal: out << "L " << (n.positive ? n.var + 1 : -(n.var + 1)) << '\n'; break;
      case NnfKind::True: out << "A 0\n"; break;
      case NnfKind::False: out << "O 0 0\n"; break;
      case NnfKind::And: out << "A 2 " << n.left << ' ' << n.right << '\n'; break;
      case NnfKind::Or: out << "O 0 2 " << n.left << ' ' << n.right << '\n'; break;
    }
  }
}

/// Reads c2d-style NNF. Gates of fan-in above two become left-leaning chains
/// and fan-in-one gates alias their input, so only files in binary form
/// round-trip unchanged.
inline NnfCircuit read_nnf(std::istream& in) {
  const auto lines = detail::token_lines(in, "c");
  detail::expect(!lines.empty() && lines[0].size() == 4 && lines[0][0] == "nnf", "expected header 'nnf <nodes> <edges> <vars>'");
  const int count = detail::to_index(lines[0][1], 1, 1 << 28, "node count");
  const int vars = detail::to_index(lines[0][3], 0, 1 << 24, "variable count");
  detail::expect(static_cast<int>(lines.size()) == count + 1, "node count differs from the header");
  std::vector<NnfNode> nodes;
  std::vector<int> alias;  // file node -> circuit node
  auto push = [&nodes](const NnfNode& n) {
    nodes.push_back(n);
    return static_cast<int>(nodes.size()) - 1;
  };
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto& t = lines[i];
    const int self = static_cast<int>(i) - 1;
    if (t[0] == "L") {
      detail::expect(t.size() == 2, "literal line needs one literal");
      const auto lit = detail::to_int(t[1]);
      detail::expect(lit != 0 && std::llabs(lit) <= vars, "literal out of range");
      alias.push_back(push({NnfKind::Literal, static_cast<int>(std::llabs(lit)) - 1, lit > 0, -1, -1}));
      continue;
    }
    detail::expect(t[0] == "A" || t[0] == "O", "unknown node type '" + t[0] + "'");
    const bool is_and = t[0] == "A";
    const std::size_t first = is_and ? 2 : 3;
    detail::expect(t.size() >= first, "truncated gate line");
    const int fanin = detail::to_index(t[first - 1], 0, 1 << 28, "fan-in");
    detail::expect(t.size() == first + static_cast<std::size_t>(fanin), "fan-in differs from the listed inputs");
    if (fanin == 0) {
      alias.push_back(push({is_and ? NnfKind::True : NnfKind::False, -1, true, -1, -1}));
      continue;
    }
    int acc = alias.at(static_cast<std::size_t>(detail::to_index(t[first], 0, self - 1, "gate input")));
    for (int j = 1; j < fanin; ++j) {
      const int next = alias.at(static_cast<std::size_t>(detail::to_index(t[first + static_cast<std::size_t>(j)], 0, self - 1, "gate input")));
      acc = push({is_and ? NnfKind::And : NnfKind::Or, -1, true, acc, next});
    }
    alias.push_back(acc);
  }
  return NnfCircuit(vars, std::move(nodes), alias.back());
}

// ---------------------------------------------------------------------------
// Branching programs

inline void write_bp(std::ostream& out, const BranchingProgram& b) {
  out << "source " << b.node(b.source).label << '\n';
  for (const auto& n : b.nodes) {
    if (n.is_sink()) {
      out << "sink " << n.label << ' ' << n.vertex + 1 << '\n';
    } else {
      out << "node " << n.label << ' ' << n.variable + 1 << ' ' << b.node(n.low).label << ' ' << b.node(n.high).label << '\n';
    }
  }
}

inline BranchingProgram read_bp(std::istream& in) {
  const auto lines = detail::token_lines(in, "#");
  detail::expect(!lines.empty() && lines[0].size() == 2 && lines[0][0] == "source", "expected 'source <id>' first");
  const auto source_label = detail::to_int(lines[0][1]);
  BranchingProgram b;
  std::map<long long, int> index;
  std::vector<std::pair<long long, long long>> children;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto& t = lines[i];
    BpNode n;
    const auto label = detail::to_int(t.at(1));
    detail::expect(label >= 0 && label <= (1LL << 30), "node id out of range");
    n.label = static_cast<int>(label);
    if (t[0] == "sink") {
      detail::expect(t.size() == 3, "expected 'sink <id> <vertex>'");
      n.kind = BpNode::Kind::Sink;
      n.vertex = detail::to_index(t[2], 1, 1 << 20, "vertex") - 1;
      children.push_back({-1, -1});
    } else {
      detail::expect(t[0] == "node" && t.size() == 5, "expected 'node <id> <edge-var> <child0> <child1>'");
      n.kind = BpNode::Kind::Decision;
      n.variable = detail::to_index(t[2], 1, 1 << 24, "edge variable") - 1;
      children.push_back({detail::to_int(t[3]), detail::to_int(t[4])});
    }
    detail::expect(index.emplace(label, static_cast<int>(b.nodes.size())).second, "duplicate node id " + t[1]);
    b.nodes.push_back(n);
  }
  for (std::size_t i = 0; i < b.nodes.size(); ++i) {
    if (b.nodes[i].is_sink()) continue;
    const auto lo = index.find(children[i].first), hi = index.find(children[i].second);
    detail::expect(lo != index.end() && hi != index.end(), "decision node refers to an unknown child");
    b.nodes[i].low = lo->second;
    b.nodes[i].high = hi->second;
  }
  const auto src = index.find(source_label);
  detail::expect(src != index.end(), "source refers to an unknown node");
  b.source = src->second;
  return b;
}

// ---------------------------------------------------------------------------
// Resolution traces

inline void write_trace(std::ostream& out, const ResolutionTrace& t) {
  for (const auto& s : t.steps) {
    out << s.id << ' ';
    for (const Literal& l : s.clause) out << l.dimacs() << ' ';
    out << '0';
    for (int a : s.antecedents) out << ' ' << a;
    out << " 0\n";
  }
}

/// Pivots are not stored in the format; they are recovered from the clauses.
inline ResolutionTrace read_trace(std::istream& in) {
  const auto lines = detail::token_lines(in, "c");
  ResolutionTrace t;
  std::map<int, std::size_t> index;
  for (const auto& tok : lines) {
    ResolutionStep s;
    s.id = detail::to_index(tok.at(0), 1, 1 << 30, "step id");
    std::size_t i = 1;
    std::vector<Literal> lits;
    for (; i < tok.size() && tok[i] != "0"; ++i) lits.push_back(Literal::from_dimacs(static_cast<int>(detail::to_int(tok[i]))));
    detail::expect(i < tok.size(), "clause is not terminated by 0");
    s.clause = make_clause(std::move(lits));
    for (++i; i < tok.size() && tok[i] != "0"; ++i) s.antecedents.push_back(detail::to_index(tok[i], 1, 1 << 30, "antecedent"));
    detail::expect(i + 1 == tok.size(), "antecedent list is not terminated by a final 0");
    if (s.antecedents.size() == 2) {
      const auto a = index.find(s.antecedents[0]), b = index.find(s.antecedents[1]);
      if (a != index.end() && b != index.end())
        s.pivot = infer_pivot(t.steps[a->second].clause, t.steps[b->second].clause, s.clause);
    }
    index[s.id] = t.steps.size();
    t.steps.push_back(std::move(s));
  }
  return t;
}

// ---------------------------------------------------------------------------
// Lower-bound certificates

namespace detail {

inline std::string join(const std::vector<int>& xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? " " : "") + std::to_string(xs[i]);
  return s;
}

inline std::vector<int> split_ints(const std::string& s) {
  std::istringstream ss(s);
  std::vector<int> out;
  for (std::string tok; ss >> tok;) out.push_back(static_cast<int>(to_int(tok)));
  return out;
}

}  // namespace detail

/// Flat `key value...` lines in a fixed order. Vertex lists of the witness
/// refer to the minor H; `minor-trace` lists steps as `kind:a:b:c`.
inline void write_certificate(std::ostream& out, const LowerBoundCertificate& c) {
  out << "graph-hash " << std::hex << c.graph_hash << std::dec << '\n';
  out << "vertices " << c.vertices << '\n';
  out << "edges " << c.edges << '\n';
  out << "treewidth " << c.treewidth << '\n';
  out << "treewidth-provenance " << c.treewidth_provenance << '\n';
  out << "trivial " << (c.trivial ? 1 : 0) << '\n';
  if (!c.trivial) {
    const Graph& h = c.minor.graph;
    out << "minor-vertices " << h.vertex_count() << '\n';
    std::vector<int> ends;
    for (const Edge& e : h.edges()) {
      ends.push_back(e.u);
      ends.push_back(e.v);
    }
    out << "minor-edges " << detail::join(ends) << '\n';
    out << "minor-vertex-origin " << detail::join(c.minor.vertex_origin) << '\n';
    out << "minor-edge-variable " << detail::join(c.minor.edge_variable) << '\n';
    out << "minor-trace";
    for (const auto& s : c.minor.trace)
      out << ' ' << static_cast<int>(s.kind) << ':' << s.variable << ':' << s.vertex << ':' << s.forgotten;
    out << '\n';
    out << "minor-max-degree " << c.minor_max_degree << '\n';
    out << "branchwidth-lower " << c.branchwidth_lower << '\n';
    out << "cut-side " << detail::join(c.cut_side) << '\n';
    out << "boundary " << detail::join(c.boundary) << '\n';
    out << "independent " << detail::join(c.independent) << '\n';
    out << "safe " << detail::join(c.safe) << '\n';
    out << "cap-exponent " << c.cap_exponent << '\n';
  }
  out << "k " << c.k << '\n';
  out << "bound " << c.bound() << '\n';
}

inline LowerBoundCertificate read_certificate(std::istream& in) {
  std::map<std::string, std::string> kv;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto sp = line.find(' ');
    kv[line.substr(0, sp)] = sp == std::string::npos ? "" : line.substr(sp + 1);
  }
  auto get = [&kv](const std::string& key) -> const std::string& {
    const auto it = kv.find(key);
    if (it == kv.end()) throw Error("certificate lacks '" + key + "'");
    return it->second;
  };
  auto get_int = [&](const std::string& key) { return static_cast<int>(detail::to_int(get(key))); };
  LowerBoundCertificate c;
  c.graph_hash = std::stoull(get("graph-hash"), nullptr, 16);
  c.vertices = get_int("vertices");
  c.edges = get_int("edges");
  c.treewidth = get_int("treewidth");
  c.treewidth_provenance = get("treewidth-provenance");
  c.trivial = get_int("trivial") != 0;
  if (!c.trivial) {
    const auto ends = detail::split_ints(get("minor-edges"));
    detail::expect(ends.size() % 2 == 0, "minor-edges needs vertex pairs");
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < ends.size(); i += 2) edges.push_back({ends[i], ends[i + 1]});
    c.minor.graph = Graph(get_int("minor-vertices"), std::move(edges));
    c.minor.vertex_origin = detail::split_ints(get("minor-vertex-origin"));
    c.minor.edge_variable = detail::split_ints(get("minor-edge-variable"));
    std::istringstream ss(get("minor-trace"));
    for (std::string tok; ss >> tok;) {
      std::replace(tok.begin(), tok.end(), ':', ' ');
      const auto f = detail::split_ints(tok);
      detail::expect(f.size() == 4 && f[0] >= 0 && f[0] <= 2, "malformed minor-trace step");
      c.minor.trace.push_back({static_cast<MinorStep::Kind>(f[0]), f[1], f[2], f[3]});
    }
    c.minor_max_degree = get_int("minor-max-degree");
    c.branchwidth_lower = get_int("branchwidth-lower");
    c.cut_side = detail::split_ints(get("cut-side"));
    c.boundary = detail::split_ints(get("boundary"));
    c.independent = detail::split_ints(get("independent"));
    c.safe = detail::split_ints(get("safe"));
    c.cap_exponent = get_int("cap-exponent");
  }
  c.k = get_int("k");
  if (std::to_string(c.bound()) != get("bound")) throw Error("certificate bound disagrees with k");
  return c;
}

// ---------------------------------------------------------------------------
// Files

template <typename T, typename Reader>
T read_file(const std::string& path, Reader reader) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  return reader(in);
}

template <typename Writer>
std::string to_text(Writer writer) {
  std::ostringstream out;
  writer(out);
  return out.str();
}

}  // namespace twdnnf::io
