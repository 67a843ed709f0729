#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "twdnnf/twdnnf.hpp"

using namespace twdnnf;

namespace {

int parse_int(const std::string& s, const char* what) {
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || s.empty()) throw Error(std::string("invalid ") + what + " '" + s + "'");
  return static_cast<int>(v);
}

std::uint64_t parse_u64(const std::string& s) {
  std::size_t used = 0;
  std::uint64_t v = 0;
  try {
    v = std::stoull(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || s.empty() || s[0] == '-') throw Error("invalid seed '" + s + "'");
  return v;
}

Graph generate(const std::string& family, const std::vector<std::string>& p) {
  auto need = [&](std::size_t k) {
    if (p.size() != k) throw Error("family '" + family + "' takes " + std::to_string(k) + " parameter(s)");
  };
  if (family == "cycle") return need(1), families::cycle(parse_int(p[0], "n"));
  if (family == "path") return need(1), families::path(parse_int(p[0], "n"));
  if (family == "complete") return need(1), families::complete(parse_int(p[0], "n"));
  if (family == "grid") return need(2), families::grid(parse_int(p[0], "rows"), parse_int(p[1], "cols"));
  if (family == "wheel") return need(1), families::wheel(parse_int(p[0], "n"));
  if (family == "cube") return need(1), families::cube(parse_int(p[0], "d"));
  if (family == "random-regular") {
    need(3);
    return families::random_regular(parse_int(p[0], "n"), parse_int(p[1], "d"), parse_u64(p[2]));
  }
  throw Error("unknown family '" + family + "'");
}

/// zero | odd-at <v> (1-indexed) | random-sat [seed] | random-unsat [seed]; a
/// single token may also use ':' or '=' before its argument.
Charge parse_charge(const Graph& g, std::vector<std::string> spec, std::uint64_t default_seed) {
  if (spec.size() == 1) {
    const auto cut = spec[0].find_first_of(":=");
    if (cut != std::string::npos) spec = {spec[0].substr(0, cut), spec[0].substr(cut + 1)};
  }
  if (spec.empty()) throw Error("empty charge spec");
  const std::string& kind = spec[0];
  if (kind == "zero" && spec.size() == 1) return Charge::zero(g.vertex_count());
  if (kind == "odd-at" && spec.size() == 2) {
    const int v = parse_int(spec[1], "vertex");
    if (v < 1 || v > g.vertex_count()) throw Error("odd-at vertex out of range (vertices are 1-indexed)");
    return Charge::unit(g.vertex_count(), v - 1);
  }
  if ((kind == "random-sat" || kind == "random-unsat") && spec.size() <= 2) {
    const std::uint64_t seed = spec.size() == 2 ? parse_u64(spec[1]) : default_seed;
    return random_charge(g, seed, kind == "random-sat");
  }
  throw Error("invalid charge spec '" + kind + "'");
}

Graph load_graph(const std::string& path) { return io::read_file<Graph>(path, io::read_graph); }

template <typename Writer>
void emit(const std::string& out, Writer w) {
  if (out.empty()) {
    w(std::cout);
    return;
  }
  std::ofstream f(out);
  if (!f) throw Error("cannot write '" + out + "'");
  w(f);
}

std::string csv_header() {
  return "graph,n,m,tw,tw_provenance,bp_size,refutation_length,dnnf_size,dnnf_gates,bound_exponent,verdict,model_count";
}

std::string pipeline_row(const std::string& name, const Graph& g, const Charge& c, const Charge& target, int cap) {
  if (TseitinFormula(g, c).is_satisfiable()) throw Error(name + ": --charge must give an unsatisfiable formula");
  const auto tw = estimate_treewidth(g);
  const auto r = pipeline(g, c, target, cap);
  std::string refutation;
  if (g.edge_count() <= cap && g.max_degree() <= kDefaultCnfDegreeCap)
    refutation = std::to_string(dpll_refute(to_cnf(TseitinFormula(g, c))).length());
  const auto cert = certified_lower_bound(g);
  std::string verdict = "unchecked";
  if (r.equivalent) verdict = *r.equivalent ? "equivalent" : "not-equivalent";
  std::ostringstream row;
  row << name << ',' << g.vertex_count() << ',' << g.edge_count() << ',' << tw.value() << ',' << tw.provenance() << ','
      << r.bp_size << ',' << refutation << ',' << r.dnnf_size << ',' << r.dnnf_gates << ',' << cert.k << ',' << verdict << ','
      << (r.model_count ? std::to_string(*r.model_count) : std::string());
  if (r.equivalent && !*r.equivalent) throw Error(name + ": compiled circuit is not equivalent\n" + row.str());
  return row.str();
}

int fail(const std::string& msg) {
  std::cerr << "twbench: " << msg << '\n';
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tseitin formulas, branching programs and DNNF compilation"};
  app.require_subcommand(1);

  std::string out;
  std::uint64_t seed = 1;
  int cap = kDefaultDeskScaleCap;

  auto* gen = app.add_subcommand("generate", "Write a graph from a family: cycle n | path n | complete n | grid r c | wheel n | cube d | random-regular n d seed");
  std::string family;
  std::vector<std::string> params;
  gen->add_option("family", family)->required();
  gen->add_option("params", params);
  gen->add_option("--out", out, "Output file (default: standard output)");

  auto* pipe = app.add_subcommand("pipeline", "Build, compile and verify; one CSV row per graph");
  std::vector<std::string> graphs, charge_spec{"odd-at", "1"}, target_spec{"zero"};
  pipe->add_option("--graph", graphs, "Graph file (repeatable)")->required()->take_all();
  pipe->add_option("--charge", charge_spec, "Unsatisfiable charge for the branching program")->expected(1, 2);
  pipe->add_option("--target", target_spec, "Satisfiable charge of the compiled formula")->expected(1, 2);
  pipe->add_option("--seed", seed, "Default seed for random charges");
  pipe->add_option("--out", out, "CSV output file (default: standard output)");
  pipe->add_option("--desk-scale-cap", cap, "Largest edge count verified by brute force");

  auto* conv = app.add_subcommand("convert", "Write one artifact derived from a graph");
  std::string graph_file, format;
  conv->add_option("--graph", graph_file)->required();
  conv->add_option("--format", format)->required()->check(CLI::IsMember({"graph", "tseitin", "cnf", "nnf", "bp", "trace"}));
  conv->add_option("--charge", charge_spec)->expected(1, 2);
  conv->add_option("--target", target_spec)->expected(1, 2);
  conv->add_option("--seed", seed);
  conv->add_option("--out", out);

  auto* cert = app.add_subcommand("certify", "Write a lower-bound certificate for a graph");
  cert->add_option("--graph", graph_file)->required();
  cert->add_option("--out", out);

  auto* check = app.add_subcommand("check", "Validate an artifact: refutation CNF TRACE | bp TSEITIN BP | dnnf-equiv TSEITIN NNF | certificate GRAPH CERT");
  std::string kind;
  std::vector<std::string> files;
  check->add_option("kind", kind)->required()->check(CLI::IsMember({"refutation", "bp", "dnnf-equiv", "certificate"}));
  check->add_option("files", files)->required()->expected(2);
  check->add_option("--desk-scale-cap", cap);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      const Graph g = generate(family, params);
      emit(out, [&](std::ostream& o) { io::write_graph(o, g); });
      return 0;
    }
    if (*pipe) {
      std::ostringstream report;
      report << csv_header() << '\n';
      for (const auto& path : graphs) {
        const Graph g = load_graph(path);
        report << pipeline_row(path, g, parse_charge(g, charge_spec, seed), parse_charge(g, target_spec, seed), cap) << '\n';
      }
      emit(out, [&](std::ostream& o) { o << report.str(); });
      return 0;
    }
    if (*conv) {
      const Graph g = load_graph(graph_file);
      const Charge c = parse_charge(g, charge_spec, seed);
      if (format == "graph") emit(out, [&](std::ostream& o) { io::write_graph(o, g); });
      if (format == "tseitin") emit(out, [&](std::ostream& o) { io::write_tseitin(o, g, c); });
      if (format == "cnf") emit(out, [&](std::ostream& o) { io::write_cnf(o, to_cnf(TseitinFormula(g, c))); });
      if (format == "trace") {
        const auto t = dpll_refute(to_cnf(TseitinFormula(g, c)));
        emit(out, [&](std::ostream& o) { io::write_trace(o, t); });
      }
      if (format == "bp") {
        const auto w = build_well_structured_bp(g, c);
        emit(out, [&](std::ostream& o) { io::write_bp(o, w.bp); });
      }
      if (format == "nnf") {
        const auto r = pipeline(g, c, parse_charge(g, target_spec, seed), 0);
        emit(out, [&](std::ostream& o) { io::write_nnf(o, r.dnnf); });
      }
      return 0;
    }
    if (*cert) {
      const auto c = certified_lower_bound(load_graph(graph_file));
      emit(out, [&](std::ostream& o) { io::write_certificate(o, c); });
      return 0;
    }
    if (*check) {
      if (kind == "refutation") {
        const Cnf cnf = io::read_file<Cnf>(files[0], io::read_cnf);
        const auto trace = io::read_file<ResolutionTrace>(files[1], io::read_trace);
        const auto r = check_refutation(cnf, trace);
        if (!r.valid) return fail("invalid refutation: " + r.message);
        if (!check_regularity(trace)) return fail("refutation is not regular");
        std::cout << "valid regular refutation, " << trace.length() << " steps\n";
        return 0;
      }
      if (kind == "bp") {
        const auto t = io::read_file<TseitinFormula>(files[0], io::read_tseitin);
        const auto b = io::read_file<BranchingProgram>(files[1], io::read_bp);
        const auto ann = infer_annotations(b, t.graph(), t.charge());
        const auto d = validate_well_structured(b, t.graph(), t.charge(), ann, cap);
        if (!d.ok)
          return fail("branching program rejected at node " + std::to_string(d.node) + " (condition " + std::to_string(d.condition) +
                      "): " + d.message);
        std::cout << "well-structured, " << b.size() << " nodes\n";
        return 0;
      }
      if (kind == "dnnf-equiv") {
        const auto t = io::read_file<TseitinFormula>(files[0], io::read_tseitin);
        const auto d = io::read_file<NnfCircuit>(files[1], io::read_nnf);
        if (t.graph().edge_count() > cap) return fail("formula exceeds the desk-scale cap");
        if (d.variable_count() != t.variable_count()) return fail("variable counts differ");
        if (!validate_decomposable(d)) return fail("circuit is not decomposable");
        if (brute_force_models(d) != t.brute_force_models()) return fail("model sets differ");
        std::cout << "equivalent, " << t.model_count() << " models\n";
        return 0;
      }
      const Graph g = load_graph(files[0]);
      const auto c = io::read_file<LowerBoundCertificate>(files[1], io::read_certificate);
      const auto r = verify_certificate(g, c);
      if (!r.ok) return fail("certificate rejected: " + r.message);
      std::cout << "certificate verified, k = " << c.k << '\n';
      return 0;
    }
  } catch (const std::exception& e) {
    return fail(e.what());
  }
  return 0;
}
