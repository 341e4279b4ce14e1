// hcsat: command-line front end for the container decomposition library.
//
// Exit codes: 0 satisfiable / ok, 20 unsatisfiable, 2 rejected input,
// 1 internal error (including a failed verification).

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "hcsat/container.hpp"
#include "hcsat/errors.hpp"
#include "hcsat/formula.hpp"
#include "hcsat/oracle.hpp"
#include "hcsat/pipeline.hpp"
#include "hcsat/serialize.hpp"
#include "hcsat/structure.hpp"

namespace {

using hcsat::Rational;
using hcsat::json::Json;

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitRejected = 2;
constexpr int kExitUnsat = 20;

struct Options {
  std::string input = "-";
  std::string p, delta, lambda, d;
  std::string D, c, epsilon, tolerance = "1/10000";
  std::size_t k = 0;
  std::optional<std::size_t> cap;
  std::string edge_subset;
  std::string strategy = "sets";
  unsigned threads = 1;
  bool trace = false;
  bool greedy_polish = false;
  std::size_t fuzz = 0;
  std::uint64_t seed = 1;
  std::uint32_t vars = 6;
  std::size_t clauses = 12;
};

std::string read_all(const std::string& path) {
  if (path == "-") {
    std::ostringstream buffer;
    buffer << std::cin.rdbuf();
    return buffer.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw hcsat::PreconditionError("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

hcsat::Formula load_formula(const Options& o) {
  return hcsat::preprocess(hcsat::parse_dimacs_string(read_all(o.input)));
}

Rational rational_flag(const std::string& name, const std::string& text) {
  if (text.empty()) throw hcsat::PreconditionError("--" + name + " is required");
  try {
    return hcsat::parse_rational(text);
  } catch (const std::invalid_argument&) {
    throw hcsat::PreconditionError("--" + name + " is not a rational: " + text);
  }
}

std::optional<Rational> optional_rational(const std::string& name, const std::string& text) {
  if (text.empty()) return std::nullopt;
  return rational_flag(name, text);
}

std::size_t required_k(const Options& o) {
  if (o.k == 0) throw hcsat::PreconditionError("--k is required");
  return o.k;
}

hcsat::WeightParams weight_params(const Options& o) {
  hcsat::WeightParams params;
  params.p = rational_flag("p", o.p);
  params.delta = rational_flag("delta", o.delta);
  params.k = required_k(o);
  params.lambda = optional_rational("lambda", o.lambda);
  return params;
}

hcsat::EnumerationOptions enumeration(const Options& o) {
  hcsat::EnumerationOptions e;
  e.cap = o.cap;
  e.threads = o.threads;
  if (o.strategy == "sets") {
    e.strategy = hcsat::EnumerationStrategy::kIndependentSets;
  } else if (o.strategy == "tree") {
    e.strategy = hcsat::EnumerationStrategy::kDecisionTree;
  } else {
    throw hcsat::PreconditionError("--strategy must be 'sets' or 'tree'");
  }
  return e;
}

std::optional<hcsat::EdgeFamily> edge_subset(const Options& o, std::uint32_t n) {
  if (o.edge_subset.empty()) return std::nullopt;
  return hcsat::json::parse_edge_subset(read_all(o.edge_subset), n);
}

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

void summary(const std::string& line) { std::cerr << line << "\n"; }

void warn_all(const hcsat::EnumerationStats& stats) {
  for (const auto& w : stats.warnings) summary("warning: " + w);
}

int run_analyze(const Options& o) {
  hcsat::Formula f = load_formula(o);
  const std::size_t k = required_k(o);
  const Rational p = rational_flag("p", o.p);
  const Rational lambda = rational_flag("lambda", o.lambda);
  hcsat::Hypergraph h = hcsat::to_hypergraph(f, k);
  hcsat::StructureReport sr = hcsat::check_structure(h, lambda, p, k);
  Json out{{"num_vars", f.num_vars()},
           {"num_clauses", f.num_clauses()},
           {"structure", hcsat::json::structure(sr)}};
  if (!o.delta.empty()) {
    hcsat::WeightParams params{p, rational_flag("delta", o.delta), k, lambda};
    out["bounds"] = hcsat::json::bounds(hcsat::compute_bounds(params, f.num_vars()));
  } else {
    out["bounds"] = nullptr;
  }
  emit(out);
  summary(std::string("structure: ") + (sr.is_structure ? "yes" : "no") + " (cond1=" +
          (sr.cond1 ? "1" : "0") + " cond2=" + (sr.cond2 ? "1" : "0") + " cond3=" +
          (sr.cond3 ? "1" : "0") + ")");
  return kExitOk;
}

int run_containers(const Options& o) {
  hcsat::Formula f = load_formula(o);
  hcsat::WeightParams params = weight_params(o);
  params.validate_for_container();
  hcsat::Hypergraph h = hcsat::container_hypergraph(f, params.k, edge_subset(o, f.num_vars()));
  hcsat::ContainerFamily family = hcsat::enumerate_containers(h, params, enumeration(o));
  warn_all(family.stats);
  if (!o.trace) {
    emit(hcsat::json::container_family(family));
  } else {
    // JSON lines: the family, then every step of each fingerprint's run.
    std::cout << hcsat::json::container_family(family).dump() << "\n";
    for (const auto& entry : family.entries) {
      hcsat::ContainerOutput out = hcsat::run_container(h, entry.fingerprint, params, true);
      for (const auto& step : *out.trace) {
        Json line{{"fingerprint", hcsat::json::vertex_set(entry.fingerprint)},
                  {"step", hcsat::json::trace_step(step)}};
        std::cout << line.dump() << "\n";
      }
    }
  }
  summary(std::to_string(family.entries.size()) + " fingerprints, " +
          std::to_string(family.containers().size()) + " containers");
  return family.empty() ? kExitUnsat : kExitOk;
}

int run_solve(const Options& o) {
  hcsat::Formula f = load_formula(o);
  hcsat::WeightParams params = weight_params(o);
  hcsat::SolveOptions options;
  options.edge_subset = edge_subset(o, f.num_vars());
  options.enumeration = enumeration(o);
  hcsat::SolveResult r = hcsat::solve_sat(f, params, options);
  warn_all(r.family.stats);
  emit(hcsat::json::solve(r));
  summary(std::string(r.satisfiable ? "SATISFIABLE" : "UNSATISFIABLE") + " after " +
          std::to_string(r.total_nodes) + " search nodes over " +
          std::to_string(r.per_container.size()) + " containers");
  return r.satisfiable ? kExitOk : kExitUnsat;
}

int run_maxsat(const Options& o) {
  hcsat::Formula f = load_formula(o);
  hcsat::MaxSatResult r =
      hcsat::max_sat_approx(f, weight_params(o), o.greedy_polish, enumeration(o));
  warn_all(r.family.stats);
  emit(hcsat::json::max_sat(r));
  if (!r.has_assignment) {
    summary("no assignment: the container family is empty (unsatisfiable)");
    return kExitUnsat;
  }
  summary("falsified weight " + hcsat::to_string(r.falsified_weight) + ", bound " +
          hcsat::to_string(r.guarantee_bound) +
          (r.guarantee_applicable ? "" : " (guarantee not established)"));
  return kExitOk;
}

int run_dense_solve(const Options& o) {
  hcsat::Formula f = load_formula(o);
  hcsat::DenseSolveResult r = hcsat::dense_solve(f, rational_flag("d", o.d),
                                                 edge_subset(o, f.num_vars()), enumeration(o));
  warn_all(r.solve.family.stats);
  emit(hcsat::json::dense_solve(r));
  summary(std::string(r.solve.satisfiable ? "SATISFIABLE" : "UNSATISFIABLE") + ", " +
          std::to_string(r.certificates.size()) + " containers within size bound " +
          hcsat::to_string(r.size_bound));
  return r.solve.satisfiable ? kExitOk : kExitUnsat;
}

int run_dense_maxsat(const Options& o) {
  hcsat::Formula f = load_formula(o);
  hcsat::DenseMaxSatResult r =
      hcsat::dense_max_sat(f, rational_flag("delta", o.delta), rational_flag("d", o.d),
                           o.greedy_polish, enumeration(o));
  warn_all(r.outcome.family.stats);
  emit(hcsat::json::dense_max_sat(r));
  if (!r.outcome.has_assignment) {
    summary("no assignment: the container family is empty (unsatisfiable)");
    return kExitUnsat;
  }
  summary("falsified weight " + hcsat::to_string(r.outcome.falsified_weight) + ", bound " +
          hcsat::to_string(r.bound));
  return r.within_bound ? kExitOk : kExitInternal;
}

int run_convert(const Options& o) {
  hcsat::DceParams dce{rational_flag("D", o.D), rational_flag("c", o.c),
                       rational_flag("epsilon", o.epsilon)};
  dce.validate();
  const std::size_t k = required_k(o);
  hcsat::ConvertedParams conv =
      hcsat::dce_to_lambda_p(dce, k, rational_flag("tolerance", o.tolerance));
  Json out{{"converted", hcsat::json::converted(conv)}};
  if (!o.input.empty()) {
    hcsat::Formula f = load_formula(o);
    hcsat::Hypergraph h = hcsat::to_hypergraph(f, k);
    out["dce"] = hcsat::json::dce(hcsat::check_dce(h, dce));
    out["structure"] = hcsat::json::structure(hcsat::check_structure(h, conv.lambda, conv.p, k));
  }
  emit(out);
  summary("lambda = " + hcsat::to_string(conv.lambda) + ", p = " + hcsat::to_string(conv.p) +
          (conv.exact ? " (exact)" : " (rounded up)"));
  return kExitOk;
}

int run_verify(const Options& o) {
  hcsat::OracleOptions options;
  options.enumeration = enumeration(o);
  if (o.fuzz == 0) {
    hcsat::Formula f = load_formula(o);
    hcsat::OracleReport r = hcsat::verify_theorems(f, weight_params(o), options);
    emit(hcsat::json::oracle(r));
    summary(std::string("verification ") + (r.passed() ? "passed" : "FAILED"));
    return r.passed() ? kExitOk : kExitInternal;
  }
  const std::size_t k = required_k(o);
  hcsat::FuzzRng rng(o.seed);
  hcsat::FuzzSpec spec{o.vars, k, o.clauses};
  std::size_t failures = 0;
  for (std::size_t i = 0; i < o.fuzz; ++i) {
    hcsat::Formula f = hcsat::random_formula(rng, spec);
    hcsat::WeightParams params = hcsat::random_params(rng, f.num_vars(), k);
    hcsat::OracleReport r = hcsat::verify_theorems(f, params, options);
    if (!r.passed()) ++failures;
    Json line{{"instance", i},
              {"params", hcsat::json::params(params)},
              {"num_clauses", f.num_clauses()},
              {"report", hcsat::json::oracle(r)}};
    std::cout << line.dump() << "\n";
  }
  summary(std::to_string(o.fuzz - failures) + "/" + std::to_string(o.fuzz) + " instances passed");
  return failures == 0 ? kExitOk : kExitInternal;
}

void add_input(CLI::App* cmd, Options& o) {
  cmd->add_option("input", o.input, "DIMACS CNF file, or - for stdin");
}

void add_weight_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--p", o.p, "edge weight base p (a/b)");
  cmd->add_option("--delta", o.delta, "container parameter delta (a/b)");
  cmd->add_option("--lambda", o.lambda, "spread parameter lambda (a/b)");
  cmd->add_option("--k", o.k, "uniformity bound k");
}

void add_enumeration_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--cap", o.cap, "largest input set size to enumerate");
  cmd->add_option("--strategy", o.strategy, "enumeration strategy: sets or tree");
  cmd->add_option("--threads", o.threads, "worker threads for container runs");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weighted hypergraph container method for SAT"};
  app.require_subcommand(1);
  Options o;

  auto* analyze = app.add_subcommand("analyze", "structure report and bounds");
  add_input(analyze, o);
  add_weight_flags(analyze, o);

  auto* containers = app.add_subcommand("containers", "emit the container family");
  add_input(containers, o);
  add_weight_flags(containers, o);
  add_enumeration_flags(containers, o);
  containers->add_option("--edge-subset", o.edge_subset, "JSON file of edges to use");
  containers->add_flag("--trace", o.trace, "emit per-step traces as JSON lines");

  auto* solve = app.add_subcommand("solve", "decide satisfiability through containers");
  add_input(solve, o);
  add_weight_flags(solve, o);
  add_enumeration_flags(solve, o);
  solve->add_option("--edge-subset", o.edge_subset, "JSON file of edges to use");

  auto* maxsat = app.add_subcommand("maxsat", "approximate MAX-SAT");
  add_input(maxsat, o);
  add_weight_flags(maxsat, o);
  add_enumeration_flags(maxsat, o);
  maxsat->add_flag("--greedy-polish", o.greedy_polish, "one greedy pass over free variables");

  auto* dense_solve = app.add_subcommand("dense-solve", "solve at p = 1/(2n), delta = d/3");
  add_input(dense_solve, o);
  add_enumeration_flags(dense_solve, o);
  dense_solve->add_option("--d", o.d, "density d (a/b)");
  dense_solve->add_option("--edge-subset", o.edge_subset, "JSON file of edges to use");

  auto* dense_maxsat = app.add_subcommand("dense-maxsat", "MAX-SAT at p = 1/(2n)");
  add_input(dense_maxsat, o);
  add_enumeration_flags(dense_maxsat, o);
  dense_maxsat->add_option("--delta", o.delta, "target delta (a/b)");
  dense_maxsat->add_option("--d", o.d, "density d (a/b)");
  dense_maxsat->add_flag("--greedy-polish", o.greedy_polish, "one greedy pass over free variables");

  auto* convert = app.add_subcommand("convert-dce", "(D,c,epsilon) to (lambda,p)");
  convert->add_option("input", o.input, "optional DIMACS file to check");
  convert->add_option("--D", o.D, "density D (a/b)");
  convert->add_option("--c", o.c, "degree constant c (a/b)");
  convert->add_option("--epsilon", o.epsilon, "exponent epsilon (a/b)");
  convert->add_option("--k", o.k, "uniformity k");
  convert->add_option("--tolerance", o.tolerance, "grid for irrational roots (a/b)");

  auto* verify = app.add_subcommand("verify", "cross-check against brute force");
  add_input(verify, o);
  add_weight_flags(verify, o);
  add_enumeration_flags(verify, o);
  verify->add_option("--fuzz", o.fuzz, "number of random instances");
  verify->add_option("--seed", o.seed, "fuzz seed");
  verify->add_option("--vars", o.vars, "fuzz variables");
  verify->add_option("--clauses", o.clauses, "fuzz clauses");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitRejected;
  }
  if (convert->parsed() && convert->count("input") == 0) o.input.clear();

  try {
    if (analyze->parsed()) return run_analyze(o);
    if (containers->parsed()) return run_containers(o);
    if (solve->parsed()) return run_solve(o);
    if (maxsat->parsed()) return run_maxsat(o);
    if (dense_solve->parsed()) return run_dense_solve(o);
    if (dense_maxsat->parsed()) return run_dense_maxsat(o);
    if (convert->parsed()) return run_convert(o);
    if (verify->parsed()) return run_verify(o);
  } catch (const hcsat::ParseError& e) {
    std::cerr << "error: parse: " << e.what() << "\n";
    return kExitRejected;
  } catch (const hcsat::PreconditionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRejected;
  } catch (const hcsat::InvariantViolation& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitInternal;
}
