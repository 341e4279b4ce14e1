#include "hcsat/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <thread>

#include "hcsat/errors.hpp"

namespace hcsat {

std::vector<VertexSet> ContainerFamily::containers() const {
  std::vector<VertexSet> out;
  out.reserve(entries.size());
  for (const auto& e : entries) out.push_back(e.container);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<VertexSet> enumerate_independent_sets(const Hypergraph& h, std::size_t max_size) {
  const std::size_t universe = h.universe_size();
  // Edges indexed by their largest vertex: adding v can only complete those.
  std::vector<std::vector<const VertexSet*>> closing(universe);
  for (const auto& e : h.edges()) closing[e.back()].push_back(&e);

  std::vector<VertexSet> result{VertexSet{}};
  std::vector<VertexSet> level{VertexSet{}};
  for (std::size_t size = 1; size <= max_size && !level.empty(); ++size) {
    std::vector<VertexSet> next;
    for (const auto& base : level) {
      Vertex start = base.empty() ? 0 : base.back() + 1;
      for (Vertex v = start; v < universe; ++v) {
        VertexSet grown = base;
        grown.push_back(v);
        bool blocked = std::any_of(closing[v].begin(), closing[v].end(),
                                   [&](const VertexSet* e) { return is_subset(*e, grown); });
        if (!blocked) next.push_back(std::move(grown));
      }
    }
    result.insert(result.end(), next.begin(), next.end());
    level = std::move(next);
  }
  return result;
}

namespace {

ContainerOutput run_prepared(const ContainerProcess& start, const VertexSet& I) {
  ContainerProcess process = start;
  while (auto sel = process.select()) process.apply(*sel, is_subset(sel->L, I));
  return process.finish();
}

class FamilyBuilder {
 public:
  FamilyBuilder(ContainerFamily& family, const Rational& p) : family_(family), p_(p) {}

  void add(ContainerOutput out) {
    ++family_.stats.runs_executed;
    if (!out.ok()) {
      ++family_.stats.errors_filtered;
      return;
    }
    auto it = by_fingerprint_.find(out.fingerprint);
    if (it != by_fingerprint_.end()) {
      if (it->second.container != out.container || !(it->second.residual == out.residual)) {
        ++family_.stats.inconsistent_fingerprints;
      }
      return;
    }
    Rational w = family_weight(out.residual, p_);
    ContainerEntry entry{out.fingerprint, std::move(out.container), std::move(out.residual), w};
    by_fingerprint_.emplace(entry.fingerprint, std::move(entry));
  }

  void finish() {
    for (auto& [key, entry] : by_fingerprint_) family_.entries.push_back(std::move(entry));
  }

 private:
  ContainerFamily& family_;
  const Rational& p_;
  std::map<VertexSet, ContainerEntry> by_fingerprint_;
};

void enumerate_by_inputs(const Hypergraph& h, const ContainerProcess& start, std::size_t max_size,
                         unsigned threads, FamilyBuilder& builder, EnumerationStats& stats) {
  std::vector<VertexSet> inputs = enumerate_independent_sets(h, max_size);
  stats.candidates_examined = inputs.size();
  std::vector<ContainerOutput> outputs(inputs.size());
  const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(inputs.size())));
  if (workers <= 1) {
    for (std::size_t j = 0; j < inputs.size(); ++j) outputs[j] = run_prepared(start, inputs[j]);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> failures(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::size_t j = w; j < inputs.size(); j += workers) outputs[j] = run_prepared(start, inputs[j]);
        } catch (...) {
          failures[w] = std::current_exception();
        }
      });
    }
    for (auto& t : pool) t.join();
    for (auto& f : failures) {
      if (f) std::rethrow_exception(f);
    }
  }
  // Merged in input order so the result does not depend on scheduling.
  for (auto& out : outputs) builder.add(std::move(out));
}

class DecisionTreeWalk {
 public:
  DecisionTreeWalk(const Hypergraph& h, std::size_t max_size, FamilyBuilder& builder,
                   EnumerationStats& stats)
      : h_(h), max_size_(max_size), builder_(builder), stats_(stats) {}

  void explore(ContainerProcess process, std::vector<VertexSet> rejected) {
    ++stats_.candidates_examined;
    while (auto sel = process.select()) {
      VertexSet grown = set_union(process.fingerprint(), sel->L);
      bool yes_possible = grown.size() <= max_size_ && is_independent(h_, grown) &&
                          !up_closure_membership(rejected, grown);
      bool no_possible = !is_subset(sel->L, process.fingerprint());
      if (yes_possible && no_possible) {
        ContainerProcess branch = process;
        branch.apply(*sel, true);
        explore(std::move(branch), rejected);
        ++stats_.candidates_examined;
      }
      if (!yes_possible && !no_possible) return;
      // Both open: "yes" was explored above, continue here with "no".
      const bool inside = !no_possible;
      process.apply(*sel, inside);
      if (!inside) rejected.push_back(sel->L);
    }
    // The leaf is reachable only if its own fingerprint gives every "no".
    if (up_closure_membership(rejected, process.fingerprint())) return;
    builder_.add(process.finish());
  }

 private:
  const Hypergraph& h_;
  std::size_t max_size_;
  FamilyBuilder& builder_;
  EnumerationStats& stats_;
};

}  // namespace

ContainerFamily enumerate_containers(const Hypergraph& h, const WeightParams& params,
                                     const EnumerationOptions& options) {
  ContainerProcess start(h, params);
  ContainerFamily family;
  EnumerationStats& stats = family.stats;
  const std::size_t n = h.universe_size() / 2;
  stats.fingerprint_bound = Rational(4 * params.k * params.k) * params.p *
                            Rational(static_cast<unsigned long>(n)) / params.delta;
  std::size_t max_size = floor_to_size(stats.fingerprint_bound);
  if (max_size >= h.universe_size()) {
    max_size = h.universe_size();
    stats.full_enumeration = true;
    stats.warnings.push_back("fingerprint bound " + to_string(stats.fingerprint_bound) +
                             " reaches the universe size; enumerating all independent sets");
  }
  if (options.cap && *options.cap < max_size) {
    max_size = *options.cap;
    stats.exhaustive = false;
    stats.warnings.push_back("enumeration capped at size " + std::to_string(max_size) +
                             "; the family may be incomplete");
  }
  stats.max_input_size = max_size;

  FamilyBuilder builder(family, params.p);
  switch (options.strategy) {
    case EnumerationStrategy::kIndependentSets:
      enumerate_by_inputs(h, start, max_size, options.threads, builder, stats);
      break;
    case EnumerationStrategy::kDecisionTree: {
      DecisionTreeWalk walk(h, max_size, builder, stats);
      walk.explore(start, {});
      break;
    }
  }
  builder.finish();
  return family;
}

// ---------------------------------------------------------------------------

ReducedFormula reduce_formula(const Formula& f, const VertexSet& Vp) {
  ReducedFormula rf;
  rf.base = f;
  const std::uint32_t n = f.num_vars();
  if (!Vp.empty() && Vp.back() >= 2 * n) {
    throw PreconditionError("vertex set exceeds the literal universe");
  }
  std::vector<bool> present(2 * static_cast<std::size_t>(n), false);
  for (Vertex v : Vp) present[v] = true;
  rf.forced.assign(n, std::nullopt);
  for (std::uint32_t var = 1; var <= n; ++var) {
    bool pos = present[positive_vertex(var)];
    bool neg = present[negative_vertex(var)];
    if (pos && neg) {
      rf.free_vars.push_back(var);
    } else if (pos) {
      rf.forced[var - 1] = true;
    } else if (neg) {
      rf.forced[var - 1] = false;
    } else if (rf.status == ReducedStatus::kLive) {
      rf.status = ReducedStatus::kForcedUnsat;
      rf.unsat_variable = var;
    }
  }
  if (rf.status == ReducedStatus::kForcedUnsat) return rf;

  for (const auto& c : f.clauses()) {
    Clause rest;
    bool satisfied = false;
    for (const auto& lit : c.literals) {
      const auto& value = rf.forced[lit.var - 1];
      if (!value) {
        rest.literals.push_back(lit);
      } else if (*value != lit.negated) {
        satisfied = true;
        break;
      }
    }
    if (satisfied) continue;
    if (rest.literals.empty()) rf.has_falsified_clause = true;
    rf.clauses.push_back(std::move(rest));
  }
  return rf;
}

namespace {

class Dpll {
 public:
  Dpll(const std::vector<Clause>& clauses, std::uint32_t num_vars)
      : clauses_(clauses), value_(num_vars + 1, kUnassigned) {}

  bool solve() { return search(); }
  std::size_t nodes() const { return nodes_; }
  // 1 for unassigned variables.
  bool value(std::uint32_t var) const { return value_[var] != kFalse; }

 private:
  static constexpr signed char kUnassigned = -1;
  static constexpr signed char kFalse = 0;
  static constexpr signed char kTrue = 1;

  signed char literal_value(const Literal& lit) const {
    signed char v = value_[lit.var];
    if (v == kUnassigned) return kUnassigned;
    return (v == kTrue) != lit.negated ? kTrue : kFalse;
  }

  void assign(const Literal& lit, std::vector<std::uint32_t>& trail) {
    value_[lit.var] = lit.negated ? kFalse : kTrue;
    trail.push_back(lit.var);
  }

  void undo(std::vector<std::uint32_t>& trail) {
    for (auto var : trail) value_[var] = kUnassigned;
    trail.clear();
  }

  bool search() {
    ++nodes_;
    std::vector<std::uint32_t> trail;
    const Literal* branch = nullptr;
    for (bool changed = true; changed;) {
      changed = false;
      branch = nullptr;
      for (const auto& c : clauses_) {
        const Literal* open = nullptr;
        std::size_t open_count = 0;
        bool sat = false;
        for (const auto& lit : c.literals) {
          signed char v = literal_value(lit);
          if (v == kTrue) { sat = true; break; }
          if (v == kUnassigned) { open = &lit; ++open_count; }
        }
        if (sat) continue;
        if (open_count == 0) { undo(trail); return false; }
        if (open_count == 1) { assign(*open, trail); changed = true; continue; }
        if (!branch) branch = open;
      }
    }
    if (!branch) return true;
    const std::uint32_t var = branch->var;
    for (signed char choice : {kTrue, kFalse}) {
      value_[var] = choice;
      if (search()) return true;
    }
    value_[var] = kUnassigned;
    undo(trail);
    return false;
  }

  const std::vector<Clause>& clauses_;
  std::vector<signed char> value_;
  std::size_t nodes_ = 0;
};

}  // namespace

BaseSolverResult base_solver(const ReducedFormula& rf) {
  BaseSolverResult result;
  if (rf.status != ReducedStatus::kLive) return result;
  const std::uint32_t n = rf.base.num_vars();
  if (rf.has_falsified_clause) {
    result.nodes = 1;
    return result;
  }
  Dpll dpll(rf.clauses, n);
  result.satisfiable = dpll.solve();
  result.nodes = dpll.nodes();
  if (result.satisfiable) {
    result.assignment.values.resize(n);
    for (std::uint32_t var = 1; var <= n; ++var) {
      const auto& forced = rf.forced[var - 1];
      result.assignment.values[var - 1] = forced ? *forced : dpll.value(var);
    }
  }
  return result;
}

// ---------------------------------------------------------------------------

Hypergraph container_hypergraph(const Formula& f, std::size_t k,
                                const std::optional<EdgeFamily>& edge_subset) {
  Hypergraph full = to_hypergraph(f, k);
  if (!edge_subset) return full;
  for (const auto& e : *edge_subset) {
    if (!full.contains_edge(make_vertex_set(e))) {
      throw PreconditionError("edge subset contains a set that is not an edge of the formula");
    }
  }
  return full.with_edges(*edge_subset);
}

SolveResult solve_sat(const Formula& f, const WeightParams& params, const SolveOptions& options) {
  params.validate_for_container();
  Hypergraph h = container_hypergraph(f, params.k, options.edge_subset);
  SolveResult result;
  mpz_ui_pow_ui(result.baseline_assignments.get_mpz_t(), 2, f.num_vars());
  result.family = enumerate_containers(h, params, options.enumeration);
  for (const auto& C : result.family.containers()) {
    ReducedFormula rf = reduce_formula(f, C);
    ContainerSolveRecord record;
    record.container = C;
    record.free_vars = rf.free_vars.size();
    record.status = rf.status;
    BaseSolverResult solved = base_solver(rf);
    record.satisfiable = solved.satisfiable;
    record.nodes = solved.nodes;
    result.total_nodes += solved.nodes;
    result.per_container.push_back(record);
    if (solved.satisfiable) {
      if (!evaluate(f, solved.assignment, Rational(1)).falsified.empty()) {
        throw InvariantViolation("base solver returned an assignment that falsifies the formula");
      }
      result.satisfiable = true;
      result.model = solved.assignment;
      break;
    }
  }
  return result;
}

MaxSatResult max_sat_approx(const Formula& f, const WeightParams& params, bool greedy_polish,
                            const EnumerationOptions& enumeration) {
  params.validate_for_container();
  Hypergraph h = to_hypergraph(f, params.k);
  MaxSatResult result;
  result.formula_weight = family_weight(h, params.p);
  result.guarantee_bound = params.delta * result.formula_weight;
  if (params.lambda) {
    result.structure = check_structure(h, *params.lambda, params.p, params.k);
    result.guarantee_applicable =
        result.structure->is_structure && params.p * *params.lambda <= 1;
  }
  result.family = enumerate_containers(h, params, enumeration);
  if (result.family.empty()) return result;

  bool first = true;
  for (const auto& C : result.family.containers()) {
    Rational w = family_weight(induced(h, C), params.p);
    if (first || w < result.container_weight) {
      result.container = C;
      result.container_weight = w;
      first = false;
    }
  }
  const std::uint32_t n = f.num_vars();
  std::vector<bool> in_c(2 * static_cast<std::size_t>(n), false);
  for (Vertex v : result.container) in_c[v] = true;
  Assignment a;
  a.values.resize(n);
  for (std::uint32_t var = 1; var <= n; ++var) {
    a.values[var - 1] = in_c[positive_vertex(var)];  // both present defaults to 1
  }
  Rational weight = evaluate(f, a, params.p).falsified_weight;
  if (greedy_polish) {
    for (std::uint32_t var = 1; var <= n; ++var) {
      if (!in_c[positive_vertex(var)] || !in_c[negative_vertex(var)]) continue;
      a.values[var - 1] = !a.values[var - 1];
      Rational flipped = evaluate(f, a, params.p).falsified_weight;
      if (flipped < weight) {
        weight = flipped;
      } else {
        a.values[var - 1] = !a.values[var - 1];
      }
    }
  }
  if (weight > result.container_weight) {
    throw InvariantViolation("assignment inside the container falsifies more than w_p(H[C])");
  }
  result.has_assignment = true;
  result.assignment = std::move(a);
  result.falsified_weight = weight;
  return result;
}

namespace {

Rational half_inverse(std::uint32_t n) {
  if (n == 0) throw PreconditionError("formula has no variables");
  return Rational(1, 2ul * n);
}

}  // namespace

DenseMaxSatResult dense_max_sat(const Formula& f, const Rational& delta, const Rational& d,
                                bool greedy_polish, const EnumerationOptions& enumeration) {
  if (sgn(d) <= 0) throw PreconditionError("d must be positive");
  if (sgn(delta) <= 0 || delta >= Rational(1, 4)) {
    throw PreconditionError("delta must satisfy 0 < delta < 1/4, got " + to_string(delta));
  }
  DenseMaxSatResult result;
  result.p = half_inverse(f.num_vars());
  const std::size_t k = std::max<std::size_t>(2, f.max_clause_size());
  Hypergraph h = to_hypergraph(f, k);
  result.formula_weight = family_weight(h, result.p);
  if (result.formula_weight < d) {
    throw PreconditionError("w_p(H) = " + to_string(result.formula_weight) + " is below d = " +
                            to_string(d) + " at p = " + to_string(result.p));
  }
  result.delta_prime = std::min(Rational(1, 5), Rational(2 * delta * d));
  WeightParams params{result.p, result.delta_prime, k, std::nullopt};
  params.validate_for_container();
  result.bound = delta * result.formula_weight;
  result.outcome = max_sat_approx(f, params, greedy_polish, enumeration);
  result.within_bound =
      !result.outcome.has_assignment || result.outcome.falsified_weight <= result.bound;
  return result;
}

DenseSolveResult dense_solve(const Formula& f, const Rational& d,
                             const std::optional<EdgeFamily>& edge_subset,
                             const EnumerationOptions& enumeration) {
  if (sgn(d) <= 0) throw PreconditionError("d must be positive");
  DenseSolveResult result;
  const std::uint32_t n = f.num_vars();
  result.p = half_inverse(n);
  result.delta = d / 3;

  std::size_t k = 2;
  const EdgeFamily edges =
      edge_subset ? make_family(*edge_subset) : to_hypergraph(f).edges();
  for (const auto& e : edges) {
    if (e.size() < 2) throw PreconditionError("dense solving needs every edge to have size >= 2");
    k = std::max(k, e.size());
  }
  Hypergraph h = container_hypergraph(f, k, edges);
  result.weight = family_weight(h, result.p);
  if (result.weight < d) {
    throw PreconditionError("w_p(H) = " + to_string(result.weight) + " is below d = " +
                            to_string(d) + " at p = " + to_string(result.p));
  }
  WeightParams params{result.p, result.delta, k, std::nullopt};
  params.validate_for_container();
  result.delta1 = codegree(h, 1, result.p);
  result.size_bound = Rational(2ul * n) - d / (2 * result.delta1);

  SolveOptions options;
  options.edge_subset = edges;
  options.enumeration = enumeration;
  result.solve = solve_sat(f, params, options);
  for (const auto& C : result.solve.family.containers()) {
    ContainerCertificate cert{C, C.size()};
    if (Rational(static_cast<unsigned long>(cert.size)) > result.size_bound) {
      throw InvariantViolation("container of size " + std::to_string(cert.size) +
                               " exceeds the certificate bound " + to_string(result.size_bound));
    }
    result.certificates.push_back(std::move(cert));
  }
  return result;
}

BoundsReport compute_bounds(const WeightParams& params, std::size_t n) {
  params.validate();
  BoundsReport r;
  const Rational k_sq(static_cast<unsigned long>(params.k * params.k));
  r.fingerprint_bound = 4 * k_sq * params.p * Rational(static_cast<unsigned long>(n)) / params.delta;
  r.fingerprint_bound_floor = floor_to_size(r.fingerprint_bound);
  r.entropy_arg = 2 * k_sq * params.p / params.delta;
  r.bound_trivial = r.entropy_arg >= Rational(1, 2);
  if (r.entropy_arg < 1) {
    const double x = r.entropy_arg.get_d();
    const double h = -x * std::log2(x) - (1 - x) * std::log2(1 - x);
    r.entropy = h;
    r.container_count_log2 = 2 * h * static_cast<double>(n);
  }
  if (params.lambda) {
    const Rational nn(static_cast<unsigned long>(n));
    r.container_size_bound = (2 - 1 / *params.lambda) * nn;
    r.unassigned_bound = (1 - 1 / *params.lambda) * nn;
  }
  return r;
}

}  // namespace hcsat
