#include "hcsat/oracle.hpp"

#include <algorithm>
#include <limits>
#include <map>

#include "hcsat/container.hpp"
#include "hcsat/errors.hpp"

namespace hcsat {

namespace {

void require_cap(const Formula& f, std::uint32_t var_cap) {
  if (f.num_vars() > var_cap) {
    throw PreconditionError("oracle variable cap exceeded: n = " + std::to_string(f.num_vars()) +
                            " > " + std::to_string(var_cap));
  }
}

// Assignment for mask m with x1 as the most significant bit.
Assignment assignment_from_mask(std::uint64_t mask, std::uint32_t n) {
  Assignment a;
  a.values.resize(n);
  for (std::uint32_t var = 1; var <= n; ++var) a.values[var - 1] = (mask >> (n - var)) & 1u;
  return a;
}

bool clause_true(const Clause& c, const Assignment& a) {
  for (const auto& lit : c.literals) {
    if (a.values[lit.var - 1] != lit.negated) return true;
  }
  return false;
}

Rational falsified_weight(const Formula& f, const Assignment& a, const Rational& p) {
  Rational total(0);
  for (const auto& c : f.clauses()) {
    if (!clause_true(c, a)) total += pow(p, static_cast<unsigned>(c.size()));
  }
  return total;
}

bool subset_of(const VertexSet& small, const VertexSet& large) {
  return std::includes(large.begin(), large.end(), small.begin(), small.end());
}

std::string show(const VertexSet& set) {
  std::string out = "{";
  for (std::size_t j = 0; j < set.size(); ++j) {
    if (j) out += ",";
    out += std::to_string(vertex_to_signed(set[j]));
  }
  return out + "}";
}

std::string show(const Assignment& a) {
  std::string out;
  for (bool v : a.values) out += v ? '1' : '0';
  return out;
}

VertexSet literal_set(const Assignment& a) {
  VertexSet out;
  for (std::uint32_t var = 1; var <= a.values.size(); ++var) {
    out.push_back(a.values[var - 1] ? 2 * (var - 1) : 2 * (var - 1) + 1);
  }
  return out;
}

// Records the first failure of a named check.
class CheckLog {
 public:
  void fail(const std::string& name, const std::string& detail) {
    auto& slot = state_[name];
    if (slot.verdict != Verdict::kFail) slot = {Verdict::kFail, detail};
  }
  void pass(const std::string& name) { state_.try_emplace(name, Slot{Verdict::kPass, {}}); }
  void expect(const std::string& name, bool ok, const std::string& detail) {
    ok ? pass(name) : fail(name, detail);
  }
  void not_applicable(const std::string& name, const std::string& why) {
    state_[name] = {Verdict::kNotApplicable, why};
  }
  std::vector<OracleCheck> finish(const std::vector<std::string>& order) const {
    std::vector<OracleCheck> out;
    for (const auto& name : order) {
      auto it = state_.find(name);
      if (it == state_.end()) {
        out.push_back({name, Verdict::kPass, {}});
      } else {
        out.push_back({name, it->second.verdict, it->second.detail});
      }
    }
    return out;
  }

 private:
  struct Slot {
    Verdict verdict = Verdict::kPass;
    std::string detail;
  };
  std::map<std::string, Slot> state_;
};

const std::vector<std::string> kCheckOrder = {
    "coverage",      "fingerprint_bound", "pair_hitting",     "container_size",
    "residual_weight", "free_variables",  "decomposition",    "empty_family",
    "maxsat_guarantee", "determinism",    "family_agreement", "trace",
    "lym"};

}  // namespace

std::vector<Assignment> all_models(const Formula& f, std::uint32_t var_cap) {
  require_cap(f, var_cap);
  const std::uint32_t n = f.num_vars();
  std::vector<Assignment> models;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    Assignment a = assignment_from_mask(mask, n);
    bool ok = std::all_of(f.clauses().begin(), f.clauses().end(),
                          [&](const Clause& c) { return clause_true(c, a); });
    if (ok) models.push_back(std::move(a));
  }
  return models;
}

Rational max_sat_optimum(const Formula& f, const Rational& p, std::uint32_t var_cap) {
  require_cap(f, var_cap);
  const std::uint32_t n = f.num_vars();
  // Falsified clauses are tallied by size; the weight only depends on the tally.
  const std::size_t k = f.max_clause_size();
  std::vector<Rational> power(k + 1);
  for (std::size_t s = 0; s <= k; ++s) power[s] = pow(p, static_cast<unsigned>(s));
  std::vector<std::size_t> tally(k + 1);
  Rational best = -1;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    Assignment a = assignment_from_mask(mask, n);
    std::fill(tally.begin(), tally.end(), 0);
    for (const auto& c : f.clauses()) {
      if (!clause_true(c, a)) ++tally[c.size()];
    }
    Rational w(0);
    for (std::size_t s = 1; s <= k; ++s) {
      if (tally[s]) w += power[s] * static_cast<unsigned long>(tally[s]);
    }
    if (best < 0 || w < best) best = w;
  }
  return best;
}

std::vector<VertexSet> independent_sets(const Hypergraph& h, std::size_t max_size,
                                        std::size_t volume_guard) {
  // Depth-first include/exclude over the vertices; sorted afterwards.
  std::vector<VertexSet> found;
  VertexSet current;
  const auto universe = static_cast<Vertex>(h.universe_size());
  auto contains_edge = [&](const VertexSet& set) {
    for (const auto& e : h.edges()) {
      if (subset_of(e, set)) return true;
    }
    return false;
  };
  auto walk = [&](auto&& self, Vertex next) -> void {
    if (found.size() >= volume_guard) {
      throw PreconditionError("independent-set volume guard of " + std::to_string(volume_guard) +
                              " exceeded");
    }
    found.push_back(current);
    if (current.size() == max_size) return;
    for (Vertex v = next; v < universe; ++v) {
      current.push_back(v);
      if (!contains_edge(current)) self(self, v + 1);
      current.pop_back();
    }
  };
  walk(walk, 0);
  std::sort(found.begin(), found.end(), [](const VertexSet& a, const VertexSet& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  return found;
}

bool OracleReport::passed() const {
  return std::none_of(checks.begin(), checks.end(),
                      [](const OracleCheck& c) { return c.verdict == Verdict::kFail; });
}

const OracleCheck* OracleReport::find(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

OracleReport verify_theorems(const Formula& f, const WeightParams& params,
                             const OracleOptions& options) {
  params.validate_for_container();
  require_cap(f, options.var_cap);
  const std::uint32_t n = f.num_vars();
  const Rational nn(static_cast<unsigned long>(n));
  OracleReport report;
  report.num_vars = n;
  report.models = all_models(f, options.var_cap);
  report.optimum = max_sat_optimum(f, params.p, options.var_cap);
  CheckLog log;

  Hypergraph h = to_hypergraph(f, params.k);
  Rational total_weight(0);
  for (const auto& c : f.clauses()) total_weight += pow(params.p, static_cast<unsigned>(c.size()));

  ContainerFamily family = enumerate_containers(h, params, options.enumeration);
  const std::vector<VertexSet> containers = family.containers();
  report.containers = containers.size();

  // Coverage.
  for (const auto& model : report.models) {
    VertexSet lits = literal_set(model);
    bool covered = std::any_of(containers.begin(), containers.end(),
                               [&](const VertexSet& C) { return subset_of(lits, C); });
    log.expect("coverage", covered, "model " + show(model) + " lies in no container");
  }

  // Fingerprint bound on the family, and pair hitting.
  const Rational bound = Rational(static_cast<unsigned long>(4 * params.k * params.k)) * params.p *
                         nn / params.delta;
  for (const auto& entry : family.entries) {
    log.expect("fingerprint_bound",
               Rational(static_cast<unsigned long>(entry.fingerprint.size())) <= bound,
               "fingerprint " + show(entry.fingerprint) + " exceeds " + to_string(bound));
  }
  for (const auto& C : containers) {
    std::vector<bool> in(2 * static_cast<std::size_t>(n), false);
    for (Vertex v : C) in[v] = true;
    for (std::uint32_t var = 1; var <= n; ++var) {
      log.expect("pair_hitting", in[2 * (var - 1)] || in[2 * (var - 1) + 1],
                 "container " + show(C) + " misses variable " + std::to_string(var));
    }
  }

  // Structure-conditional bounds.
  bool structured = false;
  std::string why = "lambda not given";
  if (params.lambda) {
    StructureReport sr = check_structure(h, *params.lambda, params.p, params.k);
    structured = sr.is_structure && params.p * *params.lambda <= 1;
    if (!sr.is_structure) why = "H is not a (lambda,p)_k-structure";
    else if (!structured) why = "p exceeds 1/lambda";
  }
  if (structured) {
    const Rational& lambda = *params.lambda;
    const Rational size_limit = (2 - 1 / lambda) * nn;
    const Rational free_limit = (1 - 1 / lambda) * nn;
    for (const auto& C : containers) {
      log.expect("container_size", Rational(static_cast<unsigned long>(C.size())) <= size_limit,
                 "|C| = " + std::to_string(C.size()) + " for " + show(C));
      Rational inside(0);
      std::size_t free_count = 0;
      for (const auto& c : f.clauses()) {
        VertexSet edge;
        for (const auto& lit : c.literals) edge.push_back(lit.negated ? 2 * (lit.var - 1) : 2 * (lit.var - 1) + 1);
        std::sort(edge.begin(), edge.end());
        if (subset_of(edge, C)) inside += pow(params.p, static_cast<unsigned>(edge.size()));
      }
      log.expect("residual_weight", inside <= params.delta * total_weight,
                 "w_p(H[C]) = " + to_string(inside) + " for " + show(C));
      for (std::uint32_t var = 1; var <= n; ++var) {
        if (subset_of({2 * (var - 1), 2 * (var - 1) + 1}, C)) ++free_count;
      }
      log.expect("free_variables", Rational(static_cast<unsigned long>(free_count)) <= free_limit,
                 std::to_string(free_count) + " free variables for " + show(C));
    }
  } else {
    log.not_applicable("container_size", why);
    log.not_applicable("residual_weight", why);
    log.not_applicable("free_variables", why);
  }

  // Decomposition equivalence and the empty-family certificate.
  const bool satisfiable = !report.models.empty();
  SolveOptions solve_options;
  solve_options.enumeration = options.enumeration;
  SolveResult solved = solve_sat(f, params, solve_options);
  log.expect("decomposition", solved.satisfiable == satisfiable,
             std::string("solve_sat says ") + (solved.satisfiable ? "SAT" : "UNSAT") +
                 ", brute force says " + (satisfiable ? "SAT" : "UNSAT"));
  if (solved.model) {
    log.expect("decomposition", falsified_weight(f, *solved.model, Rational(1)) == 0,
               "returned model " + show(*solved.model) + " falsifies a clause");
  }
  log.expect("empty_family", !family.empty() || !satisfiable,
             "empty container family on a satisfiable formula");

  // MAX-SAT guarantee.
  MaxSatResult approx = max_sat_approx(f, params, false, options.enumeration);
  if (!approx.has_assignment) {
    log.expect("maxsat_guarantee", !satisfiable, "NoAssignment on a satisfiable formula");
  } else {
    Rational w = falsified_weight(f, approx.assignment, params.p);
    log.expect("maxsat_guarantee", w == approx.falsified_weight,
               "reported weight " + to_string(approx.falsified_weight) + " but measured " + to_string(w));
    log.expect("maxsat_guarantee", w >= report.optimum,
               "weight " + to_string(w) + " below the optimum " + to_string(report.optimum));
    if (structured) {
      log.expect("maxsat_guarantee", w <= params.delta * total_weight,
                 "weight " + to_string(w) + " exceeds delta w_p(H) = " +
                     to_string(params.delta * total_weight));
    }
  }

  // LYM on the input antichain and every residual.
  log.expect("lym", lym_sum(h) <= 1, "LYM sum of H exceeds 1");
  for (const auto& entry : family.entries) {
    if (is_antichain(entry.residual)) {
      log.expect("lym", lym_sum(entry.residual) <= 1, "LYM sum of a residual exceeds 1");
    }
  }

  if (!options.replay_inputs) {
    log.not_applicable("determinism", "input replay disabled");
    log.not_applicable("family_agreement", "input replay disabled");
    log.not_applicable("trace", "input replay disabled");
  } else {
    std::size_t limit = floor_to_size(bound);
    limit = std::min(limit, h.universe_size());
    if (options.enumeration.cap) limit = std::min(limit, *options.enumeration.cap);
    std::map<VertexSet, std::pair<VertexSet, Hypergraph>> by_fingerprint;
    for (const auto& I : independent_sets(h, limit, options.volume_guard)) {
      ContainerOutput out = run_container(h, I, params, true);
      ++report.runs_replayed;
      for (const auto& v : verify_trace(out, h, I, params)) {
        log.expect("trace", v.passed,
                   v.check + " at iteration " + std::to_string(v.iteration) + " for I = " + show(I) +
                       (v.detail.empty() ? "" : ": " + v.detail));
      }
      log.expect("fingerprint_bound",
                 Rational(static_cast<unsigned long>(out.fingerprint.size())) <= bound,
                 "run on " + show(I) + " has fingerprint " + show(out.fingerprint));
      ContainerOutput again = run_container(h, out.fingerprint, params, false);
      log.expect("determinism",
                 again.status == out.status && again.fingerprint == out.fingerprint &&
                     again.container == out.container && again.residual == out.residual,
                 "input S = " + show(out.fingerprint) + " does not reproduce the run on " + show(I));
      if (!out.ok()) continue;
      auto [it, fresh] = by_fingerprint.try_emplace(out.fingerprint, out.container, out.residual);
      if (!fresh) {
        log.expect("determinism", it->second.first == out.container && it->second.second == out.residual,
                   "fingerprint " + show(out.fingerprint) + " yields two different outputs");
      }
    }
    bool agree = by_fingerprint.size() == family.entries.size();
    if (agree) {
      std::size_t j = 0;
      for (const auto& [S, cg] : by_fingerprint) {
        const auto& e = family.entries[j++];
        agree = agree && e.fingerprint == S && e.container == cg.first && e.residual == cg.second;
      }
    }
    log.expect("family_agreement", agree && family.stats.inconsistent_fingerprints == 0,
               "pipeline family differs from replayed runs (" +
                   std::to_string(family.entries.size()) + " vs " +
                   std::to_string(by_fingerprint.size()) + " fingerprints)");
  }

  report.checks = log.finish(kCheckOrder);
  return report;
}

// ---------------------------------------------------------------------------

std::uint64_t FuzzRng::below(std::uint64_t bound) {
  if (bound == 0) throw PreconditionError("empty draw range");
  // Largest multiple of bound that fits; values past it are redrawn.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return x % bound;
}

Formula random_formula(FuzzRng& rng, const FuzzSpec& spec) {
  if (spec.vars == 0) throw PreconditionError("fuzzing needs at least one variable");
  if (spec.k < 1) throw PreconditionError("fuzzing needs k >= 1");
  std::vector<bool> hidden(spec.vars);
  if (spec.planted) {
    for (std::uint32_t j = 0; j < spec.vars; ++j) hidden[j] = rng.coin();
  }
  std::vector<Clause> clauses;
  std::vector<std::uint32_t> pool(spec.vars);
  for (std::size_t c = 0; c < spec.clauses; ++c) {
    std::size_t size = 1;
    if (spec.k >= 2 && (!spec.unit_clauses || rng.below(10) != 0)) size = 2 + rng.below(spec.k - 1);
    size = std::min<std::size_t>(size, spec.vars);
    for (std::uint32_t j = 0; j < spec.vars; ++j) pool[j] = j + 1;
    Clause clause;
    for (std::size_t j = 0; j < size; ++j) {
      std::size_t pick = j + rng.below(spec.vars - j);
      std::swap(pool[j], pool[pick]);
      clause.literals.push_back(Literal{pool[j], rng.coin()});
    }
    if (spec.planted) {
      bool agrees = std::any_of(clause.literals.begin(), clause.literals.end(),
                                [&](const Literal& l) { return hidden[l.var - 1] != l.negated; });
      if (!agrees) {
        auto& flip = clause.literals[rng.below(size)];
        flip.negated = !flip.negated;
      }
    }
    clauses.push_back(std::move(clause));
  }
  return preprocess(Formula(spec.vars, std::move(clauses)));
}

WeightParams random_params(FuzzRng& rng, std::uint32_t n, std::size_t k, FuzzRegime regime) {
  WeightParams params;
  params.k = std::max<std::size_t>(2, k);
  params.delta = Rational(1, 5);
  const unsigned long b = 1 + rng.below(regime == FuzzRegime::kSmallBound ? 3 : 2);
  if (regime == FuzzRegime::kSmallBound) {
    params.p = params.delta * Rational(b) / Rational(4ul * params.k * params.k * n);
  } else {
    params.p = params.delta / Rational(params.k + b);
  }
  params.p.canonicalize();
  return params;
}

}  // namespace hcsat
