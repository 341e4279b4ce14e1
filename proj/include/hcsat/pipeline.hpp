#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hcsat/container.hpp"
#include "hcsat/formula.hpp"
#include "hcsat/hypergraph.hpp"
#include "hcsat/rational.hpp"
#include "hcsat/structure.hpp"

namespace hcsat {

// ---------------------------------------------------------------------------
// Container families

struct ContainerEntry {
  VertexSet fingerprint;
  VertexSet container;
  Hypergraph residual;
  Rational residual_weight;  // w_p(residual)
};

struct EnumerationStats {
  std::size_t candidates_examined = 0;  // input sets (or search-tree nodes) visited
  std::size_t runs_executed = 0;        // completed container runs
  std::size_t errors_filtered = 0;      // runs ending in the Error branch
  std::size_t max_input_size = 0;       // largest input set size enumerated
  Rational fingerprint_bound;           // 4 k^2 p n / delta
  bool exhaustive = true;               // false when a cap cut the enumeration short
  bool full_enumeration = false;        // the bound reached the universe size
  /// Runs that shared a fingerprint but disagreed on (C, G). Always 0
  /// unless the implementation is broken.
  std::size_t inconsistent_fingerprints = 0;
  std::vector<std::string> warnings;
};

struct ContainerFamily {
  std::vector<ContainerEntry> entries;  // one per fingerprint, sorted by fingerprint
  EnumerationStats stats;

  bool empty() const { return entries.empty(); }
  /// Distinct containers in lexicographic order.
  std::vector<VertexSet> containers() const;
};

enum class EnumerationStrategy {
  /// Runs the procedure on every independent set up to the size bound.
  kIndependentSets,
  /// Walks the tree of answers to "is L_i inside I?" and keeps the leaves
  /// whose fingerprint reproduces its own path. Yields the same family.
  kDecisionTree,
};

struct EnumerationOptions {
  std::optional<std::size_t> cap;
  EnumerationStrategy strategy = EnumerationStrategy::kIndependentSets;
  unsigned threads = 1;
};

ContainerFamily enumerate_containers(const Hypergraph& h, const WeightParams& params,
                                     const EnumerationOptions& options = {});

/// All independent sets of h with at most max_size vertices, by increasing
/// size and lexicographically within a size.
std::vector<VertexSet> enumerate_independent_sets(const Hypergraph& h, std::size_t max_size);

// ---------------------------------------------------------------------------
// Reduced formulas and the base solver

enum class ReducedStatus { kLive, kForcedUnsat };

struct ReducedFormula {
  Formula base;
  std::vector<std::optional<bool>> forced;  // per variable, index var - 1
  std::vector<std::uint32_t> free_vars;
  ReducedStatus status = ReducedStatus::kLive;
  std::optional<std::uint32_t> unsat_variable;  // set for kForcedUnsat
  /// Clauses not satisfied by forced literals, restricted to free variables.
  std::vector<Clause> clauses;
  /// Some clause has every literal forced false.
  bool has_falsified_clause = false;
};

ReducedFormula reduce_formula(const Formula& f, const VertexSet& Vp);

struct BaseSolverResult {
  bool satisfiable = false;
  Assignment assignment;  // total, forced values included; valid if satisfiable
  std::size_t nodes = 0;  // search nodes explored
};

/// Backtracking with unit propagation over the free variables of a Live
/// reduced formula. Unconstrained free variables are set to 1.
BaseSolverResult base_solver(const ReducedFormula& rf);

// ---------------------------------------------------------------------------
// Drivers

struct ContainerSolveRecord {
  VertexSet container;
  std::size_t free_vars = 0;
  ReducedStatus status = ReducedStatus::kLive;
  bool satisfiable = false;
  std::size_t nodes = 0;
};

struct SolveResult {
  bool satisfiable = false;
  std::optional<Assignment> model;
  ContainerFamily family;
  std::vector<ContainerSolveRecord> per_container;  // in the order solved
  std::size_t total_nodes = 0;
  mpz_class baseline_assignments;  // 2^n
};

struct SolveOptions {
  /// Edges of the formula's hypergraph used to build containers; all edges
  /// when absent.
  std::optional<EdgeFamily> edge_subset;
  EnumerationOptions enumeration;
};

/// Hypergraph used for container construction: H_f, or (V(H_f), subset).
/// Throws PreconditionError if the subset has an edge that is not in H_f.
Hypergraph container_hypergraph(const Formula& f, std::size_t k,
                                const std::optional<EdgeFamily>& edge_subset);

SolveResult solve_sat(const Formula& f, const WeightParams& params,
                      const SolveOptions& options = {});

struct MaxSatResult {
  bool has_assignment = false;  // false: no container, certified unsatisfiable
  Assignment assignment;
  Rational falsified_weight;
  VertexSet container;
  Rational container_weight;  // w_p(H_f[C])
  Rational formula_weight;    // w_p(H_f)
  Rational guarantee_bound;   // delta * w_p(H_f)
  /// lambda was given, H_f is a (lambda, p)_k-structure and p <= 1/lambda.
  bool guarantee_applicable = false;
  std::optional<StructureReport> structure;
  ContainerFamily family;
};

MaxSatResult max_sat_approx(const Formula& f, const WeightParams& params, bool greedy_polish,
                            const EnumerationOptions& enumeration = {});

struct DenseMaxSatResult {
  Rational p;            // 1 / (2n)
  Rational delta_prime;  // min(1/5, 2 delta d)
  Rational formula_weight;
  Rational bound;        // delta * w_p(H_f)
  bool within_bound = true;
  MaxSatResult outcome;
};

/// Rejects (PreconditionError) when w_p(H_f) < d at p = 1/(2n), reporting
/// the measured weight, or when the derived parameters are out of range.
DenseMaxSatResult dense_max_sat(const Formula& f, const Rational& delta, const Rational& d,
                                bool greedy_polish = false,
                                const EnumerationOptions& enumeration = {});

struct ContainerCertificate {
  VertexSet container;
  std::size_t size = 0;
};

struct DenseSolveResult {
  Rational p;       // 1 / (2n)
  Rational delta;   // d / 3
  Rational weight;  // w_p of the chosen hypergraph
  Rational delta1;  // its maximal p-codegree of single vertices
  Rational size_bound;  // 2n - d / (2 delta1)
  std::vector<ContainerCertificate> certificates;
  SolveResult solve;
};

/// Throws InvariantViolation if a container breaks the size certificate.
DenseSolveResult dense_solve(const Formula& f, const Rational& d,
                             const std::optional<EdgeFamily>& edge_subset = std::nullopt,
                             const EnumerationOptions& enumeration = {});

struct BoundsReport {
  Rational fingerprint_bound;  // 4 k^2 p n / delta
  std::size_t fingerprint_bound_floor = 0;
  Rational entropy_arg;        // 2 k^2 p / delta
  bool bound_trivial = false;  // entropy_arg >= 1/2
  // Reporting only; never used for decisions.
  std::optional<double> entropy;                // H(entropy_arg), if arg < 1
  std::optional<double> container_count_log2;   // 2 H(arg) n
  std::optional<Rational> container_size_bound;  // (2 - 1/lambda) n
  std::optional<Rational> unassigned_bound;      // (1 - 1/lambda) n
};

BoundsReport compute_bounds(const WeightParams& params, std::size_t n);

}  // namespace hcsat
