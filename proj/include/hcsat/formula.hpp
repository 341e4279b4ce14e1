#pragma once

#include <compare>
#include <cstdint>
#include <istream>
#include <string_view>
#include <vector>

#include "hcsat/hypergraph.hpp"
#include "hcsat/rational.hpp"

namespace hcsat {

struct Literal {
  std::uint32_t var = 1;  // 1-based
  bool negated = false;

  Literal negation() const { return Literal{var, !negated}; }
  Vertex vertex() const { return negated ? negative_vertex(var) : positive_vertex(var); }
  int to_dimacs() const { return negated ? -static_cast<int>(var) : static_cast<int>(var); }
  static Literal from_dimacs(int value);
  static Literal from_vertex(Vertex v) { return Literal{variable_of(v), (v & 1u) != 0}; }

  // Ordered by vertex id: x1 < ~x1 < x2 < ...
  friend auto operator<=>(const Literal& a, const Literal& b) {
    return a.vertex() <=> b.vertex();
  }
  friend bool operator==(const Literal&, const Literal&) = default;
};

struct Clause {
  std::vector<Literal> literals;

  std::size_t size() const { return literals.size(); }
  friend auto operator<=>(const Clause&, const Clause&) = default;
  friend bool operator==(const Clause&, const Clause&) = default;
};

/// A total assignment; values[i] is the value of x_{i+1}.
struct Assignment {
  std::vector<bool> values;

  bool value(std::uint32_t var) const { return values.at(var - 1); }
  bool satisfies(const Literal& lit) const { return value(lit.var) != lit.negated; }
  friend bool operator==(const Assignment&, const Assignment&) = default;
};

class Formula {
 public:
  Formula() = default;
  /// Throws PreconditionError for an empty clause or an out-of-range variable.
  Formula(std::uint32_t num_vars, std::vector<Clause> clauses);

  std::uint32_t num_vars() const { return num_vars_; }
  const std::vector<Clause>& clauses() const { return clauses_; }
  std::size_t num_clauses() const { return clauses_.size(); }
  /// Largest clause size; 0 for an empty clause list.
  std::size_t max_clause_size() const;

  friend bool operator==(const Formula&, const Formula&) = default;

 private:
  std::uint32_t num_vars_ = 0;
  std::vector<Clause> clauses_;
};

/// DIMACS CNF. Throws ParseError with the offending line number.
Formula parse_dimacs(std::istream& in);
Formula parse_dimacs_string(std::string_view text);

/// Drops tautologies, duplicate literals and clauses, and subsumed clauses;
/// sorts literals and clauses. The result's clause family is an antichain.
Formula preprocess(const Formula& f);

/// Literal hypergraph on 2n vertices; one edge per clause holding the
/// negated literals. The bound k defaults to the longest clause (at least 1).
Hypergraph to_hypergraph(const Formula& f);
Hypergraph to_hypergraph(const Formula& f, std::size_t k);

/// The formula whose literal hypergraph is (V(H_f), edges).
Formula formula_from_edges(std::uint32_t num_vars, std::span<const VertexSet> edges);

/// I_alpha: x_i for true variables, ~x_i for false ones.
VertexSet assignment_set(const Assignment& a);

struct Evaluation {
  std::size_t satisfied = 0;
  std::vector<std::size_t> falsified;  // clause indices
  Rational falsified_weight;           // sum of p^|clause| over falsified clauses
};

Evaluation evaluate(const Formula& f, const Assignment& a, const Rational& p);

}  // namespace hcsat
