#include "hcsat/formula.hpp"

#include <algorithm>
#include <cctype>
#include <cerrno>
#include <cstdlib>
#include <limits>
#include <sstream>
#include <string>

#include "hcsat/errors.hpp"

namespace hcsat {

Literal Literal::from_dimacs(int value) {
  if (value == 0) throw PreconditionError("0 is not a literal");
  return Literal{static_cast<std::uint32_t>(value > 0 ? value : -value), value < 0};
}

Formula::Formula(std::uint32_t num_vars, std::vector<Clause> clauses)
    : num_vars_(num_vars), clauses_(std::move(clauses)) {
  for (const auto& c : clauses_) {
    if (c.literals.empty()) throw PreconditionError("empty clause");
    for (const auto& lit : c.literals) {
      if (lit.var == 0 || lit.var > num_vars_) {
        throw PreconditionError("variable " + std::to_string(lit.var) + " out of range");
      }
    }
  }
}

std::size_t Formula::max_clause_size() const {
  std::size_t k = 0;
  for (const auto& c : clauses_) k = std::max(k, c.size());
  return k;
}

namespace {

bool parse_int(const std::string& token, long long& out) {
  if (token.empty()) return false;
  char* end = nullptr;
  errno = 0;
  out = std::strtoll(token.c_str(), &end, 10);
  return errno == 0 && end == token.c_str() + token.size();
}

}  // namespace

Formula parse_dimacs(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  long long num_vars = 0;
  long long num_clauses = 0;
  std::vector<Clause> clauses;
  Clause current;
  std::size_t header_line = 0;

  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream tokens(line);
    std::string first;
    if (!(tokens >> first)) continue;
    if (first == "c") continue;
    if (first[0] == 'c' && first.size() > 1 && !std::isdigit(static_cast<unsigned char>(first[1]))) {
      continue;
    }
    if (first == "%") break;  // SATLIB trailer
    if (first == "p") {
      if (have_header) throw ParseError(line_no, "duplicate header");
      std::string fmt, vars_tok, clauses_tok, extra;
      if (!(tokens >> fmt >> vars_tok >> clauses_tok) || fmt != "cnf" ||
          !parse_int(vars_tok, num_vars) || !parse_int(clauses_tok, num_clauses) ||
          num_vars < 0 || num_clauses < 0 || (tokens >> extra)) {
        throw ParseError(line_no, "malformed header, expected 'p cnf <vars> <clauses>'");
      }
      if (num_vars > std::numeric_limits<std::int32_t>::max() / 2) {
        throw ParseError(line_no, "too many variables");
      }
      have_header = true;
      header_line = line_no;
      continue;
    }
    if (!have_header) throw ParseError(line_no, "clause data before 'p cnf' header");

    std::istringstream rest(line);
    std::string token;
    while (rest >> token) {
      long long value = 0;
      if (!parse_int(token, value)) {
        throw ParseError(line_no, "expected an integer literal, got '" + token + "'");
      }
      if (value == 0) {
        if (current.literals.empty()) throw ParseError(line_no, "empty clause");
        clauses.push_back(std::move(current));
        current = Clause{};
        continue;
      }
      long long var = value > 0 ? value : -value;
      if (var > num_vars) {
        throw ParseError(line_no, "variable " + std::to_string(var) +
                                      " exceeds declared count " + std::to_string(num_vars));
      }
      current.literals.push_back(Literal::from_dimacs(static_cast<int>(value)));
    }
  }
  if (!have_header) throw ParseError(line_no == 0 ? 1 : line_no, "missing 'p cnf' header");
  if (!current.literals.empty()) {
    throw ParseError(line_no, "last clause is not terminated by 0");
  }
  if (static_cast<long long>(clauses.size()) != num_clauses) {
    throw ParseError(header_line, "header declares " + std::to_string(num_clauses) +
                                      " clauses but " + std::to_string(clauses.size()) +
                                      " were read");
  }
  return Formula(static_cast<std::uint32_t>(num_vars), std::move(clauses));
}

Formula parse_dimacs_string(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_dimacs(in);
}

Formula preprocess(const Formula& f) {
  std::vector<Clause> normalized;
  for (const auto& c : f.clauses()) {
    Clause n = c;
    std::sort(n.literals.begin(), n.literals.end());
    n.literals.erase(std::unique(n.literals.begin(), n.literals.end()), n.literals.end());
    bool tautology = false;
    for (std::size_t j = 1; j < n.literals.size(); ++j) {
      if (n.literals[j].var == n.literals[j - 1].var) tautology = true;
    }
    if (!tautology) normalized.push_back(std::move(n));
  }

  // Decide in order of size, so a clause can only be subsumed by one kept
  // earlier; equal clauses keep their first occurrence.
  std::vector<std::size_t> order(normalized.size());
  for (std::size_t j = 0; j < order.size(); ++j) order[j] = j;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return normalized[a].size() < normalized[b].size();
  });
  std::vector<bool> keep(normalized.size(), false);
  std::vector<VertexSet> kept_sets;
  for (std::size_t j : order) {
    VertexSet s;
    for (const auto& lit : normalized[j].literals) s.push_back(lit.vertex());
    bool subsumed = std::any_of(kept_sets.begin(), kept_sets.end(),
                                [&](const VertexSet& k) { return is_subset(k, s); });
    if (subsumed) continue;
    kept_sets.push_back(std::move(s));
    keep[j] = true;
  }
  // Survivors stay in input order.
  std::vector<Clause> kept;
  for (std::size_t j = 0; j < normalized.size(); ++j) {
    if (keep[j]) kept.push_back(std::move(normalized[j]));
  }
  return Formula(f.num_vars(), std::move(kept));
}

Hypergraph to_hypergraph(const Formula& f) {
  return to_hypergraph(f, std::max<std::size_t>(1, f.max_clause_size()));
}

Hypergraph to_hypergraph(const Formula& f, std::size_t k) {
  std::vector<VertexSet> edges;
  edges.reserve(f.num_clauses());
  for (const auto& c : f.clauses()) {
    VertexSet e;
    for (const auto& lit : c.literals) e.push_back(lit.negation().vertex());
    edges.push_back(make_vertex_set(std::move(e)));
  }
  return Hypergraph(2 * static_cast<std::size_t>(f.num_vars()), k, std::move(edges));
}

Formula formula_from_edges(std::uint32_t num_vars, std::span<const VertexSet> edges) {
  std::vector<Clause> clauses;
  for (const auto& e : edges) {
    Clause c;
    for (Vertex v : e) c.literals.push_back(Literal::from_vertex(complement(v)));
    std::sort(c.literals.begin(), c.literals.end());
    clauses.push_back(std::move(c));
  }
  std::sort(clauses.begin(), clauses.end());
  return Formula(num_vars, std::move(clauses));
}

VertexSet assignment_set(const Assignment& a) {
  VertexSet out;
  out.reserve(a.values.size());
  for (std::uint32_t var = 1; var <= a.values.size(); ++var) {
    out.push_back(a.value(var) ? positive_vertex(var) : negative_vertex(var));
  }
  return out;
}

Evaluation evaluate(const Formula& f, const Assignment& a, const Rational& p) {
  if (a.values.size() != f.num_vars()) {
    throw PreconditionError("assignment does not cover the formula's variables");
  }
  Evaluation result;
  result.falsified_weight = 0;
  for (std::size_t idx = 0; idx < f.num_clauses(); ++idx) {
    const auto& c = f.clauses()[idx];
    bool sat = std::any_of(c.literals.begin(), c.literals.end(),
                           [&](const Literal& lit) { return a.satisfies(lit); });
    if (sat) {
      ++result.satisfied;
    } else {
      result.falsified.push_back(idx);
      result.falsified_weight += pow(p, static_cast<unsigned>(c.size()));
    }
  }
  return result;
}

}  // namespace hcsat
