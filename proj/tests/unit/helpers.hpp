#pragma once

#include <initializer_list>
#include <string>
#include <vector>

#include "hcsat/formula.hpp"
#include "hcsat/hypergraph.hpp"

namespace testing {

inline hcsat::VertexSet lits(std::initializer_list<int> signed_literals) {
  std::vector<hcsat::Vertex> out;
  for (int l : signed_literals) out.push_back(hcsat::vertex_from_signed(l));
  return hcsat::make_vertex_set(out);
}

inline hcsat::EdgeFamily edges(std::initializer_list<std::initializer_list<int>> sets) {
  std::vector<hcsat::VertexSet> out;
  for (auto s : sets) out.push_back(lits(s));
  return hcsat::make_family(out);
}

inline hcsat::Formula cnf(const std::string& text) {
  return hcsat::preprocess(hcsat::parse_dimacs_string(text));
}

inline const char* kFig1 = "p cnf 3 3\n-1 -2 -3 0\n-1 2 0\n2 3 0\n";
inline const char* kContradiction = "p cnf 1 2\n1 0\n-1 0\n";

inline hcsat::Hypergraph fig1_hypergraph() { return hcsat::to_hypergraph(cnf(kFig1)); }

// Every 2-clause on n variables with every sign pattern, as a hypergraph.
inline hcsat::Hypergraph complete_pairs(std::uint32_t n, std::size_t k = 2) {
  std::vector<hcsat::VertexSet> out;
  for (hcsat::Vertex a = 0; a < 2 * n; ++a) {
    for (hcsat::Vertex b = a + 1; b < 2 * n; ++b) {
      if (hcsat::variable_of(a) != hcsat::variable_of(b)) out.push_back({a, b});
    }
  }
  return hcsat::Hypergraph(2 * n, k, out);
}

inline hcsat::Assignment bits(std::initializer_list<int> v) {
  hcsat::Assignment a;
  for (int x : v) a.values.push_back(x != 0);
  return a;
}

}  // namespace testing
