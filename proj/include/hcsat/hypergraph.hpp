#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "hcsat/rational.hpp"

namespace hcsat {

/// Literal-vertex id. Variable i (1-based) owns ids 2(i-1) for x_i and
/// 2(i-1)+1 for the negation, so numeric order is the global vertex order
/// x1 < ~x1 < x2 < ~x2 < ...
using Vertex = std::uint32_t;

/// Ascending, duplicate-free. std::vector's operator< is exactly the set
/// lexicographic order used for tie-breaking (prefix sorts first).
using VertexSet = std::vector<Vertex>;

/// Sorted, duplicate-free list of vertex sets.
using EdgeFamily = std::vector<VertexSet>;

inline Vertex positive_vertex(std::uint32_t var) { return 2 * (var - 1); }
inline Vertex negative_vertex(std::uint32_t var) { return 2 * (var - 1) + 1; }
inline Vertex complement(Vertex v) { return v ^ 1u; }
inline std::uint32_t variable_of(Vertex v) { return v / 2 + 1; }
/// Signed DIMACS-style encoding: +i for x_i, -i for ~x_i.
inline int vertex_to_signed(Vertex v) {
  int var = static_cast<int>(variable_of(v));
  return (v & 1u) ? -var : var;
}
Vertex vertex_from_signed(int literal);

VertexSet make_vertex_set(std::vector<Vertex> members);
EdgeFamily make_family(std::vector<VertexSet> sets);

bool is_subset(std::span<const Vertex> small, std::span<const Vertex> large);
VertexSet set_union(const VertexSet& a, const VertexSet& b);
VertexSet set_difference(const VertexSet& a, const VertexSet& b);

/// Edge-size selector for size_filter.
enum class SizeRelation { kExactly, kGreaterThan, kLessThan };

class Hypergraph {
 public:
  Hypergraph() = default;
  /// Throws PreconditionError on an empty edge, an edge larger than k, or a
  /// vertex outside the universe. Duplicate edges are merged.
  Hypergraph(std::size_t universe_size, std::size_t k, std::vector<VertexSet> edges);

  std::size_t universe_size() const { return universe_size_; }
  std::size_t k() const { return k_; }
  const EdgeFamily& edges() const { return edges_; }
  std::size_t num_edges() const { return edges_.size(); }
  bool contains_edge(const VertexSet& e) const;

  /// Same universe and bound, different edges (kept sorted).
  Hypergraph with_edges(std::vector<VertexSet> edges) const;

  friend bool operator==(const Hypergraph&, const Hypergraph&) = default;

 private:
  std::size_t universe_size_ = 0;
  std::size_t k_ = 0;
  EdgeFamily edges_;
};

/// Edge weights are p^|E|; requires 0 < p <= 1.
Rational edge_weight(const VertexSet& e, const Rational& p);
Rational family_weight(std::span<const VertexSet> family, const Rational& p);
Rational family_weight(const Hypergraph& h, const Rational& p);

/// {E \ L : L subset of E}. L must be nonempty.
EdgeFamily link(std::span<const VertexSet> family, const VertexSet& L);
EdgeFamily link(const Hypergraph& h, const VertexSet& L);

EdgeFamily size_filter(std::span<const VertexSet> family, SizeRelation rel, std::size_t s);
EdgeFamily size_filter(const Hypergraph& h, SizeRelation rel, std::size_t s);

/// True iff some member of the family is a subset of x (x is in the up-closure).
bool up_closure_membership(std::span<const VertexSet> family, const VertexSet& x);

/// Drops every edge of h that contains a member of F.
Hypergraph remove_superset_edges(const Hypergraph& h, std::span<const VertexSet> F);

/// True iff no edge of h is a subset of `set`.
bool is_independent(const Hypergraph& h, const VertexSet& set);

struct Codegree {
  Rational value;
  VertexSet witness;  // lexicographically smallest maximiser; empty if value is 0
};

/// Max over i-sets L of the p-weight of edges containing L. Only i-subsets
/// of edges are scanned, since every other i-set scores 0.
Codegree max_codegree(const Hypergraph& h, std::size_t i, const Rational& p);
inline Rational codegree(const Hypergraph& h, std::size_t i, const Rational& p) {
  return max_codegree(h, i, p).value;
}

/// w_p(H) / |V(H)|.
Rational average_weight(const Hypergraph& h, const Rational& p);

bool is_antichain(std::span<const VertexSet> family);
inline bool is_antichain(const Hypergraph& h) { return is_antichain(h.edges()); }

/// Sum over sizes s of a_s / C(universe, s).
Rational lym_sum(std::span<const VertexSet> family, std::size_t universe_size);
inline Rational lym_sum(const Hypergraph& h) { return lym_sum(h.edges(), h.universe_size()); }

/// Edges lying entirely inside C. Vertex ids are not renumbered.
Hypergraph induced(const Hypergraph& h, const VertexSet& C);

/// Calls fn(subset) for every nonempty proper subset of `set` (|set| <= 30).
template <typename Fn>
void for_each_proper_subset(const VertexSet& set, Fn&& fn) {
  const std::size_t size = set.size();
  const std::uint32_t full = (std::uint32_t{1} << size) - 1;
  VertexSet subset;
  subset.reserve(size);
  for (std::uint32_t mask = 1; mask < full; ++mask) {
    subset.clear();
    for (std::size_t b = 0; b < size; ++b) {
      if (mask & (std::uint32_t{1} << b)) subset.push_back(set[b]);
    }
    fn(subset);
  }
}

/// Calls fn(subset) for every subset of `set` of exactly `size` elements.
template <typename Fn>
void for_each_subset_of_size(const VertexSet& set, std::size_t size, Fn&& fn) {
  if (size > set.size()) return;
  std::vector<std::size_t> idx(size);
  for (std::size_t j = 0; j < size; ++j) idx[j] = j;
  VertexSet subset(size);
  while (true) {
    for (std::size_t j = 0; j < size; ++j) subset[j] = set[idx[j]];
    fn(subset);
    std::size_t j = size;
    while (j > 0 && idx[j - 1] == set.size() - size + j - 1) --j;
    if (j == 0) return;
    ++idx[j - 1];
    for (std::size_t t = j; t < size; ++t) idx[t] = idx[t - 1] + 1;
  }
}

}  // namespace hcsat
