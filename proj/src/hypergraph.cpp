#include "hcsat/hypergraph.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "hcsat/errors.hpp"

namespace hcsat {

namespace {

void require_valid_p(const Rational& p) {
  if (sgn(p) <= 0 || p > 1) {
    throw PreconditionError("p must satisfy 0 < p <= 1, got " + to_string(p));
  }
}

}  // namespace

Vertex vertex_from_signed(int literal) {
  if (literal == 0) throw PreconditionError("literal 0 is not a vertex");
  auto var = static_cast<std::uint32_t>(literal > 0 ? literal : -literal);
  return literal > 0 ? positive_vertex(var) : negative_vertex(var);
}

VertexSet make_vertex_set(std::vector<Vertex> members) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  return members;
}

EdgeFamily make_family(std::vector<VertexSet> sets) {
  for (auto& s : sets) s = make_vertex_set(std::move(s));
  std::sort(sets.begin(), sets.end());
  sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
  return sets;
}

bool is_subset(std::span<const Vertex> small, std::span<const Vertex> large) {
  if (small.size() > large.size()) return false;
  return std::includes(large.begin(), large.end(), small.begin(), small.end());
}

VertexSet set_union(const VertexSet& a, const VertexSet& b) {
  VertexSet out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

VertexSet set_difference(const VertexSet& a, const VertexSet& b) {
  VertexSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

Hypergraph::Hypergraph(std::size_t universe_size, std::size_t k,
                       std::vector<VertexSet> edges)
    : universe_size_(universe_size), k_(k), edges_(make_family(std::move(edges))) {
  for (const auto& e : edges_) {
    if (e.empty()) throw PreconditionError("hypergraph edges must be nonempty");
    if (e.size() > k_) {
      throw PreconditionError("edge of size " + std::to_string(e.size()) +
                              " exceeds k = " + std::to_string(k_));
    }
    if (e.back() >= universe_size_) {
      throw PreconditionError("edge vertex outside the universe");
    }
  }
}

bool Hypergraph::contains_edge(const VertexSet& e) const {
  return std::binary_search(edges_.begin(), edges_.end(), e);
}

Hypergraph Hypergraph::with_edges(std::vector<VertexSet> edges) const {
  return Hypergraph(universe_size_, k_, std::move(edges));
}

Rational edge_weight(const VertexSet& e, const Rational& p) {
  require_valid_p(p);
  return pow(p, static_cast<unsigned>(e.size()));
}

Rational family_weight(std::span<const VertexSet> family, const Rational& p) {
  require_valid_p(p);
  // Group by size so each power is computed once.
  std::map<std::size_t, unsigned long> by_size;
  for (const auto& e : family) ++by_size[e.size()];
  Rational total(0);
  for (const auto& [size, count] : by_size) {
    total += pow(p, static_cast<unsigned>(size)) * count;
  }
  return total;
}

Rational family_weight(const Hypergraph& h, const Rational& p) {
  return family_weight(h.edges(), p);
}

EdgeFamily link(std::span<const VertexSet> family, const VertexSet& L) {
  if (L.empty()) throw PreconditionError("link requires a nonempty set");
  std::vector<VertexSet> out;
  for (const auto& e : family) {
    if (is_subset(L, e)) out.push_back(set_difference(e, L));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

EdgeFamily link(const Hypergraph& h, const VertexSet& L) { return link(h.edges(), L); }

EdgeFamily size_filter(std::span<const VertexSet> family, SizeRelation rel, std::size_t s) {
  EdgeFamily out;
  for (const auto& e : family) {
    bool keep = false;
    switch (rel) {
      case SizeRelation::kExactly: keep = e.size() == s; break;
      case SizeRelation::kGreaterThan: keep = e.size() > s; break;
      case SizeRelation::kLessThan: keep = e.size() < s; break;
    }
    if (keep) out.push_back(e);
  }
  return out;
}

EdgeFamily size_filter(const Hypergraph& h, SizeRelation rel, std::size_t s) {
  return size_filter(h.edges(), rel, s);
}

bool up_closure_membership(std::span<const VertexSet> family, const VertexSet& x) {
  return std::any_of(family.begin(), family.end(),
                     [&](const VertexSet& f) { return is_subset(f, x); });
}

Hypergraph remove_superset_edges(const Hypergraph& h, std::span<const VertexSet> F) {
  std::vector<VertexSet> kept;
  kept.reserve(h.num_edges());
  for (const auto& e : h.edges()) {
    if (!up_closure_membership(F, e)) kept.push_back(e);
  }
  return h.with_edges(std::move(kept));
}

bool is_independent(const Hypergraph& h, const VertexSet& set) {
  return !up_closure_membership(h.edges(), set);
}

Codegree max_codegree(const Hypergraph& h, std::size_t i, const Rational& p) {
  require_valid_p(p);
  if (i == 0) throw PreconditionError("codegree order must be positive");
  // Per i-set, count containing edges by size; weight is evaluated once per set.
  std::map<VertexSet, std::vector<unsigned long>> counts;
  for (const auto& e : h.edges()) {
    if (e.size() < i) continue;
    for_each_subset_of_size(e, i, [&](const VertexSet& L) {
      auto& slot = counts[L];
      if (slot.size() <= e.size()) slot.resize(e.size() + 1, 0);
      ++slot[e.size()];
    });
  }
  std::vector<Rational> powers;
  for (std::size_t s = 0; s <= h.k(); ++s) powers.push_back(pow(p, static_cast<unsigned>(s)));
  Codegree best{Rational(0), {}};
  for (const auto& [L, by_size] : counts) {
    Rational w(0);
    for (std::size_t s = 0; s < by_size.size(); ++s) {
      if (by_size[s] != 0) w += powers[s] * by_size[s];
    }
    // Map iteration is lexicographic, so strict > keeps the smallest witness.
    if (w > best.value) best = Codegree{w, L};
  }
  return best;
}

Rational average_weight(const Hypergraph& h, const Rational& p) {
  if (h.universe_size() == 0) throw PreconditionError("empty universe");
  return family_weight(h, p) / Rational(static_cast<unsigned long>(h.universe_size()));
}

bool is_antichain(std::span<const VertexSet> family) {
  for (std::size_t a = 0; a < family.size(); ++a) {
    for (std::size_t b = 0; b < family.size(); ++b) {
      if (a != b && is_subset(family[a], family[b])) return false;
    }
  }
  return true;
}

Rational lym_sum(std::span<const VertexSet> family, std::size_t universe_size) {
  std::map<std::size_t, unsigned long> by_size;
  for (const auto& e : family) ++by_size[e.size()];
  Rational total(0);
  for (const auto& [size, count] : by_size) {
    Rational denom = binomial(universe_size, size);
    if (sgn(denom) == 0) throw PreconditionError("set larger than the universe");
    total += Rational(count) / denom;
  }
  return total;
}

Hypergraph induced(const Hypergraph& h, const VertexSet& C) {
  std::vector<VertexSet> kept;
  for (const auto& e : h.edges()) {
    if (is_subset(e, C)) kept.push_back(e);
  }
  return h.with_edges(std::move(kept));
}

}  // namespace hcsat
