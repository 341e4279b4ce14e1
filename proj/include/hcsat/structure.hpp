#pragma once

#include <cstddef>
#include <optional>

#include "hcsat/hypergraph.hpp"
#include "hcsat/rational.hpp"

namespace hcsat {

/// The quadruple (p, delta, k, lambda). lambda is only needed for spread
/// checks and structure-conditional bounds.
struct WeightParams {
  Rational p;
  Rational delta;
  std::size_t k = 2;
  std::optional<Rational> lambda;

  /// 0 < p <= 1, 0 < delta < 1/4, k >= 2, lambda > 1 when present.
  void validate() const;
  /// validate() plus p < delta / k, the container algorithm's precondition.
  void validate_for_container() const;
};

struct DceParams {
  Rational D;
  Rational c;
  Rational epsilon;

  void validate() const;
};

/// Spread conditions of a (lambda, p)_k-structure.
struct StructureReport {
  Rational w_p;
  Rational avg;     // average p-weight
  Rational delta1;  // maximal p-codegree of 1-sets
  Rational delta2;  // maximal p-codegree of 2-sets
  VertexSet delta1_witness;
  VertexSet delta2_witness;
  bool cond1 = false;  // avg >= p
  bool cond2 = false;  // delta1 <= lambda * avg
  bool cond3 = false;  // delta2 <= lambda * avg * p^k
  bool is_structure = false;
};

/// Throws PreconditionError if h has an edge larger than k.
StructureReport check_structure(const Hypergraph& h, const Rational& lambda,
                                const Rational& p, std::size_t k);

/// (D, c, epsilon) degree conditions on a uniform hypergraph, with plain
/// edge counts. The density-normalised degree bounds decide the verdict;
/// the raw forms are reported alongside.
struct DceReport {
  std::size_t num_edges = 0;
  std::size_t num_vertices = 0;
  std::size_t uniformity = 0;
  std::size_t delta1 = 0;
  std::size_t delta2 = 0;
  VertexSet delta1_witness;
  VertexSet delta2_witness;
  bool density_ok = false;  // |E| >= D |V|
  bool degree1_ok = false;  // delta1 <= c |E| / |V|
  bool degree2_ok = false;  // delta2 <= c (|E| / |V|) D^-epsilon
  bool raw_degree1_ok = false;  // delta1 <= c D
  bool raw_degree2_ok = false;  // delta2 <= c D^(1 - epsilon)
  bool passed = false;          // density_ok && degree1_ok && degree2_ok
};

/// Throws PreconditionError when h is not uniform (an edgeless h is
/// accepted and fails the density condition).
DceReport check_dce(const Hypergraph& h, const DceParams& params);

struct ConvertedParams {
  Rational lambda;
  Rational p;          // exact, or an upper approximation when !exact
  bool exact = true;
};

/// lambda = c and p = D^(-epsilon/k). When that power is irrational, p is
/// rounded up onto the grid 1/ceil(1/tolerance).
ConvertedParams dce_to_lambda_p(const DceParams& params, std::size_t k,
                                const Rational& tolerance = Rational(1, 10000));

}  // namespace hcsat
