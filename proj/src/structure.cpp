#include "hcsat/structure.hpp"

#include <string>

#include "hcsat/errors.hpp"

namespace hcsat {

void WeightParams::validate() const {
  if (sgn(p) <= 0 || p > 1) throw PreconditionError("p must satisfy 0 < p <= 1, got " + to_string(p));
  if (sgn(delta) <= 0 || delta >= Rational(1, 4)) {
    throw PreconditionError("delta must satisfy 0 < delta < 1/4, got " + to_string(delta));
  }
  if (k < 2) throw PreconditionError("k must be at least 2, got " + std::to_string(k));
  if (lambda && *lambda <= 1) {
    throw PreconditionError("lambda must exceed 1, got " + to_string(*lambda));
  }
}

void WeightParams::validate_for_container() const {
  validate();
  Rational limit = delta / Rational(static_cast<unsigned long>(k));
  if (p >= limit) {
    throw PreconditionError("p must be below delta/k = " + to_string(limit) + ", got " +
                            to_string(p));
  }
}

void DceParams::validate() const {
  if (D < 1) throw PreconditionError("D must be at least 1, got " + to_string(D));
  if (c <= 1) throw PreconditionError("c must exceed 1, got " + to_string(c));
  if (sgn(epsilon) <= 0 || epsilon > 1) {
    throw PreconditionError("epsilon must satisfy 0 < epsilon <= 1, got " + to_string(epsilon));
  }
}

StructureReport check_structure(const Hypergraph& h, const Rational& lambda,
                                const Rational& p, std::size_t k) {
  for (const auto& e : h.edges()) {
    if (e.size() > k) {
      std::string listed;
      for (Vertex v : e) listed += (listed.empty() ? "" : " ") + std::to_string(vertex_to_signed(v));
      throw PreconditionError("hypergraph is not " + std::to_string(k) +
                              "-bounded: edge {" + listed + "}");
    }
  }
  StructureReport r;
  r.w_p = family_weight(h, p);
  r.avg = average_weight(h, p);
  Codegree d1 = max_codegree(h, 1, p);
  Codegree d2 = max_codegree(h, 2, p);
  r.delta1 = d1.value;
  r.delta2 = d2.value;
  r.delta1_witness = d1.witness;
  r.delta2_witness = d2.witness;
  r.cond1 = r.avg >= p;
  r.cond2 = r.delta1 <= lambda * r.avg;
  r.cond3 = r.delta2 <= lambda * r.avg * pow(p, static_cast<unsigned>(k));
  r.is_structure = r.cond1 && r.cond2 && r.cond3;
  return r;
}

DceReport check_dce(const Hypergraph& h, const DceParams& params) {
  params.validate();
  DceReport r;
  r.num_edges = h.num_edges();
  r.num_vertices = h.universe_size();
  if (r.num_vertices == 0) throw PreconditionError("empty universe");
  for (const auto& e : h.edges()) {
    if (r.uniformity == 0) r.uniformity = e.size();
    if (e.size() != r.uniformity) throw PreconditionError("(D,c,epsilon) check needs a uniform hypergraph");
  }
  // Plain degrees are codegrees at p = 1.
  Codegree d1 = max_codegree(h, 1, Rational(1));
  Codegree d2 = max_codegree(h, 2, Rational(1));
  r.delta1 = d1.value.get_num().get_ui();
  r.delta2 = d2.value.get_num().get_ui();
  r.delta1_witness = d1.witness;
  r.delta2_witness = d2.witness;

  const Rational edges(static_cast<unsigned long>(r.num_edges));
  const Rational vertices(static_cast<unsigned long>(r.num_vertices));
  const Rational density = edges / vertices;
  const Rational delta1(static_cast<unsigned long>(r.delta1));
  const Rational delta2(static_cast<unsigned long>(r.delta2));
  // epsilon = num/den in lowest terms; powers are compared after raising to den.
  const unsigned long eps_num = params.epsilon.get_num().get_ui();
  const unsigned long eps_den = params.epsilon.get_den().get_ui();

  r.density_ok = edges >= params.D * vertices;
  r.degree1_ok = delta1 <= params.c * density;
  r.raw_degree1_ok = delta1 <= params.c * params.D;
  if (r.num_edges == 0) {
    r.degree2_ok = r.delta2 == 0;
  } else {
    // delta2 <= c * density * D^(-num/den)  <=>  (delta2 / (c density))^den * D^num <= 1
    Rational ratio = delta2 / (params.c * density);
    r.degree2_ok = pow(ratio, eps_den) * pow(params.D, eps_num) <= 1;
  }
  // delta2 <= c * D^((den - num)/den)  <=>  (delta2 / c)^den <= D^(den - num)
  r.raw_degree2_ok = pow(delta2 / params.c, eps_den) <= pow(params.D, eps_den - eps_num);
  r.passed = r.density_ok && r.degree1_ok && r.degree2_ok;
  return r;
}

ConvertedParams dce_to_lambda_p(const DceParams& params, std::size_t k,
                                const Rational& tolerance) {
  if (params.D < 1) throw PreconditionError("D must be at least 1, got " + to_string(params.D));
  if (sgn(params.epsilon) <= 0) throw PreconditionError("epsilon must be positive");
  if (k == 0) throw PreconditionError("k must be positive");
  if (sgn(tolerance) <= 0) throw PreconditionError("tolerance must be positive");
  ConvertedParams out;
  out.lambda = params.c;
  // p = (1/D)^(num / (den k))
  const unsigned long eps_num = params.epsilon.get_num().get_ui();
  const unsigned long eps_den = params.epsilon.get_den().get_ui();
  const Rational base = pow(Rational(1) / params.D, static_cast<unsigned>(eps_num));
  const auto degree = static_cast<unsigned>(eps_den * k);
  if (auto root = exact_root(base, degree)) {
    out.p = *root;
    out.exact = true;
    return out;
  }
  Rational inverse = Rational(1) / tolerance;
  mpz_class grid = inverse.get_num() / inverse.get_den();
  if (grid * inverse.get_den() != inverse.get_num()) ++grid;
  out.p = root_ceil_on_grid(base, degree, grid);
  out.exact = false;
  return out;
}

}  // namespace hcsat
