#include "hcsat/serialize.hpp"

#include <cstdlib>

#include "hcsat/errors.hpp"

namespace hcsat::json {

Json rational(const Rational& value) { return to_string(value); }

Json vertex_set(const VertexSet& set) {
  Json out = Json::array();
  for (Vertex v : set) out.push_back(vertex_to_signed(v));
  return out;
}

Json family(const EdgeFamily& edges) {
  Json out = Json::array();
  for (const auto& e : edges) out.push_back(vertex_set(e));
  return out;
}

Json assignment(const Assignment& a) {
  Json out = Json::array();
  for (bool v : a.values) out.push_back(v ? 1 : 0);
  return out;
}

Json hypergraph(const Hypergraph& h) {
  return Json{{"universe", h.universe_size()}, {"k", h.k()}, {"edges", family(h.edges())}};
}

Json params(const WeightParams& p) {
  Json out{{"p", rational(p.p)}, {"delta", rational(p.delta)}, {"k", p.k}};
  out["lambda"] = p.lambda ? rational(*p.lambda) : Json(nullptr);
  return out;
}

Json structure(const StructureReport& r) {
  return Json{{"w_p", rational(r.w_p)},
              {"average_weight", rational(r.avg)},
              {"delta1", rational(r.delta1)},
              {"delta1_witness", vertex_set(r.delta1_witness)},
              {"delta2", rational(r.delta2)},
              {"delta2_witness", vertex_set(r.delta2_witness)},
              {"cond1", r.cond1},
              {"cond2", r.cond2},
              {"cond3", r.cond3},
              {"is_structure", r.is_structure}};
}

Json dce(const DceReport& r) {
  return Json{{"num_edges", r.num_edges},
              {"num_vertices", r.num_vertices},
              {"uniformity", r.uniformity},
              {"delta1", r.delta1},
              {"delta1_witness", vertex_set(r.delta1_witness)},
              {"delta2", r.delta2},
              {"delta2_witness", vertex_set(r.delta2_witness)},
              {"density_ok", r.density_ok},
              {"degree1_ok", r.degree1_ok},
              {"degree2_ok", r.degree2_ok},
              {"raw_degree1_ok", r.raw_degree1_ok},
              {"raw_degree2_ok", r.raw_degree2_ok},
              {"passed", r.passed}};
}

Json converted(const ConvertedParams& c) {
  return Json{{"lambda", rational(c.lambda)}, {"p", rational(c.p)}, {"exact", c.exact}};
}

Json bounds(const BoundsReport& r) {
  Json out{{"fingerprint_bound", rational(r.fingerprint_bound)},
           {"fingerprint_bound_floor", r.fingerprint_bound_floor},
           {"entropy_arg", rational(r.entropy_arg)},
           {"bound_trivial", r.bound_trivial}};
  out["entropy"] = r.entropy ? Json(*r.entropy) : Json(nullptr);
  out["container_count_log2"] = r.container_count_log2 ? Json(*r.container_count_log2) : Json(nullptr);
  out["container_size_bound"] = r.container_size_bound ? rational(*r.container_size_bound) : Json(nullptr);
  out["unassigned_bound"] = r.unassigned_bound ? rational(*r.unassigned_bound) : Json(nullptr);
  return out;
}

Json trace_step(const TraceStep& step) {
  return Json{{"index", step.index},
              {"s", step.s_chosen},
              {"L", vertex_set(step.L_chosen)},
              {"L_in_I", step.L_in_I},
              {"F", family(step.F)},
              {"C_size", step.C_size},
              {"weight_gt1", rational(step.weight_gt1)},
              {"D", family(step.D_family)}};
}

Json container_output(const ContainerOutput& out) {
  Json j{{"status", out.ok() ? "ok" : "error"},
         {"fingerprint", vertex_set(out.fingerprint)},
         {"container", vertex_set(out.container)},
         {"residual", hypergraph(out.residual)},
         {"iterations", out.iterations}};
  j["missing_variable"] = out.missing_variable ? Json(*out.missing_variable) : Json(nullptr);
  return j;
}

Json stats(const EnumerationStats& s) {
  return Json{{"candidates_examined", s.candidates_examined},
              {"runs_executed", s.runs_executed},
              {"errors_filtered", s.errors_filtered},
              {"max_input_size", s.max_input_size},
              {"fingerprint_bound", rational(s.fingerprint_bound)},
              {"exhaustive", s.exhaustive},
              {"full_enumeration", s.full_enumeration},
              {"inconsistent_fingerprints", s.inconsistent_fingerprints},
              {"warnings", s.warnings}};
}

Json container_family(const ContainerFamily& f) {
  Json entries = Json::array();
  for (const auto& e : f.entries) {
    entries.push_back(Json{{"fingerprint", vertex_set(e.fingerprint)},
                           {"container", vertex_set(e.container)},
                           {"residual_weight", rational(e.residual_weight)},
                           {"residual", family(e.residual.edges())}});
  }
  Json containers = Json::array();
  for (const auto& c : f.containers()) containers.push_back(vertex_set(c));
  return Json{{"num_fingerprints", f.entries.size()},
              {"num_containers", containers.size()},
              {"entries", entries},
              {"containers", containers},
              {"stats", stats(f.stats)}};
}

Json solve(const SolveResult& r) {
  Json per = Json::array();
  for (const auto& rec : r.per_container) {
    per.push_back(Json{{"container", vertex_set(rec.container)},
                       {"free_vars", rec.free_vars},
                       {"status", rec.status == ReducedStatus::kLive ? "live" : "forced_unsat"},
                       {"satisfiable", rec.satisfiable},
                       {"nodes", rec.nodes}});
  }
  Json out{{"result", r.satisfiable ? "SATISFIABLE" : "UNSATISFIABLE"}};
  out["model"] = r.model ? assignment(*r.model) : Json(nullptr);
  out["num_containers"] = r.family.containers().size();
  out["per_container"] = per;
  out["total_nodes"] = r.total_nodes;
  out["baseline_assignments"] = r.baseline_assignments.get_str();
  out["enumeration"] = stats(r.family.stats);
  return out;
}

Json max_sat(const MaxSatResult& r) {
  Json out{{"result", r.has_assignment ? "APPROX" : "NO_ASSIGNMENT"}};
  if (r.has_assignment) {
    out["assignment"] = assignment(r.assignment);
    out["falsified_weight"] = rational(r.falsified_weight);
    out["container"] = vertex_set(r.container);
    out["container_weight"] = rational(r.container_weight);
  }
  out["formula_weight"] = rational(r.formula_weight);
  out["guarantee_bound"] = rational(r.guarantee_bound);
  out["guarantee_applicable"] = r.guarantee_applicable;
  out["structure"] = r.structure ? structure(*r.structure) : Json(nullptr);
  out["num_containers"] = r.family.containers().size();
  out["enumeration"] = stats(r.family.stats);
  return out;
}

Json dense_max_sat(const DenseMaxSatResult& r) {
  return Json{{"p", rational(r.p)},
              {"delta_prime", rational(r.delta_prime)},
              {"formula_weight", rational(r.formula_weight)},
              {"bound", rational(r.bound)},
              {"within_bound", r.within_bound},
              {"outcome", max_sat(r.outcome)}};
}

Json dense_solve(const DenseSolveResult& r) {
  Json certs = Json::array();
  for (const auto& c : r.certificates) {
    certs.push_back(Json{{"container", vertex_set(c.container)}, {"size", c.size}});
  }
  return Json{{"p", rational(r.p)},
              {"delta", rational(r.delta)},
              {"weight", rational(r.weight)},
              {"delta1", rational(r.delta1)},
              {"size_bound", rational(r.size_bound)},
              {"certificates", certs},
              {"solve", solve(r.solve)}};
}

Json oracle(const OracleReport& r) {
  Json models = Json::array();
  for (const auto& m : r.models) models.push_back(assignment(m));
  Json checks = Json::array();
  for (const auto& c : r.checks) {
    const char* verdict = c.verdict == Verdict::kPass   ? "pass"
                          : c.verdict == Verdict::kFail ? "fail"
                                                        : "not_applicable";
    Json entry{{"name", c.name}, {"verdict", verdict}};
    entry["detail"] = c.counterexample.empty() ? Json(nullptr) : Json(c.counterexample);
    checks.push_back(std::move(entry));
  }
  return Json{{"num_vars", r.num_vars},
              {"num_models", r.models.size()},
              {"models", models},
              {"optimum", rational(r.optimum)},
              {"num_containers", r.containers},
              {"runs_replayed", r.runs_replayed},
              {"passed", r.passed()},
              {"checks", checks}};
}

EdgeFamily parse_edge_subset(const std::string& text, std::uint32_t num_vars) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw PreconditionError(std::string("edge subset is not valid JSON: ") + e.what());
  }
  if (!doc.is_array()) throw PreconditionError("edge subset must be a JSON array of edges");
  std::vector<VertexSet> edges;
  for (const auto& edge : doc) {
    if (!edge.is_array() || edge.empty()) {
      throw PreconditionError("each edge must be a nonempty array of signed literals");
    }
    std::vector<Vertex> members;
    for (const auto& lit : edge) {
      if (!lit.is_number_integer()) throw PreconditionError("edge members must be integers");
      const auto value = lit.get<long long>();
      if (value == 0 || std::llabs(value) > static_cast<long long>(num_vars)) {
        throw PreconditionError("edge literal " + std::to_string(value) + " is out of range");
      }
      members.push_back(vertex_from_signed(static_cast<int>(value)));
    }
    edges.push_back(make_vertex_set(std::move(members)));
  }
  return make_family(std::move(edges));
}

}  // namespace hcsat::json
