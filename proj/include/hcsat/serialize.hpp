#pragma once

#include <json.hpp>

#include "hcsat/container.hpp"
#include "hcsat/formula.hpp"
#include "hcsat/hypergraph.hpp"
#include "hcsat/oracle.hpp"
#include "hcsat/pipeline.hpp"
#include "hcsat/structure.hpp"

// JSON views of the library types. Rationals are "num/den" strings and
// vertices are signed literals (+i for x_i, -i for ~x_i). Key order is
// fixed so output is byte-stable.
namespace hcsat::json {

using Json = nlohmann::ordered_json;

Json rational(const Rational& value);
Json vertex_set(const VertexSet& set);
Json family(const EdgeFamily& edges);
Json assignment(const Assignment& a);
Json hypergraph(const Hypergraph& h);
Json params(const WeightParams& p);

Json structure(const StructureReport& r);
Json dce(const DceReport& r);
Json converted(const ConvertedParams& c);
Json bounds(const BoundsReport& r);

Json trace_step(const TraceStep& step);
Json container_output(const ContainerOutput& out);
Json stats(const EnumerationStats& s);
Json container_family(const ContainerFamily& f);

Json solve(const SolveResult& r);
Json max_sat(const MaxSatResult& r);
Json dense_max_sat(const DenseMaxSatResult& r);
Json dense_solve(const DenseSolveResult& r);
Json oracle(const OracleReport& r);

/// Reads an edge-subset file: a JSON array of arrays of signed literals.
EdgeFamily parse_edge_subset(const std::string& text, std::uint32_t num_vars);

}  // namespace hcsat::json
