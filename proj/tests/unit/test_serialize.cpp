#include <doctest.h>

#include "hcsat/errors.hpp"
#include "hcsat/serialize.hpp"
#include "helpers.hpp"

namespace js = hcsat::json;
using hcsat::Rational;
using testing::cnf;
using testing::edges;
using testing::lits;

namespace {

const hcsat::WeightParams kFig1Params{Rational(1, 100), Rational(1, 5), 3, std::nullopt};

}  // namespace

TEST_CASE("rationals and sets") {
  CHECK(js::rational(Rational(6, 8)) == "3/4");
  CHECK(js::rational(Rational(2)) == "2/1");
  CHECK(js::vertex_set(lits({1, -2, 3})).dump() == "[1,-2,3]");
  CHECK(js::family(edges({{1, -2}, {3}})).dump() == "[[1,-2],[3]]");
  CHECK(js::assignment(testing::bits({0, 1})).dump() == "[0,1]");
}

TEST_CASE("hypergraph and params") {
  CHECK(js::hypergraph(testing::fig1_hypergraph()).dump() ==
        R"({"universe":6,"k":3,"edges":[[1,2,3],[1,-2],[-2,-3]]})");
  CHECK(js::params(kFig1Params).dump() == R"({"p":"1/100","delta":"1/5","k":3,"lambda":null})");
}

TEST_CASE("structure report keys") {
  auto r = hcsat::check_structure(testing::fig1_hypergraph(), Rational(2), Rational(1, 2), 3);
  auto j = js::structure(r);
  CHECK(j["average_weight"] == "5/48");
  CHECK(j["cond1"] == false);
  CHECK(j["delta1_witness"].dump() == "[-2]");
}

TEST_CASE("container output and family") {
  auto out = hcsat::run_container(testing::fig1_hypergraph(), {}, kFig1Params);
  auto j = js::container_output(out);
  CHECK(j["status"] == "ok");
  CHECK(j["iterations"] == 0);
  CHECK(j["missing_variable"].is_null());
  CHECK(j["residual"]["edges"].size() == 3);

  auto family = hcsat::enumerate_containers(testing::fig1_hypergraph(), kFig1Params);
  auto f = js::container_family(family);
  CHECK(f["num_containers"] == 1);
  CHECK(f["containers"].dump() == "[[1,-1,2,-2,3,-3]]");
  CHECK(f["stats"]["fingerprint_bound"] == "27/5");
  CHECK(f["entries"][0]["residual_weight"] == "201/1000000");
}

TEST_CASE("solve and max-sat results") {
  auto s = js::solve(hcsat::solve_sat(cnf(testing::kContradiction),
                                      {Rational(1, 11), Rational(1, 5), 2, std::nullopt}));
  CHECK(s["result"] == "UNSATISFIABLE");
  CHECK(s["model"].is_null());
  CHECK(s["baseline_assignments"] == "2");

  auto m = js::max_sat(hcsat::max_sat_approx(cnf(testing::kFig1), kFig1Params, false));
  CHECK(m["result"] == "APPROX");
  CHECK(m["falsified_weight"] == "1/1000000");
  CHECK(m["assignment"].dump() == "[1,1,1]");
}

TEST_CASE("output is stable across runs") {
  auto once = js::oracle(hcsat::verify_theorems(cnf(testing::kFig1), kFig1Params)).dump(2);
  auto twice = js::oracle(hcsat::verify_theorems(cnf(testing::kFig1), kFig1Params)).dump(2);
  CHECK(once == twice);
}

TEST_CASE("parse_edge_subset") {
  CHECK(js::parse_edge_subset("[[1,-2],[2,1],[-3]]", 3) == edges({{1, -2}, {1, 2}, {-3}}));
  CHECK(js::parse_edge_subset("[]", 3).empty());
  CHECK_THROWS_AS(js::parse_edge_subset("[[1,4]]", 3), hcsat::PreconditionError);
  CHECK_THROWS_AS(js::parse_edge_subset("[[0]]", 3), hcsat::PreconditionError);
  CHECK_THROWS_AS(js::parse_edge_subset("[[]]", 3), hcsat::PreconditionError);
  CHECK_THROWS_AS(js::parse_edge_subset("{\"a\":1}", 3), hcsat::PreconditionError);
  CHECK_THROWS_AS(js::parse_edge_subset("[[1,", 3), hcsat::PreconditionError);
  CHECK_THROWS_AS(js::parse_edge_subset("[[\"1\"]]", 3), hcsat::PreconditionError);
}
