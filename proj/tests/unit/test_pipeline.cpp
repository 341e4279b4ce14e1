#include <doctest.h>

#include <set>

#include "hcsat/errors.hpp"
#include "hcsat/pipeline.hpp"
#include "helpers.hpp"

using hcsat::EnumerationOptions;
using hcsat::EnumerationStrategy;
using hcsat::Formula;
using hcsat::Hypergraph;
using hcsat::Rational;
using hcsat::ReducedStatus;
using hcsat::WeightParams;
using testing::bits;
using testing::cnf;
using testing::complete_pairs;
using testing::edges;
using testing::lits;

namespace {

const WeightParams kFig1Params{Rational(1, 100), Rational(1, 5), 3, std::nullopt};
const WeightParams kPairParams{Rational(1, 11), Rational(1, 5), 2, std::nullopt};

bool same_family(const hcsat::ContainerFamily& a, const hcsat::ContainerFamily& b) {
  if (a.entries.size() != b.entries.size()) return false;
  for (std::size_t j = 0; j < a.entries.size(); ++j) {
    const auto& x = a.entries[j];
    const auto& y = b.entries[j];
    if (x.fingerprint != y.fingerprint || x.container != y.container || !(x.residual == y.residual) ||
        x.residual_weight != y.residual_weight) {
      return false;
    }
  }
  return true;
}

std::set<std::vector<bool>> model_set(std::initializer_list<std::initializer_list<int>> rows) {
  std::set<std::vector<bool>> out;
  for (auto r : rows) out.insert(bits(r).values);
  return out;
}

}  // namespace

TEST_CASE("enumerate_independent_sets") {
  Hypergraph edgeless(4, 2, {});
  CHECK(hcsat::enumerate_independent_sets(edgeless, 1).size() == 5);
  CHECK(hcsat::enumerate_independent_sets(edgeless, 4).size() == 16);
  Hypergraph unit(2, 2, edges({{1}}));
  CHECK(hcsat::enumerate_independent_sets(unit, 2) == std::vector<hcsat::VertexSet>{{}, lits({-1})});
  auto fig1 = hcsat::enumerate_independent_sets(testing::fig1_hypergraph(), 6);
  CHECK(std::find(fig1.begin(), fig1.end(), lits({1, 2, -3})) != fig1.end());
  for (const auto& I : fig1) CHECK_FALSE(hcsat::is_subset(lits({1, -2}), I));
}

TEST_CASE("enumerate_containers on the contradiction is empty") {
  Hypergraph h = hcsat::to_hypergraph(cnf(testing::kContradiction), 2);
  auto family = hcsat::enumerate_containers(h, kPairParams);
  CHECK(family.empty());
  CHECK(family.stats.errors_filtered == family.stats.runs_executed);
  CHECK(family.stats.runs_executed > 0);
}

TEST_CASE("enumerate_containers on an edgeless hypergraph") {
  Hypergraph h(6, 2, {});
  auto family = hcsat::enumerate_containers(h, kPairParams);
  REQUIRE(family.entries.size() == 1);
  CHECK(family.entries[0].fingerprint.empty());
  CHECK(family.entries[0].container.size() == 6);
  CHECK(family.entries[0].residual_weight == 0);
}

TEST_CASE("enumerate_containers on the running example") {
  auto family = hcsat::enumerate_containers(testing::fig1_hypergraph(), kFig1Params);
  CHECK(family.stats.fingerprint_bound == Rational(27, 5));
  CHECK(family.stats.max_input_size == 5);
  CHECK_FALSE(family.stats.full_enumeration);
  CHECK(family.stats.exhaustive);
  REQUIRE(family.entries.size() == 1);
  CHECK(family.containers() == std::vector<hcsat::VertexSet>{lits({1, -1, 2, -2, 3, -3})});
  CHECK(family.entries[0].residual_weight == Rational(201, 1000000));
  CHECK(family.stats.inconsistent_fingerprints == 0);
}

TEST_CASE("full enumeration fallback, cap and warnings") {
  Hypergraph h = complete_pairs(4);
  auto full = hcsat::enumerate_containers(h, kPairParams);
  // 4 * 4 * (1/11) * 4 / (1/5) = 320/11 exceeds the universe of 8.
  CHECK(full.stats.full_enumeration);
  CHECK(full.stats.max_input_size == 8);
  CHECK(full.stats.exhaustive);
  CHECK(full.stats.warnings.size() == 1);

  EnumerationOptions capped;
  capped.cap = 1;
  auto partial = hcsat::enumerate_containers(h, kPairParams, capped);
  CHECK_FALSE(partial.stats.exhaustive);
  CHECK(partial.stats.max_input_size == 1);
  CHECK(partial.stats.warnings.size() == 2);
}

TEST_CASE("both strategies and any thread count give the same family") {
  std::vector<std::pair<Hypergraph, WeightParams>> cases{
      {complete_pairs(4), kPairParams},
      {complete_pairs(5, 3), WeightParams{Rational(1, 16), Rational(1, 5), 3, std::nullopt}},
      {testing::fig1_hypergraph(), kFig1Params},
      {Hypergraph(8, 2, edges({{1, 2}, {-1, 3}, {2, -3}, {-2, 4}, {3, 4}, {-4, 1}, {1, 3}})),
       kPairParams},
      {hcsat::to_hypergraph(cnf(testing::kContradiction), 2), kPairParams},
  };
  for (const auto& [h, params] : cases) {
    auto base = hcsat::enumerate_containers(h, params);
    EnumerationOptions tree;
    tree.strategy = EnumerationStrategy::kDecisionTree;
    CHECK(same_family(base, hcsat::enumerate_containers(h, params, tree)));
    EnumerationOptions threaded;
    threaded.threads = 3;
    CHECK(same_family(base, hcsat::enumerate_containers(h, params, threaded)));
  }
}

TEST_CASE("reduce_formula") {
  Formula f = cnf(testing::kFig1);
  SUBCASE("forced literals satisfy every clause") {
    auto rf = hcsat::reduce_formula(f, lits({1, -1, 2, -3}));
    CHECK(rf.status == ReducedStatus::kLive);
    CHECK(rf.free_vars == std::vector<std::uint32_t>{1});
    CHECK(rf.forced[1] == true);
    CHECK(rf.forced[2] == false);
    CHECK(rf.clauses.empty());
    CHECK_FALSE(rf.has_falsified_clause);
  }
  SUBCASE("a variable with neither literal") {
    auto rf = hcsat::reduce_formula(f, lits({2, -2, 3, -3}));
    CHECK(rf.status == ReducedStatus::kForcedUnsat);
    CHECK(rf.unsat_variable == 1u);
  }
  SUBCASE("full universe leaves everything free") {
    auto rf = hcsat::reduce_formula(f, lits({1, -1, 2, -2, 3, -3}));
    CHECK(rf.free_vars.size() == 3);
    CHECK(rf.clauses == f.clauses());
  }
  SUBCASE("clauses shrink to their free literals") {
    auto rf = hcsat::reduce_formula(f, lits({1, -2, 3, -3}));  // x1 := 1, x2 := 0
    REQUIRE(rf.status == ReducedStatus::kLive);
    CHECK(rf.has_falsified_clause);  // (~x1 v x2)
    REQUIRE(rf.clauses.size() == 2);
    CHECK(rf.clauses[0].literals.empty());
    CHECK(rf.clauses[1].literals == std::vector<hcsat::Literal>{hcsat::Literal{3, false}});
  }
  CHECK_THROWS_AS(hcsat::reduce_formula(f, lits({4})), hcsat::PreconditionError);
}

TEST_CASE("base_solver") {
  Formula f = cnf(testing::kFig1);
  auto trivial = hcsat::base_solver(hcsat::reduce_formula(f, lits({1, -1, 2, -3})));
  CHECK(trivial.satisfiable);
  CHECK(trivial.assignment.values == bits({1, 1, 0}).values);
  CHECK(trivial.nodes == 1);

  Formula contradiction = cnf(testing::kContradiction);
  auto unsat = hcsat::base_solver(hcsat::reduce_formula(contradiction, lits({1, -1})));
  CHECK_FALSE(unsat.satisfiable);
  CHECK(unsat.nodes >= 1);

  auto full = hcsat::base_solver(hcsat::reduce_formula(f, lits({1, -1, 2, -2, 3, -3})));
  REQUIRE(full.satisfiable);
  CHECK(hcsat::evaluate(f, full.assignment, Rational(1)).falsified.empty());

  CHECK_FALSE(hcsat::base_solver(hcsat::reduce_formula(f, lits({2, -2}))).satisfiable);
}

TEST_CASE("solve_sat") {
  SUBCASE("running example") {
    auto r = hcsat::solve_sat(cnf(testing::kFig1), kFig1Params);
    REQUIRE(r.satisfiable);
    auto models = model_set({{0, 0, 1}, {0, 1, 0}, {0, 1, 1}, {1, 1, 0}});
    CHECK(models.count(r.model->values) == 1);
    CHECK(r.baseline_assignments == 8);
    REQUIRE(r.per_container.size() == 1);
    CHECK(r.per_container[0].free_vars == 3);
  }
  SUBCASE("contradiction") {
    auto r = hcsat::solve_sat(cnf(testing::kContradiction), kPairParams);
    CHECK_FALSE(r.satisfiable);
    CHECK(r.family.empty());
    CHECK(r.per_container.empty());
    CHECK(r.total_nodes == 0);
  }
  SUBCASE("empty formula") {
    auto r = hcsat::solve_sat(Formula(2, {}), kPairParams);
    REQUIRE(r.satisfiable);
    CHECK(r.model->values.size() == 2);
  }
  SUBCASE("complete pairs are unsatisfiable") {
    Formula f = hcsat::formula_from_edges(4, complete_pairs(4).edges());
    auto r = hcsat::solve_sat(f, kPairParams);
    CHECK_FALSE(r.satisfiable);
    CHECK(r.family.stats.errors_filtered > 0);  // every run here ends in the Error branch
    for (const auto& rec : r.per_container) CHECK_FALSE(rec.satisfiable);
  }
  SUBCASE("bad parameters") {
    auto bad = kFig1Params;
    bad.p = Rational(1, 10);
    CHECK_THROWS_AS(hcsat::solve_sat(cnf(testing::kFig1), bad), hcsat::PreconditionError);
  }
}

TEST_CASE("container_hypergraph and edge subsets") {
  Formula f = cnf(testing::kFig1);
  CHECK(hcsat::container_hypergraph(f, 3, std::nullopt) == testing::fig1_hypergraph());
  auto sub = hcsat::container_hypergraph(f, 3, edges({{1, -2}}));
  CHECK(sub.edges() == edges({{1, -2}}));
  CHECK(sub.universe_size() == 6);
  CHECK_THROWS_AS(hcsat::container_hypergraph(f, 3, edges({{1, 2}})), hcsat::PreconditionError);

  hcsat::SolveOptions options;
  options.edge_subset = edges({{1, -2}});
  auto r = hcsat::solve_sat(f, kFig1Params, options);
  CHECK(r.satisfiable);
}

TEST_CASE("max_sat_approx") {
  SUBCASE("running example without and with polish") {
    auto plain = hcsat::max_sat_approx(cnf(testing::kFig1), kFig1Params, false);
    REQUIRE(plain.has_assignment);
    CHECK(plain.assignment.values == bits({1, 1, 1}).values);
    CHECK(plain.falsified_weight == Rational(1, 1000000));
    CHECK(plain.container.size() == 6);
    CHECK(plain.container_weight == Rational(201, 1000000));
    CHECK(plain.guarantee_bound == Rational(201, 5000000));
    CHECK_FALSE(plain.guarantee_applicable);

    auto polished = hcsat::max_sat_approx(cnf(testing::kFig1), kFig1Params, true);
    REQUIRE(polished.has_assignment);
    CHECK(polished.falsified_weight == 0);
    CHECK(polished.assignment.values == bits({0, 1, 1}).values);
  }
  SUBCASE("contradiction") {
    auto r = hcsat::max_sat_approx(cnf(testing::kContradiction), kPairParams, true);
    CHECK_FALSE(r.has_assignment);
  }
  SUBCASE("empty formula") {
    auto r = hcsat::max_sat_approx(Formula(3, {}), kPairParams, false);
    REQUIRE(r.has_assignment);
    CHECK(r.falsified_weight == 0);
  }
  SUBCASE("structure verdict is reported when lambda is given") {
    auto params = kFig1Params;
    params.lambda = Rational(2);
    auto r = hcsat::max_sat_approx(cnf(testing::kFig1), params, false);
    REQUIRE(r.structure.has_value());
    CHECK_FALSE(r.structure->is_structure);
    CHECK_FALSE(r.guarantee_applicable);
  }
}

TEST_CASE("dense_max_sat") {
  CHECK_THROWS_AS(hcsat::dense_max_sat(Formula(2, {}), Rational(1, 8), Rational(1, 10)),
                  hcsat::PreconditionError);
  try {
    hcsat::dense_max_sat(cnf(testing::kFig1), Rational(1, 8), Rational(1));
    FAIL("weight below d accepted");
  } catch (const hcsat::PreconditionError& e) {
    CHECK(std::string(e.what()).find("w_p(H) = ") != std::string::npos);
  }
  CHECK_THROWS_AS(hcsat::dense_max_sat(cnf(testing::kFig1), Rational(1, 4), Rational(1, 100)),
                  hcsat::PreconditionError);
  // delta' = 2 (1/8)(7/16) = 7/64 puts p = 1/16 above delta' / k.
  Formula pairs = hcsat::formula_from_edges(8, complete_pairs(8).edges());
  CHECK_THROWS_AS(hcsat::dense_max_sat(pairs, Rational(1, 8), Rational(7, 16)),
                  hcsat::PreconditionError);

  // Complete pairs on 8 variables: w at p = 1/16 is 112/256 = 7/16.
  Formula f = hcsat::formula_from_edges(8, complete_pairs(8).edges());
  auto r = hcsat::dense_max_sat(f, Rational(1, 5), Rational(7, 16));
  CHECK(r.p == Rational(1, 16));
  CHECK(r.formula_weight == Rational(7, 16));
  CHECK(r.delta_prime == Rational(7, 40));
  CHECK(r.bound == Rational(7, 80));
  CHECK(r.within_bound);
  if (r.outcome.has_assignment) CHECK(r.outcome.falsified_weight <= r.bound);
}

TEST_CASE("dense_solve") {
  Formula f = hcsat::formula_from_edges(8, complete_pairs(8).edges());
  auto r = hcsat::dense_solve(f, Rational(7, 16));
  CHECK(r.p == Rational(1, 16));
  CHECK(r.delta == Rational(7, 48));
  CHECK(r.weight == Rational(7, 16));
  CHECK(r.delta1 == Rational(14, 256));
  CHECK(r.size_bound == 12);
  CHECK_FALSE(r.solve.satisfiable);
  CHECK(r.certificates.size() == r.solve.family.containers().size());
  for (const auto& c : r.certificates) CHECK(Rational(static_cast<unsigned long>(c.size)) <= r.size_bound);

  // delta = d / 3 >= 1/4 is out of range; the weight test rejects first here.
  CHECK_THROWS_AS(hcsat::dense_solve(f, Rational(3, 4)), hcsat::PreconditionError);
  CHECK_THROWS_AS(hcsat::dense_solve(cnf(testing::kContradiction), Rational(1, 10)),
                  hcsat::PreconditionError);
  CHECK_THROWS_AS(hcsat::dense_solve(f, Rational(1, 10), edges({{1, 2}, {1, 2, 3}})),
                  hcsat::PreconditionError);
}

TEST_CASE("compute_bounds") {
  auto r = hcsat::compute_bounds({Rational(1, 100), Rational(1, 5), 2, std::nullopt}, 50);
  CHECK(r.fingerprint_bound == 40);
  CHECK(r.fingerprint_bound_floor == 40);
  CHECK(r.entropy_arg == Rational(2, 5));
  CHECK_FALSE(r.bound_trivial);
  CHECK(r.entropy.has_value());
  CHECK_FALSE(r.container_size_bound.has_value());

  auto half = hcsat::compute_bounds({Rational(1, 80), Rational(1, 5), 2, Rational(4)}, 10);
  CHECK(half.entropy_arg == Rational(1, 2));
  CHECK(half.bound_trivial);
  CHECK(*half.entropy == doctest::Approx(1.0));
  CHECK(*half.container_count_log2 == doctest::Approx(20.0));
  CHECK(*half.container_size_bound == Rational(35, 2));
  CHECK(*half.unassigned_bound == Rational(15, 2));

  auto large = hcsat::compute_bounds({Rational(1, 10), Rational(1, 5), 2, std::nullopt}, 10);
  CHECK(large.entropy_arg == 4);
  CHECK_FALSE(large.entropy.has_value());

  auto tiny = hcsat::compute_bounds({Rational(1, 1000000), Rational(1, 5), 2, std::nullopt}, 10);
  CHECK(tiny.fingerprint_bound_floor == 0);
  CHECK(*tiny.container_count_log2 < 0.1);
}
