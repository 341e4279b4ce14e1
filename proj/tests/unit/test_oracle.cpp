#include <doctest.h>

#include "hcsat/errors.hpp"
#include "hcsat/oracle.hpp"
#include "helpers.hpp"

using hcsat::Formula;
using hcsat::Hypergraph;
using hcsat::Rational;
using hcsat::Verdict;
using hcsat::WeightParams;
using testing::bits;
using testing::cnf;
using testing::edges;
using testing::lits;

namespace {

const WeightParams kFig1Params{Rational(1, 100), Rational(1, 5), 3, std::nullopt};
const WeightParams kPairParams{Rational(1, 11), Rational(1, 5), 2, std::nullopt};

std::vector<std::vector<bool>> values(const std::vector<hcsat::Assignment>& models) {
  std::vector<std::vector<bool>> out;
  for (const auto& m : models) out.push_back(m.values);
  return out;
}

void require_pass(const hcsat::OracleReport& r) {
  for (const auto& c : r.checks) {
    INFO(c.name << ": " << c.counterexample);
    CHECK(c.verdict != Verdict::kFail);
  }
}

}  // namespace

TEST_CASE("all_models") {
  auto fig1 = hcsat::all_models(cnf(testing::kFig1));
  CHECK(values(fig1) == std::vector<std::vector<bool>>{bits({0, 0, 1}).values, bits({0, 1, 0}).values,
                                                      bits({0, 1, 1}).values, bits({1, 1, 0}).values});
  CHECK(hcsat::all_models(cnf(testing::kContradiction)).empty());
  CHECK(hcsat::all_models(Formula(1, {})).size() == 2);
  CHECK_THROWS_AS(hcsat::all_models(Formula(17, {})), hcsat::PreconditionError);
  CHECK(hcsat::all_models(Formula(3, {}), 3).size() == 8);
}

TEST_CASE("max_sat_optimum") {
  CHECK(hcsat::max_sat_optimum(cnf(testing::kFig1), Rational(1, 2)) == 0);
  CHECK(hcsat::max_sat_optimum(cnf(testing::kContradiction), Rational(1, 2)) == Rational(1, 2));
  CHECK(hcsat::max_sat_optimum(Formula(2, {}), Rational(1, 3)) == 0);
  // (x1 v x2)(x1 v ~x2)(~x1 v x2)(~x1 v ~x2): every assignment falsifies one pair.
  Formula pairs = cnf("p cnf 2 4\n1 2 0\n1 -2 0\n-1 2 0\n-1 -2 0\n");
  CHECK(hcsat::max_sat_optimum(pairs, Rational(1, 3)) == Rational(1, 9));
}

TEST_CASE("independent_sets") {
  auto edgeless = hcsat::independent_sets(Hypergraph(4, 2, {}), 1);
  CHECK(edgeless.size() == 5);
  CHECK(edgeless.front().empty());
  CHECK(hcsat::independent_sets(Hypergraph(2, 2, edges({{1}})), 2) ==
        std::vector<hcsat::VertexSet>{{}, lits({-1})});
  auto fig1 = hcsat::independent_sets(testing::fig1_hypergraph(), 6);
  CHECK(std::find(fig1.begin(), fig1.end(), lits({1, 2, -3})) != fig1.end());
  for (const auto& I : fig1) CHECK_FALSE(hcsat::is_subset(lits({1, -2}), I));
  CHECK_THROWS_AS(hcsat::independent_sets(Hypergraph(10, 2, {}), 10, 100), hcsat::PreconditionError);
}

TEST_CASE("the oracle enumeration agrees with the pipeline's") {
  Hypergraph h(10, 3, edges({{1, 2}, {-1, 3, 4}, {2, -3}, {-2, -4, 5}, {1, -5}, {3, 5}}));
  for (std::size_t size = 0; size <= 10; ++size) {
    CHECK(hcsat::independent_sets(h, size) == hcsat::enumerate_independent_sets(h, size));
  }
}

TEST_CASE("verify_theorems on the running example") {
  auto params = kFig1Params;
  params.lambda = Rational(2);
  auto r = hcsat::verify_theorems(cnf(testing::kFig1), params);
  require_pass(r);
  CHECK(r.passed());
  CHECK(r.models.size() == 4);
  CHECK(r.optimum == 0);
  CHECK(r.containers == 1);
  CHECK(r.runs_replayed > 0);
  REQUIRE(r.find("container_size") != nullptr);
  CHECK(r.find("container_size")->verdict == Verdict::kNotApplicable);
  CHECK(r.find("coverage")->verdict == Verdict::kPass);
  CHECK(r.find("trace")->verdict == Verdict::kPass);
  CHECK(r.find("no_such_check") == nullptr);
}

TEST_CASE("verify_theorems on the contradiction and the empty formula") {
  auto contradiction = hcsat::verify_theorems(cnf(testing::kContradiction), kPairParams);
  require_pass(contradiction);
  CHECK(contradiction.models.empty());
  CHECK(contradiction.containers == 0);
  CHECK(contradiction.find("decomposition")->verdict == Verdict::kPass);
  CHECK(contradiction.find("empty_family")->verdict == Verdict::kPass);

  auto empty = hcsat::verify_theorems(Formula(3, {}), kPairParams);
  require_pass(empty);
  CHECK(empty.passed());
  CHECK(empty.models.size() == 8);
}

TEST_CASE("verify_theorems on a verified structure") {
  // Complete pairs on 12 variables at p = 1/11: avg = 11 p^2 = p, and the
  // pair codegree p^2 needs lambda = 11.
  Formula f = hcsat::formula_from_edges(12, testing::complete_pairs(12).edges());
  WeightParams params{Rational(1, 11), Rational(1, 5), 2, Rational(11)};
  auto s = hcsat::check_structure(hcsat::to_hypergraph(f, 2), *params.lambda, params.p, 2);
  REQUIRE(s.is_structure);
  auto r = hcsat::verify_theorems(f, params);
  require_pass(r);
  CHECK(r.find("container_size")->verdict == Verdict::kPass);
  CHECK(r.find("maxsat_guarantee")->verdict == Verdict::kPass);
}

TEST_CASE("verify_theorems without replay marks per-run checks not applicable") {
  hcsat::OracleOptions options;
  options.replay_inputs = false;
  auto r = hcsat::verify_theorems(cnf(testing::kFig1), kFig1Params, options);
  CHECK(r.passed());
  CHECK(r.find("trace")->verdict == Verdict::kNotApplicable);
  CHECK(r.runs_replayed == 0);
}

TEST_CASE("FuzzRng streams are reproducible") {
  hcsat::FuzzRng a(42), b(42), c(43);
  bool differs = false;
  for (int j = 0; j < 100; ++j) {
    auto x = a.below(1000);
    CHECK(x == b.below(1000));
    CHECK(x < 1000);
    differs |= x != c.below(1000);
  }
  CHECK(differs);
}

TEST_CASE("random_formula honours its FuzzSpec") {
  hcsat::FuzzRng rng(7);
  for (int j = 0; j < 50; ++j) {
    hcsat::FuzzSpec spec{6, 3, 12, j % 2 == 0};
    Formula f = hcsat::random_formula(rng, spec);
    CHECK(f.num_vars() == 6);
    CHECK(f.max_clause_size() <= 3);
    CHECK(f.num_clauses() <= 12);
    CHECK(hcsat::preprocess(f) == f);
    if (spec.planted) CHECK_FALSE(hcsat::all_models(f).empty());
  }
  hcsat::FuzzRng x(9), y(9);
  CHECK(hcsat::random_formula(x, {}) == hcsat::random_formula(y, {}));
}

TEST_CASE("random_params stays inside the container precondition") {
  hcsat::FuzzRng rng(3);
  for (int j = 0; j < 40; ++j) {
    auto regime = j % 2 ? hcsat::FuzzRegime::kActive : hcsat::FuzzRegime::kSmallBound;
    auto params = hcsat::random_params(rng, 8, 3, regime);
    CHECK_NOTHROW(params.validate_for_container());
    CHECK(params.delta == Rational(1, 5));
    Rational bound = 4 * Rational(9) * params.p * 8 / params.delta;
    if (regime == hcsat::FuzzRegime::kSmallBound) {
      CHECK(bound <= 3);
    } else {
      CHECK(bound >= 16);
    }
  }
}
