#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "hcsat/formula.hpp"
#include "hcsat/hypergraph.hpp"
#include "hcsat/pipeline.hpp"
#include "hcsat/rational.hpp"
#include "hcsat/structure.hpp"

namespace hcsat {

inline constexpr std::uint32_t kDefaultOracleVarCap = 16;

/// Every satisfying assignment, x1 most significant (000..0 first).
/// Throws PreconditionError when n exceeds var_cap.
std::vector<Assignment> all_models(const Formula& f, std::uint32_t var_cap = kDefaultOracleVarCap);

/// Minimum falsified p-weight over all 2^n assignments.
Rational max_sat_optimum(const Formula& f, const Rational& p,
                         std::uint32_t var_cap = kDefaultOracleVarCap);

/// Independent sets of size <= max_size in canonical order (size, then
/// lexicographic). Throws PreconditionError past volume_guard sets.
std::vector<VertexSet> independent_sets(const Hypergraph& h, std::size_t max_size,
                                        std::size_t volume_guard = 2'000'000);

enum class Verdict { kPass, kFail, kNotApplicable };

struct OracleCheck {
  std::string name;
  Verdict verdict = Verdict::kPass;
  std::string counterexample;  // first failure, or why the check did not apply
};

struct OracleReport {
  std::uint32_t num_vars = 0;
  std::vector<Assignment> models;
  Rational optimum;  // minimum falsified p-weight
  std::size_t containers = 0;
  std::size_t runs_replayed = 0;
  std::vector<OracleCheck> checks;

  bool passed() const;
  const OracleCheck* find(const std::string& name) const;
};

struct OracleOptions {
  std::uint32_t var_cap = kDefaultOracleVarCap;
  std::size_t volume_guard = 2'000'000;
  /// Replays every independent input with tracing. Without it the
  /// per-run checks are reported as not applicable.
  bool replay_inputs = true;
  EnumerationOptions enumeration;
};

/// Runs the pipeline on f and checks its conclusions against exhaustive
/// ground truth. Check names: coverage, fingerprint_bound, pair_hitting,
/// container_size, residual_weight, free_variables, decomposition,
/// empty_family, maxsat_guarantee, determinism, family_agreement, trace,
/// lym.
OracleReport verify_theorems(const Formula& f, const WeightParams& params,
                             const OracleOptions& options = {});

// ---------------------------------------------------------------------------
// Fuzzing

/// std::mt19937_64 with rejection-sampled bounded draws, so streams are
/// identical on every platform.
class FuzzRng {
 public:
  explicit FuzzRng(std::uint64_t seed) : engine_(seed) {}
  /// Uniform in [0, bound); bound > 0.
  std::uint64_t below(std::uint64_t bound);
  bool coin() { return below(2) == 1; }

 private:
  std::mt19937_64 engine_;
};

struct FuzzSpec {
  std::uint32_t vars = 6;
  std::size_t k = 3;
  std::size_t clauses = 12;
  /// Every clause agrees with a hidden assignment drawn first.
  bool planted = false;
  /// When false, every clause has size at least 2 (if k >= 2).
  bool unit_clauses = true;
};

/// Clause sizes are 1 with probability 1/10 (never without unit_clauses),
/// otherwise uniform in 2..k;
/// variables distinct within a clause, signs fair. A planted clause that
/// the hidden assignment falsifies has one random literal flipped. The
/// result is preprocessed.
Formula random_formula(FuzzRng& rng, const FuzzSpec& spec);

enum class FuzzRegime {
  /// p = delta * b / (4 k^2 n), b in 1..3: the fingerprint bound is b.
  kSmallBound,
  /// p = delta / (k + b), b in 1..2: dense inputs run many iterations and
  /// the bound reaches the universe.
  kActive,
};

/// delta is 1/5 in both regimes.
WeightParams random_params(FuzzRng& rng, std::uint32_t n, std::size_t k,
                           FuzzRegime regime = FuzzRegime::kSmallBound);

}  // namespace hcsat
