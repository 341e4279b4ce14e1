#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hcsat/hypergraph.hpp"
#include "hcsat/rational.hpp"
#include "hcsat/structure.hpp"

namespace hcsat {

/// One iteration of the container procedure, as seen before its update.
struct TraceStep {
  std::size_t index = 0;
  std::size_t s_chosen = 0;
  VertexSet L_chosen;
  bool L_in_I = false;
  EdgeFamily F;
  std::size_t C_size = 0;
  Rational weight_gt1;  // w_p of the edges of size > 1
  EdgeFamily D_family;  // edges present now but not in the input hypergraph
};

enum class ContainerStatus { kOk, kError };

struct ContainerOutput {
  ContainerStatus status = ContainerStatus::kOk;
  /// On kError these still hold S_J and C_J, for diagnostics only.
  VertexSet fingerprint;
  VertexSet container;
  Hypergraph residual;  // edges of size > 1 at termination
  std::size_t iterations = 0;
  /// First variable with both literals outside the container (kError only).
  std::optional<std::uint32_t> missing_variable;
  std::optional<std::vector<TraceStep>> trace;

  bool ok() const { return status == ContainerStatus::kOk; }
};

struct Selection {
  std::size_t s = 0;
  VertexSet L;
};

/// Step-by-step driver for the container procedure. The input set only
/// enters through the answer to "is L_i inside I?", which callers pass to
/// apply(); this lets enumeration explore both answers.
class ContainerProcess {
 public:
  /// Checks the parameter and input-hypergraph preconditions.
  ContainerProcess(const Hypergraph& h, const WeightParams& params);

  /// The next (s_i, L_i), or nullopt when the stop test holds.
  /// Throws InvariantViolation if the stop test fails and nothing qualifies.
  std::optional<Selection> select() const;

  /// Applies the update for `sel`; returns F_i.
  EdgeFamily apply(const Selection& sel, bool L_in_input);

  const Hypergraph& current() const { return current_; }
  const VertexSet& fingerprint() const { return fingerprint_; }
  std::size_t iteration() const { return iteration_; }
  VertexSet container() const;
  Rational weight_above_one() const;
  bool stop_test_holds() const;

  /// Terminal filtering and output assembly. Call once select() is nullopt.
  ContainerOutput finish() const;

 private:
  Hypergraph initial_;
  Hypergraph current_;
  WeightParams params_;
  std::vector<std::size_t> min_link_count_;  // indexed by s - |L|
  VertexSet fingerprint_;
  std::size_t iteration_ = 0;
};

/// Runs the procedure on input set I. Rejects (PreconditionError) a
/// non-antichain or non-k-bounded h, an I that is not independent, and
/// parameters outside 0 < delta < 1/4, 0 < p < delta/k.
ContainerOutput run_container(const Hypergraph& h, const VertexSet& I,
                              const WeightParams& params, bool trace = false);

/// Nonempty proper subsets of edges of size s, minus sets that are edges.
EdgeFamily candidate_sets(const Hypergraph& h_i, std::size_t s);

struct InvariantVerdict {
  std::string check;
  std::size_t iteration = 0;
  bool passed = true;
  std::string detail;
};

/// Replays a traced run from h0 and checks, per iteration: the trace is
/// self-consistent and follows the selection rule; H_i is an antichain;
/// F_i avoids the up-closure of H_i and enlarges it; the link weight of the
/// added edges stays within 2 delta / k; I stays independent; no added
/// edge has size >= k; and, for p = 1/|V| without 1-edges, w_p of edges of
/// size > 1 never decreases on uniform steps of size >= 2. The terminal
/// state is checked against the stop test and the returned sets.
std::vector<InvariantVerdict> verify_trace(const ContainerOutput& output, const Hypergraph& h0,
                                           const VertexSet& I, const WeightParams& params);

inline bool all_passed(const std::vector<InvariantVerdict>& verdicts) {
  for (const auto& v : verdicts) {
    if (!v.passed) return false;
  }
  return true;
}

}  // namespace hcsat
