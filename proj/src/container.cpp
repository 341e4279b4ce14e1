#include "hcsat/container.hpp"

#include <algorithm>
#include <limits>
#include <map>

#include "hcsat/errors.hpp"

namespace hcsat {

namespace {

std::string describe(const VertexSet& set) {
  std::string out = "{";
  for (std::size_t j = 0; j < set.size(); ++j) {
    if (j) out += ",";
    out += std::to_string(vertex_to_signed(set[j]));
  }
  return out + "}";
}

EdgeFamily set_minus(const EdgeFamily& a, const EdgeFamily& b) {
  EdgeFamily out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

// C = vertices that are not 1-edges.
VertexSet container_of(const Hypergraph& h) {
  std::vector<bool> excluded(h.universe_size(), false);
  for (const auto& e : h.edges()) {
    if (e.size() == 1) excluded[e[0]] = true;
  }
  VertexSet out;
  for (Vertex v = 0; v < h.universe_size(); ++v) {
    if (!excluded[v]) out.push_back(v);
  }
  return out;
}

Rational weight_above_one_of(const Hypergraph& h, const Rational& p) {
  return family_weight(size_filter(h, SizeRelation::kGreaterThan, 1), p);
}

bool stop_test(const Hypergraph& h, const WeightParams& params) {
  Rational c_size(static_cast<unsigned long>(container_of(h).size()));
  return weight_above_one_of(h, params.p) <= params.delta * params.p * c_size;
}

// H_{i+1} = (H_i minus the up-closure of F) union F.
Hypergraph updated(const Hypergraph& h, const EdgeFamily& F) {
  Hypergraph pruned = remove_superset_edges(h, F);
  std::vector<VertexSet> edges = pruned.edges();
  edges.insert(edges.end(), F.begin(), F.end());
  return h.with_edges(std::move(edges));
}

EdgeFamily family_for(const Hypergraph& h, const Selection& sel, bool L_in_input) {
  if (L_in_input) return link(size_filter(h, SizeRelation::kExactly, sel.s), sel.L);
  return EdgeFamily{sel.L};
}

}  // namespace

ContainerProcess::ContainerProcess(const Hypergraph& h, const WeightParams& params)
    : initial_(h), current_(h), params_(params) {
  params_.validate_for_container();
  for (const auto& e : h.edges()) {
    if (e.size() > params_.k) {
      throw PreconditionError("hypergraph is not " + std::to_string(params_.k) +
                              "-bounded: edge " + describe(e));
    }
  }
  if (!is_antichain(h)) throw PreconditionError("input hypergraph is not an antichain");

  // A link family of s - |L| = t element sets qualifies when
  // count * p^t > delta / k, i.e. count >= floor(delta / (k p^t)) + 1.
  const Rational target = params_.delta / Rational(static_cast<unsigned long>(params_.k));
  min_link_count_.assign(params_.k + 1, std::numeric_limits<std::size_t>::max());
  for (std::size_t t = 1; t < params_.k; ++t) {
    Rational ratio = target / pow(params_.p, static_cast<unsigned>(t));
    std::size_t floor_value = floor_to_size(ratio);
    if (floor_value != std::numeric_limits<std::size_t>::max()) {
      min_link_count_[t] = floor_value + 1;
    }
  }
}

VertexSet ContainerProcess::container() const { return container_of(current_); }

Rational ContainerProcess::weight_above_one() const {
  return weight_above_one_of(current_, params_.p);
}

bool ContainerProcess::stop_test_holds() const { return stop_test(current_, params_); }

std::optional<Selection> ContainerProcess::select() const {
  if (stop_test_holds()) return std::nullopt;
  for (std::size_t s = 2; s <= params_.k; ++s) {
    std::map<VertexSet, std::size_t> counts;
    for (const auto& e : current_.edges()) {
      if (e.size() != s) continue;
      for_each_proper_subset(e, [&](const VertexSet& L) { ++counts[L]; });
    }
    std::vector<const VertexSet*> qualifying;
    for (const auto& [L, count] : counts) {
      if (count >= min_link_count_[s - L.size()] && !current_.contains_edge(L)) {
        qualifying.push_back(&L);
      }
    }
    if (qualifying.empty()) continue;
    // `qualifying` is in lexicographic order; the first maximal one wins.
    for (const VertexSet* candidate : qualifying) {
      bool maximal = std::none_of(qualifying.begin(), qualifying.end(), [&](const VertexSet* other) {
        return other->size() > candidate->size() && is_subset(*candidate, *other);
      });
      if (maximal) return Selection{s, *candidate};
    }
  }
  throw InvariantViolation("stop test failed but no (s, L) qualifies at iteration " +
                           std::to_string(iteration_));
}

EdgeFamily ContainerProcess::apply(const Selection& sel, bool L_in_input) {
  EdgeFamily F = family_for(current_, sel, L_in_input);
  if (F.empty()) throw InvariantViolation("empty update family");
  if (L_in_input) fingerprint_ = set_union(fingerprint_, sel.L);
  current_ = updated(current_, F);
  ++iteration_;
  return F;
}

ContainerOutput ContainerProcess::finish() const {
  ContainerOutput out;
  out.fingerprint = fingerprint_;
  out.container = container();
  out.residual = current_.with_edges(size_filter(current_, SizeRelation::kGreaterThan, 1));
  out.iterations = iteration_;
  std::vector<bool> present(current_.universe_size(), false);
  for (Vertex v : out.container) present[v] = true;
  for (Vertex v = 0; v + 1 < current_.universe_size(); v += 2) {
    if (!present[v] && !present[v + 1]) {
      out.status = ContainerStatus::kError;
      out.missing_variable = variable_of(v);
      break;
    }
  }
  return out;
}

ContainerOutput run_container(const Hypergraph& h, const VertexSet& I,
                              const WeightParams& params, bool trace) {
  ContainerProcess process(h, params);
  if (!std::is_sorted(I.begin(), I.end()) ||
      std::adjacent_find(I.begin(), I.end()) != I.end()) {
    throw PreconditionError("input set must be sorted and duplicate-free");
  }
  if (!I.empty() && I.back() >= h.universe_size()) {
    throw PreconditionError("input set has a vertex outside the universe");
  }
  for (const auto& e : h.edges()) {
    if (is_subset(e, I)) throw PreconditionError("input set is not independent: contains edge " + describe(e));
  }

  std::vector<TraceStep> steps;
  while (auto sel = process.select()) {
    bool in_input = is_subset(sel->L, I);
    TraceStep step;
    if (trace) {
      step.index = process.iteration();
      step.s_chosen = sel->s;
      step.L_chosen = sel->L;
      step.L_in_I = in_input;
      step.C_size = process.container().size();
      step.weight_gt1 = process.weight_above_one();
      step.D_family = set_minus(process.current().edges(), h.edges());
    }
    EdgeFamily F = process.apply(*sel, in_input);
    if (trace) {
      step.F = std::move(F);
      steps.push_back(std::move(step));
    }
  }
  ContainerOutput out = process.finish();
  if (trace) out.trace = std::move(steps);
  return out;
}

EdgeFamily candidate_sets(const Hypergraph& h_i, std::size_t s) {
  std::vector<VertexSet> out;
  for (const auto& e : h_i.edges()) {
    if (e.size() != s) continue;
    for_each_proper_subset(e, [&](const VertexSet& L) {
      if (!h_i.contains_edge(L)) out.push_back(L);
    });
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

class VerdictLog {
 public:
  void record(const char* check, std::size_t iteration, bool passed, std::string detail = {}) {
    verdicts_.push_back(InvariantVerdict{check, iteration, passed, passed ? std::string() : std::move(detail)});
  }
  std::vector<InvariantVerdict> take() { return std::move(verdicts_); }

 private:
  std::vector<InvariantVerdict> verdicts_;
};

// Recomputes the selection from link weights, independently of the
// counting shortcut used by ContainerProcess.
std::optional<Selection> reference_selection(const Hypergraph& h, const WeightParams& params) {
  const Rational target = params.delta / Rational(static_cast<unsigned long>(params.k));
  for (std::size_t s = 2; s <= params.k; ++s) {
    EdgeFamily level = size_filter(h, SizeRelation::kExactly, s);
    std::vector<VertexSet> qualifying;
    for (const auto& L : candidate_sets(h, s)) {
      if (family_weight(link(level, L), params.p) > target) qualifying.push_back(L);
    }
    if (qualifying.empty()) continue;
    std::vector<VertexSet> maximal;
    for (const auto& q : qualifying) {
      bool dominated = false;
      for (const auto& other : qualifying) {
        if (other != q && is_subset(q, other)) dominated = true;
      }
      if (!dominated) maximal.push_back(q);
    }
    return Selection{s, *std::min_element(maximal.begin(), maximal.end())};
  }
  return std::nullopt;
}

}  // namespace

std::vector<InvariantVerdict> verify_trace(const ContainerOutput& output, const Hypergraph& h0,
                                           const VertexSet& I, const WeightParams& params) {
  VerdictLog log;
  if (!output.trace) {
    log.record("trace_present", 0, false, "output was produced without a trace");
    return log.take();
  }
  const auto& steps = *output.trace;
  const Rational p = params.p;
  const Rational link_limit = 2 * params.delta / Rational(static_cast<unsigned long>(params.k));
  const bool non_decrease_applies =
      size_filter(h0, SizeRelation::kExactly, 1).empty() && h0.universe_size() > 0 &&
      p == Rational(1, static_cast<unsigned long>(h0.universe_size()));

  Hypergraph h = h0;
  VertexSet fingerprint;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const TraceStep& step = steps[i];
    const EdgeFamily D = set_minus(h.edges(), h0.edges());
    const VertexSet C = container_of(h);
    const Rational w_gt1 = weight_above_one_of(h, p);

    bool consistent = step.index == i && step.C_size == C.size() && step.weight_gt1 == w_gt1 &&
                      step.D_family == D && step.L_in_I == is_subset(step.L_chosen, I) &&
                      step.F == family_for(h, Selection{step.s_chosen, step.L_chosen}, step.L_in_I);
    log.record("trace_consistent", i, consistent, "recorded step differs from replay");

    log.record("stop_test_failed", i, !stop_test(h, params),
               "iteration ran although the stop test held");
    auto expected = reference_selection(h, params);
    bool rule_ok = expected && expected->s == step.s_chosen && expected->L == step.L_chosen;
    log.record("selection_rule", i, rule_ok,
               expected ? "expected s=" + std::to_string(expected->s) + " L=" + describe(expected->L)
                        : std::string("no qualifying (s, L) exists"));
    log.record("L_not_edge", i, !h.contains_edge(step.L_chosen), describe(step.L_chosen));

    log.record("antichain", i, is_antichain(h), "H_i is not an antichain");

    bool F_outside = !step.F.empty();
    bool grows = false;
    for (const auto& f : step.F) {
      if (up_closure_membership(h.edges(), f)) F_outside = false;
      else grows = true;
    }
    log.record("F_disjoint_from_upclosure", i, F_outside, "some member of F_i contains an edge of H_i");
    log.record("upclosure_grows", i, grows, "F_i adds nothing outside the up-closure of H_i");

    bool link_ok = true;
    std::string link_detail;
    for (std::size_t s = 2; s + 1 <= params.k; ++s) {
      std::map<VertexSet, std::size_t> counts;
      for (const auto& e : D) {
        if (e.size() != s) continue;
        for_each_proper_subset(e, [&](const VertexSet& L) { ++counts[L]; });
      }
      for (const auto& [L, count] : counts) {
        if (up_closure_membership(h.edges(), L)) continue;
        Rational w = pow(p, static_cast<unsigned>(s - L.size())) * count;
        if (w > link_limit) {
          link_ok = false;
          link_detail = "L=" + describe(L) + " s=" + std::to_string(s) + " weight " + to_string(w);
        }
      }
    }
    log.record("link_weight", i, link_ok, link_detail);

    bool small_D = std::none_of(D.begin(), D.end(), [&](const VertexSet& e) { return e.size() >= params.k; });
    log.record("D_has_no_k_edges", i, small_D, "an added edge has size >= k");
    log.record("I_independent", i, is_independent(h, I), "I contains an edge of H_i");

    Hypergraph next = updated(h, step.F);
    if (non_decrease_applies && !step.F.empty()) {
      std::size_t size = step.F.front().size();
      bool uniform = std::all_of(step.F.begin(), step.F.end(),
                                 [&](const VertexSet& f) { return f.size() == size; });
      if (uniform && size >= 2) {
        Rational after = weight_above_one_of(next, p);
        log.record("weight_non_decrease", i, after >= w_gt1,
                   to_string(w_gt1) + " -> " + to_string(after));
      }
    }
    if (step.L_in_I) fingerprint = set_union(fingerprint, step.L_chosen);
    h = std::move(next);
  }

  const std::size_t J = steps.size();
  log.record("antichain", J, is_antichain(h), "H_J is not an antichain");
  log.record("I_independent", J, is_independent(h, I), "I contains an edge of H_J");
  const EdgeFamily D = set_minus(h.edges(), h0.edges());
  log.record("D_has_no_k_edges", J,
             std::none_of(D.begin(), D.end(), [&](const VertexSet& e) { return e.size() >= params.k; }),
             "an added edge has size >= k");
  log.record("stop_test_at_end", J, stop_test(h, params), "w_p(H_J^{>1}) exceeds delta p |C_J|");
  bool outputs_match = output.iterations == J && output.fingerprint == fingerprint &&
                       output.container == container_of(h) &&
                       output.residual.edges() == size_filter(h, SizeRelation::kGreaterThan, 1);
  log.record("output_matches_replay", J, outputs_match, "returned sets differ from replay");
  bool sandwich = is_subset(output.fingerprint, I) && is_subset(I, output.container);
  log.record("fingerprint_sandwich", J, sandwich, "S <= I <= C fails");
  return log.take();
}

}  // namespace hcsat
