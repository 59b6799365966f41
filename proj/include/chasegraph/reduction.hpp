#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "chasegraph/derivation_graph.hpp"

namespace cg {

/// AR(i, j): drop arc (X_i, X_j) whose label is empty.
struct ArStep {
  std::size_t i, j;
  friend bool operator==(const ArStep&, const ArStep&) = default;
};

/// TR(i, j, k, t): remove t from L(X_j, X_k) when it also labels (X_i, X_k).
struct TrStep {
  std::size_t i, j, k;
  Term t;
  friend bool operator==(const TrStep&, const TrStep&) = default;
};

/// CR(i, j, k, l): replace (X_i, X_k) and (X_j, X_k) by (X_l, X_k) carrying
/// the union of both labels.
struct CrStep {
  std::size_t i, j, k, l;
  friend bool operator==(const CrStep&, const CrStep&) = default;
};

using ReductionStep = std::variant<ArStep, TrStep, CrStep>;

std::string to_string(const ReductionStep& step);

/// Each throws SideConditionViolated when the step does not apply.
DerivationGraph apply_ar(const DerivationGraph& g, std::size_t i, std::size_t j);
DerivationGraph apply_tr(const DerivationGraph& g, std::size_t i, std::size_t j, std::size_t k, const Term& t);
DerivationGraph apply_cr(const DerivationGraph& g, std::size_t i, std::size_t j, std::size_t k, std::size_t l);
DerivationGraph apply_step(const DerivationGraph& g, const ReductionStep& step);

/// The underlying undirected graph is a forest.
bool is_cycle_free(const DerivationGraph& g);

/// Cycle-free and no node has two incoming arcs.
bool is_reduction_complete(const DerivationGraph& g);

struct ReductionTrace {
  DerivationGraph initial;
  std::vector<ReductionStep> steps;
  /// graphs[s] is the graph after the first s + 1 steps.
  std::vector<DerivationGraph> graphs;

  const DerivationGraph& final_graph() const { return graphs.empty() ? initial : graphs.back(); }
  /// Re-applies the steps; true when every recorded intermediate matches.
  bool replay_matches() const;
  std::vector<std::string> step_strings() const;
};

/// Builds a trace by applying `steps` to `g`. Throws SideConditionViolated.
ReductionTrace make_trace(const DerivationGraph& g, const std::vector<ReductionStep>& steps);

enum class Strategy { CrOnly, Full };

struct ReduceOptions {
  std::size_t max_states = 100000;
};

/// A trace ending in a completely reduced graph, or nullopt when none exists.
/// The full strategy throws ResourceLimit when it exceeds max_states.
std::optional<ReductionTrace> reduce(const DerivationGraph& g, Strategy strategy, const ReduceOptions& options = {});

struct PrefixReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

/// Label and frontier invariants on every prefix of the trace, node data
/// unchanged throughout, and, for complete traces, that every non-source node
/// has its frontier inside the terms of some earlier node.
PrefixReport check_prefix_invariants(const ReductionTrace& trace);

}  // namespace cg
