#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "chasegraph/chase.hpp"
#include "chasegraph/derivation_graph.hpp"
#include "chasegraph/reduction.hpp"
#include "chasegraph/rule.hpp"

namespace cg {

struct RandomKbOptions {
  std::size_t max_rules = 3;
  std::size_t max_arity = 3;
  std::size_t max_body = 2;
  std::size_t max_head = 2;
  std::size_t max_db = 3;
  std::size_t predicates = 3;
  std::size_t constants = 2;
};

/// Small random knowledge base drawn from `rng`.
KnowledgeBase random_kb(std::mt19937_64& rng, const RandomKbOptions& options = {});

/// Counters and violations gathered by the per-derivation checks.
struct CheckStats {
  std::size_t derivations = 0;
  std::size_t greedy = 0;
  std::size_t traces = 0;
  std::size_t graphs = 0;
  std::size_t decompositions = 0;
  std::vector<std::string> violations;

  void merge(const CheckStats& other);
};

/// Every consistency check that one derivation supports:
///  - it validates;
///  - greedy ⟺ full reduction succeeds ⟺ cr-only reduction succeeds;
///  - decomposition properties of G and of each reduced graph;
///  - prefix invariants of each trace and generative paths of each graph;
///  - the tree decomposition of each reduced graph validates and respects
///    the width bound.
void check_derivation(const Derivation& d, const KnowledgeBase& kb, CheckStats& stats);

/// Checks one reduction trace of `d`'s graph (prefix invariants, properties of
/// the reduced graph, generative paths, tree decomposition).
void check_trace(const ReductionTrace& trace, const Derivation& d, const KnowledgeBase& kb, CheckStats& stats,
                 const std::string& where);

struct SelfcheckOptions {
  std::uint64_t seed = 1;
  std::size_t count = 500;
  std::size_t max_len = 3;
  /// KBs with more derivations than this are discarded and redrawn.
  std::size_t max_derivations = 20000;
};

struct SelfcheckReport {
  CheckStats stats;
  std::size_t kbs = 0;
  std::size_t discarded = 0;
  bool ok() const { return stats.violations.empty(); }
};

SelfcheckReport run_selfcheck(const SelfcheckOptions& options);

}  // namespace cg
