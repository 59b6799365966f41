#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "chasegraph/chase.hpp"
#include "chasegraph/rule.hpp"

namespace cg {

/// True iff some instance I exists where r2 is not triggered, r1 is triggered
/// via some h, and r2 is triggered in Ch(I, r1, h).
bool depends_on(const Rule& r2, const Rule& r1);

/// The instance witnessing depends_on(r2, r1), if any. Variables that stay
/// unconstrained are frozen into fresh constants named `_k<i>`.
std::optional<Instance> dependence_witness(const Rule& r2, const Rule& r1);

/// Vertices are rule indices; an edge (a, b) means rule b depends on rule a.
struct RuleDependencyGraph {
  std::vector<std::string> vertices;
  std::set<std::pair<std::size_t, std::size_t>> edges;

  /// Vertices without incoming edges.
  std::vector<std::size_t> sources() const;
  /// Longest-path layer over the strongly connected components; sources of
  /// the condensation get layer 0.
  std::vector<std::size_t> layers() const;
};

RuleDependencyGraph rule_dependency_graph(const RuleSet& rules);

struct StepGreediness {
  std::size_t step = 0;  // 1-based
  TermSet frontier_image;
  /// Smallest j < step whose head nulls (plus constants and initial nulls)
  /// cover the frontier image; j = 0 stands for the initial instance.
  std::optional<std::size_t> witness;
};

struct GreedinessReport {
  bool greedy = true;
  std::vector<StepGreediness> steps;
  /// First step without a witness.
  std::optional<std::size_t> first_violation;
};

GreedinessReport is_greedy(const Derivation& d, const RuleSet& rules);
GreedinessReport is_greedy(const Derivation& d, const KnowledgeBase& kb);

/// Re-checks every witness and violation in `report` against `d`.
bool verify_greedy_report(const GreedinessReport& report, const Derivation& d, const RuleSet& rules);

/// Swaps steps i and i+1 (1-based). Throws NotPermutable unless the trigger
/// of step i+1 already maps into I_{i-1}.
Derivation permute_adjacent(const Derivation& d, std::size_t i, const RuleSet& rules);

/// Stable bubble passes moving steps of lower GRD layer before steps of higher
/// layer whenever permute_adjacent allows it.
Derivation normalize_by_grd(const Derivation& d, const RuleDependencyGraph& grd, const RuleSet& rules);

struct RederivationOptions {
  std::size_t max_derivations = 1000000;
  std::size_t max_atoms = 100000;
};

/// Shortest greedy derivation from kb's database whose final instance is
/// isomorphic to `target` modulo nulls, searching lengths 0..max_len.
/// Throws ResourceLimit.
std::optional<Derivation> find_greedy_rederivation(const KnowledgeBase& kb, const Instance& target,
                                                   std::size_t max_len, const RederivationOptions& options = {});

}  // namespace cg
