#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "chasegraph/chase.hpp"
#include "chasegraph/reduction.hpp"
#include "chasegraph/rule.hpp"

namespace cg {

enum class RuleClass { Gbts, Wgbts, Cdgs, Wcdgs };
enum class Outcome { Holds, Refuted, Unknown };

std::string to_string(RuleClass c);
std::string to_string(Outcome o);
/// Parses `gbts`, `wgbts`, `cdgs` or `wcdgs`; throws Error otherwise.
RuleClass parse_rule_class(const std::string& name);

/// Evidence for one derivable instance of a weak class: the first derivation
/// that reached it and the shortest derivation of it that is greedy (wgbts) or
/// has a reducible graph (wcdgs), together with that reduction.
struct InstanceWitness {
  Derivation representative;
  Derivation witness;
  std::optional<ReductionTrace> trace;
};

struct ClassificationVerdict {
  RuleClass rule_class = RuleClass::Gbts;
  std::size_t depth = 0;
  Outcome result = Outcome::Unknown;
  /// Refuted: the offending derivation. For weak classes it derives an
  /// instance with no admissible re-derivation within the bound.
  std::optional<Derivation> counterexample;
  /// Holds for a weak class: one witness per derivable instance.
  std::vector<InstanceWitness> witnesses;
  std::string reason;
  std::size_t derivations = 0;
  std::size_t instances = 0;
};

struct ClassifyOptions {
  std::size_t depth = 4;
  Dedup dedup = Dedup::ModNulls;
  /// Weak classes: allow re-derivations up to `depth` instead of the length
  /// of the shortest recorded derivation of the instance.
  bool witness_bound_depth = false;
  /// Stop at the first refutation.
  bool stop_early = true;
  std::size_t max_derivations = 1000000;
  std::size_t max_atoms = 100000;
  ReduceOptions reduce;
};

/// Bounded verdict for `kb` over all derivations of length <= options.depth.
ClassificationVerdict classify(const KnowledgeBase& kb, RuleClass rule_class, const ClassifyOptions& options = {});

/// All four verdicts from one enumeration, indexed by RuleClass.
std::array<ClassificationVerdict, 4> classify_all(const KnowledgeBase& kb, const ClassifyOptions& options = {});

/// Re-checks a verdict's certificate through the independent modules.
bool verify_certificate(const ClassificationVerdict& verdict, const KnowledgeBase& kb,
                        const ClassifyOptions& options = {});

struct SubsumptionReport {
  std::array<ClassificationVerdict, 4> verdicts;
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

/// gbts ⇒ wgbts, cdgs ⇒ wcdgs, gbts = cdgs and wgbts = wcdgs on one
/// enumeration. Unknown verdicts are not compared.
SubsumptionReport subsumption_check(const KnowledgeBase& kb, std::size_t depth);

struct EntailmentResult {
  bool entailed = false;
  /// Least k with q mapping into Ch_k.
  std::optional<std::size_t> depth;
};

/// Sound bounded entailment via the k-saturation. Throws ResourceLimit.
EntailmentResult entails(const KnowledgeBase& kb, const BooleanQuery& q, std::size_t depth,
                         const ChaseOptions& options = {});

}  // namespace cg
