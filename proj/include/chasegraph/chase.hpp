#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "chasegraph/atom.hpp"
#include "chasegraph/rule.hpp"

namespace cg {

/// A recorded rule application: `hom` maps the body, `extension` (h̄) also
/// sends each existential variable to a fresh null.
struct Trigger {
  std::size_t rule = 0;  // index into the rule set
  Substitution hom;
  Substitution extension;

  friend bool operator==(const Trigger&, const Trigger&) = default;
};

struct DerivationStep {
  Trigger trigger;
  Instance result;  // I_i
};

/// I_0, (rho_1, h_1, I_1), ..., (rho_n, h_n, I_n).
struct Derivation {
  Instance initial;
  std::vector<DerivationStep> steps;

  std::size_t length() const { return steps.size(); }
  /// I_i, with I_0 the initial instance.
  const Instance& instance(std::size_t i) const { return i == 0 ? initial : steps[i - 1].result; }
  const Instance& final_instance() const { return instance(steps.size()); }
  /// h̄_i(head(rho_i)) for 1 <= i <= n.
  std::vector<Atom> head_image(std::size_t i, const RuleSet& rules) const;
};

/// Human readable rendering, one step per line.
std::string to_string(const Derivation& d, const RuleSet& rules);

/// Problems found in `d`; empty when the derivation is valid for `rules`.
std::vector<std::string> validate_derivation(const Derivation& d, const RuleSet& rules);

/// All homomorphisms from body(rule) into the instance.
std::vector<Substitution> triggers(const Instance& instance, const Rule& rule);

/// Ch(I, rule, hom). Throws NotTriggered when hom does not map the body into I.
std::pair<Instance, Trigger> apply_rule(const Instance& instance, const Rule& rule, const Substitution& hom,
                                        std::size_t rule_index = 0);

/// Append a step to `d` (rule given by index). Throws NotTriggered.
void extend_derivation(Derivation& d, const RuleSet& rules, std::size_t rule_index, const Substitution& hom);

/// Ch_1: every trigger of every rule fired in parallel with distinct nulls.
Instance one_step(const Instance& instance, const RuleSet& rules);

struct ChaseOptions {
  std::size_t max_atoms = 100000;
};

/// Ch_k. Throws ResourceLimit when an instance outgrows max_atoms.
Instance chase_k(const Instance& db, const RuleSet& rules, std::size_t k, const ChaseOptions& options = {});

enum class Dedup { None, ModNulls };

struct EnumerationOptions {
  std::size_t max_len = 0;
  Dedup dedup = Dedup::None;
  /// Skip steps that add no atoms.
  bool skip_redundant = false;
  /// Only report derivations of length exactly max_len.
  bool exact_len = false;
  std::size_t max_derivations = 1000000;
  std::size_t max_atoms = 100000;
  /// Called on every prefix before it is reported; returning true drops the
  /// prefix together with all its extensions.
  std::function<bool(const Derivation&)> prune;
};

/// Depth-first enumeration of derivations from `db`, children ordered by rule
/// then homomorphism. `visit` returns false to stop early. Returns the number
/// of derivations reported. Throws ResourceLimit on the configured caps.
std::size_t for_each_derivation(const Instance& db, const RuleSet& rules, const EnumerationOptions& options,
                                const std::function<bool(const Derivation&)>& visit);

std::vector<Derivation> enumerate_derivations(const Instance& db, const RuleSet& rules,
                                              const EnumerationOptions& options);

/// Key that is equal for derivations identical up to a renaming of nulls.
std::string canonical_key(const Derivation& d);

/// One step of a derivation script: the rule id and bindings for its body
/// variables. A value is a constant name or `V@k`, the null created for
/// existential V at step k (1-based).
struct ScriptStep {
  std::string rule;
  std::vector<std::pair<std::string, std::string>> bindings;
};

/// Replays a script from `db`. Throws Error on unknown rules, variables or
/// null references and NotTriggered when a step does not apply.
Derivation replay_script(const Instance& db, const RuleSet& rules, const std::vector<ScriptStep>& script);

}  // namespace cg
