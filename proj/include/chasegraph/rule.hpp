#pragma once

#include <span>
#include <string>
#include <vector>

#include "chasegraph/atom.hpp"

namespace cg {

enum class RuleSide { Body, Head };

/// An existential rule `body -> exists existentials. head`.
///
/// Body and head are stored as duplicate-free sorted atom lists over
/// constants and variables.
class Rule {
 public:
  /// Throws InvalidRule on empty body/head or nulls.
  Rule(std::string id, std::vector<Atom> body, std::vector<Atom> head);

  const std::string& id() const { return id_; }
  const std::vector<Atom>& body() const { return body_; }
  const std::vector<Atom>& head() const { return head_; }

  /// vars(body) ∩ vars(head)
  const TermSet& frontier() const { return frontier_; }
  /// vars(head) \ vars(body)
  const TermSet& existentials() const { return existentials_; }

  TermSet body_variables() const { return variables_of(body_); }
  TermSet constants() const;

  std::string str() const;

  friend bool operator==(const Rule&, const Rule&) = default;

 private:
  std::string id_;
  std::vector<Atom> body_;
  std::vector<Atom> head_;
  TermSet frontier_;
  TermSet existentials_;
};

using RuleSet = std::vector<Rule>;

TermSet frontier(const Rule& rule);

/// Atoms on the requested side that mention at least one frontier variable.
std::vector<Atom> frontier_atoms(const Rule& rule, RuleSide side = RuleSide::Body);

/// Index of the rule with the given id, or rules.size().
std::size_t find_rule(const RuleSet& rules, std::string_view id);

/// A database paired with a rule set. `constants()` is const(D) ∪ const(R).
class KnowledgeBase {
 public:
  KnowledgeBase() = default;
  /// Throws Error if the database is not ground.
  KnowledgeBase(Instance database, RuleSet rules);

  const Instance& database() const { return database_; }
  const RuleSet& rules() const { return rules_; }
  const TermSet& constants() const { return constants_; }

  void set_database(Instance database);
  void set_rules(RuleSet rules);

 private:
  void refresh();

  Instance database_;
  RuleSet rules_;
  TermSet constants_;
};

/// An existentially closed conjunction of atoms.
class BooleanQuery {
 public:
  explicit BooleanQuery(std::vector<Atom> atoms);
  const std::vector<Atom>& atoms() const { return atoms_; }
  std::string str() const;

 private:
  std::vector<Atom> atoms_;
};

}  // namespace cg
