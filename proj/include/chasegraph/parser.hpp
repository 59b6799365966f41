#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "chasegraph/chase.hpp"
#include "chasegraph/rule.hpp"

namespace cg {

struct NamedQuery {
  std::string name;
  BooleanQuery query;
  std::size_t line = 0;
};

struct NamedScript {
  std::string name;
  std::vector<ScriptStep> steps;
  std::size_t line = 0;
};

/// Contents of a rule file:
///
///   p(a,b).                            fact
///   r1: p(X,Y) -> q(Y,Z).              rule, Z existential
///   ?q1: t(X,Y).                       Boolean query
///   @derivation d: r1(X=a,Y=b); ...    derivation script, `Z@1` = null of step 1
///   % comment
///
/// Identifiers starting with an uppercase letter are variables.
struct RuleDocument {
  std::vector<Atom> facts;
  RuleSet rules;
  std::vector<NamedQuery> queries;
  std::vector<NamedScript> derivations;
  std::vector<std::size_t> rule_lines;

  KnowledgeBase knowledge_base() const;
  /// Throws Error when no query has this name.
  const BooleanQuery& query(std::string_view name) const;
  /// Throws Error when no derivation has this name.
  const NamedScript& derivation(std::string_view name) const;

  /// Structural equality, ignoring source positions.
  bool same_content(const RuleDocument& other) const;
};

/// Throws SyntaxError (or ArityMismatch, EmptyBody, EmptyHead) with the
/// 1-based position of the problem.
RuleDocument parse_document(std::string_view text);

RuleDocument parse_file(const std::string& path);

/// Renders a document in the input format.
std::string print_document(const RuleDocument& doc);

}  // namespace cg
