#include "chasegraph/rule.hpp"

#include <algorithm>

#include "chasegraph/errors.hpp"

namespace cg {

namespace {

std::vector<Atom> normalized(std::vector<Atom> atoms) {
  std::sort(atoms.begin(), atoms.end());
  atoms.erase(std::unique(atoms.begin(), atoms.end()), atoms.end());
  return atoms;
}

void reject_nulls(const std::string& id, std::span<const Atom> atoms) {
  for (const auto& a : atoms)
    for (const auto& t : a.args())
      if (t.is_null()) throw InvalidRule("rule " + id + " mentions null " + t.str());
}

}  // namespace

Rule::Rule(std::string id, std::vector<Atom> body, std::vector<Atom> head)
    : id_(std::move(id)), body_(normalized(std::move(body))), head_(normalized(std::move(head))) {
  if (body_.empty()) throw InvalidRule("rule " + id_ + " has an empty body");
  if (head_.empty()) throw InvalidRule("rule " + id_ + " has an empty head");
  reject_nulls(id_, body_);
  reject_nulls(id_, head_);
  auto body_vars = variables_of(body_);
  for (const auto& v : variables_of(head_)) {
    if (body_vars.contains(v))
      frontier_.insert(v);
    else
      existentials_.insert(v);
  }
}

TermSet Rule::constants() const {
  auto out = constants_of(body_);
  out.merge(constants_of(head_));
  return out;
}

std::string Rule::str() const {
  auto join = [](const std::vector<Atom>& atoms) {
    std::string out;
    for (std::size_t i = 0; i < atoms.size(); ++i) {
      if (i) out += ", ";
      out += atoms[i].str();
    }
    return out;
  };
  return id_ + ": " + join(body_) + " -> " + join(head_) + ".";
}

TermSet frontier(const Rule& rule) { return rule.frontier(); }

std::vector<Atom> frontier_atoms(const Rule& rule, RuleSide side) {
  const auto& atoms = side == RuleSide::Body ? rule.body() : rule.head();
  std::vector<Atom> out;
  for (const auto& a : atoms) {
    if (std::any_of(a.args().begin(), a.args().end(), [&](const Term& t) { return rule.frontier().contains(t); }))
      out.push_back(a);
  }
  return out;
}

std::size_t find_rule(const RuleSet& rules, std::string_view id) {
  for (std::size_t i = 0; i < rules.size(); ++i)
    if (rules[i].id() == id) return i;
  return rules.size();
}

KnowledgeBase::KnowledgeBase(Instance database, RuleSet rules)
    : database_(std::move(database)), rules_(std::move(rules)) {
  refresh();
}

void KnowledgeBase::set_database(Instance database) {
  database_ = std::move(database);
  refresh();
}

void KnowledgeBase::set_rules(RuleSet rules) {
  rules_ = std::move(rules);
  refresh();
}

void KnowledgeBase::refresh() {
  for (const auto& a : database_)
    if (!a.is_ground()) throw Error("database atoms must be ground: " + a.str());
  constants_ = database_.constants();
  for (const auto& r : rules_) constants_.merge(r.constants());
}

BooleanQuery::BooleanQuery(std::vector<Atom> atoms) : atoms_(normalized(std::move(atoms))) {
  if (atoms_.empty()) throw Error("a query needs at least one atom");
  for (const auto& a : atoms_)
    for (const auto& t : a.args())
      if (t.is_null()) throw Error("queries cannot mention nulls");
}

std::string BooleanQuery::str() const { return to_string(atoms_); }

}  // namespace cg
