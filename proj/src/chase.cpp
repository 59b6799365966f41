#include "chasegraph/chase.hpp"

#include <map>
#include <set>
#include <unordered_set>

#include "chasegraph/errors.hpp"
#include "chasegraph/homomorphism.hpp"

namespace cg {

std::vector<Atom> Derivation::head_image(std::size_t i, const RuleSet& rules) const {
  const auto& t = steps.at(i - 1).trigger;
  return t.extension.apply(rules.at(t.rule).head());
}

std::string to_string(const Derivation& d, const RuleSet& rules) {
  std::string out = "I0 = " + d.initial.str() + "\n";
  for (std::size_t i = 1; i <= d.length(); ++i) {
    const auto& t = d.steps[i - 1].trigger;
    out += std::to_string(i) + ": " + rules.at(t.rule).id() + " " + t.hom.str() + " adds " +
           to_string(d.head_image(i, rules)) + "\n";
  }
  return out;
}

std::vector<std::string> validate_derivation(const Derivation& d, const RuleSet& rules) {
  std::vector<std::string> problems;
  for (const auto& a : d.initial)
    if (a.has_variables()) problems.push_back("initial instance has variables");
  for (std::size_t i = 1; i <= d.length(); ++i) {
    auto where = "step " + std::to_string(i) + ": ";
    const auto& t = d.steps[i - 1].trigger;
    if (t.rule >= rules.size()) {
      problems.push_back(where + "unknown rule index");
      continue;
    }
    const auto& rule = rules[t.rule];
    const auto& prev = d.instance(i - 1);
    auto body_vars = rule.body_variables();
    TermSet dom;
    for (const auto& [from, to] : t.hom.bindings()) dom.insert(from);
    if (dom != body_vars) {
      problems.push_back(where + "hom domain differs from body variables");
      continue;
    }
    if (!prev.contains_all(t.hom.apply(rule.body()))) problems.push_back(where + "hom does not map the body into I");
    if (t.extension.restricted_to(body_vars) != t.hom) problems.push_back(where + "extension does not extend hom");
    TermSet images;
    auto prev_terms = prev.terms();
    for (const auto& z : rule.existentials()) {
      auto img = t.extension.get(z);
      if (!img) {
        problems.push_back(where + "existential " + z.str() + " unbound");
        continue;
      }
      if (!img->is_null()) problems.push_back(where + "existential " + z.str() + " not sent to a null");
      if (!images.insert(*img).second) problems.push_back(where + "existential images not distinct");
      if (prev_terms.contains(*img)) problems.push_back(where + "null " + img->str() + " is not fresh");
    }
    if (t.extension.size() != body_vars.size() + rule.existentials().size())
      problems.push_back(where + "extension binds extra terms");
    if (!problems.empty()) continue;
    auto expected = prev;
    for (const auto& a : t.extension.apply(rule.head())) expected.insert(a);
    if (expected != d.steps[i - 1].result) problems.push_back(where + "I_i is not I_{i-1} plus the head image");
  }
  return problems;
}

std::vector<Substitution> triggers(const Instance& instance, const Rule& rule) {
  return find_homomorphisms(rule.body(), instance);
}

std::pair<Instance, Trigger> apply_rule(const Instance& instance, const Rule& rule, const Substitution& hom,
                                        std::size_t rule_index) {
  auto body_vars = rule.body_variables();
  Substitution h;
  try {
    h = hom.restricted_to(body_vars);
    if (h.size() != body_vars.size() || !instance.contains_all(h.apply(rule.body())))
      throw NotTriggered("rule " + rule.id() + " is not triggered by " + hom.str());
  } catch (const UnboundVariable&) {
    throw NotTriggered("rule " + rule.id() + " is not triggered by " + hom.str());
  }
  Trigger t{rule_index, h, h};
  for (const auto& z : rule.existentials()) t.extension.bind(z, Term::fresh_null());
  Instance out = instance;
  for (const auto& a : t.extension.apply(rule.head())) out.insert(a);
  return {std::move(out), std::move(t)};
}

void extend_derivation(Derivation& d, const RuleSet& rules, std::size_t rule_index, const Substitution& hom) {
  auto [next, trigger] = apply_rule(d.final_instance(), rules.at(rule_index), hom, rule_index);
  d.steps.push_back({std::move(trigger), std::move(next)});
}

Instance one_step(const Instance& instance, const RuleSet& rules) {
  Instance out = instance;
  for (std::size_t r = 0; r < rules.size(); ++r) {
    for (const auto& h : triggers(instance, rules[r])) {
      Substitution ext = h;
      for (const auto& z : rules[r].existentials()) ext.bind(z, Term::fresh_null());
      for (const auto& a : ext.apply(rules[r].head())) out.insert(a);
    }
  }
  return out;
}

Instance chase_k(const Instance& db, const RuleSet& rules, std::size_t k, const ChaseOptions& options) {
  Instance current = db;
  for (std::size_t i = 0; i < k; ++i) {
    auto next = one_step(current, rules);
    if (next.size() > options.max_atoms)
      throw ResourceLimit("chase exceeded " + std::to_string(options.max_atoms) + " atoms at depth " +
                          std::to_string(i + 1));
    if (next == current) break;  // nothing new can fire
    current = std::move(next);
  }
  return current;
}

namespace {

class Enumerator {
 public:
  Enumerator(const RuleSet& rules, const EnumerationOptions& options,
             const std::function<bool(const Derivation&)>& visit)
      : rules_(rules), options_(options), visit_(visit) {}

  std::size_t run(const Instance& db) {
    Derivation d{db, {}};
    dfs(d);
    return reported_;
  }

 private:
  // returns false when the visitor asked to stop
  bool dfs(Derivation& d) {
    if (options_.prune && options_.prune(d)) return true;
    if (!options_.exact_len || d.length() == options_.max_len) {
      bool fresh = true;
      if (options_.dedup == Dedup::ModNulls) fresh = seen_.insert(canonical_key(d)).second;
      if (fresh) {
        if (++reported_ > options_.max_derivations)
          throw ResourceLimit("more than " + std::to_string(options_.max_derivations) + " derivations");
        if (!visit_(d)) return false;
      }
    }
    if (d.length() >= options_.max_len) return true;
    const Instance current = d.final_instance();
    for (std::size_t r = 0; r < rules_.size(); ++r) {
      for (const auto& h : triggers(current, rules_[r])) {
        auto [next, trigger] = apply_rule(current, rules_[r], h, r);
        if (options_.skip_redundant && next.size() == current.size()) continue;
        if (next.size() > options_.max_atoms)
          throw ResourceLimit("instance exceeded " + std::to_string(options_.max_atoms) + " atoms");
        d.steps.push_back({std::move(trigger), std::move(next)});
        bool go_on = dfs(d);
        d.steps.pop_back();
        if (!go_on) return false;
      }
    }
    return true;
  }

  const RuleSet& rules_;
  const EnumerationOptions& options_;
  const std::function<bool(const Derivation&)>& visit_;
  std::unordered_set<std::string> seen_;
  std::size_t reported_ = 0;
};

}  // namespace

std::size_t for_each_derivation(const Instance& db, const RuleSet& rules, const EnumerationOptions& options,
                                const std::function<bool(const Derivation&)>& visit) {
  return Enumerator(rules, options, visit).run(db);
}

std::vector<Derivation> enumerate_derivations(const Instance& db, const RuleSet& rules,
                                              const EnumerationOptions& options) {
  std::vector<Derivation> out;
  for_each_derivation(db, rules, options, [&](const Derivation& d) {
    out.push_back(d);
    return true;
  });
  return out;
}

std::string canonical_key(const Derivation& d) {
  std::map<Term, std::size_t> names;
  auto term = [&](const Term& t) {
    if (!t.is_null()) return t.str();
    auto [it, _] = names.emplace(t, names.size());
    return "_" + std::to_string(it->second);
  };
  std::string key;
  for (const auto& a : d.initial) {
    key += a.predicate().name();
    for (const auto& t : a.args()) key += "," + term(t);
    key += ';';
  }
  for (const auto& step : d.steps) {
    key += "|" + std::to_string(step.trigger.rule);
    for (const auto& [from, to] : step.trigger.extension.bindings()) key += " " + from.str() + "=" + term(to);
  }
  return key;
}

Derivation replay_script(const Instance& db, const RuleSet& rules, const std::vector<ScriptStep>& script) {
  Derivation d{db, {}};
  for (std::size_t i = 0; i < script.size(); ++i) {
    const auto& step = script[i];
    auto where = "script step " + std::to_string(i + 1) + ": ";
    auto r = find_rule(rules, step.rule);
    if (r == rules.size()) throw Error(where + "unknown rule " + step.rule);
    auto body_vars = rules[r].body_variables();
    Substitution h;
    for (const auto& [var, value] : step.bindings) {
      auto v = Term::variable(var);
      if (!body_vars.contains(v)) throw Error(where + var + " is not a body variable of " + step.rule);
      auto at = value.find('@');
      if (at == std::string::npos) {
        h.bind(v, Term::constant(value));
        continue;
      }
      auto ex = Term::variable(value.substr(0, at));
      std::size_t k = 0;
      try {
        k = std::stoul(value.substr(at + 1));
      } catch (const std::exception&) {
        throw Error(where + "bad null reference " + value);
      }
      if (k == 0 || k > d.length()) throw Error(where + "null reference " + value + " points to no earlier step");
      auto img = d.steps[k - 1].trigger.extension.get(ex);
      if (!img || !rules[d.steps[k - 1].trigger.rule].existentials().contains(ex))
        throw Error(where + value + " names no existential of step " + std::to_string(k));
      h.bind(v, *img);
    }
    for (const auto& v : body_vars)
      if (!h.binds(v)) throw Error(where + "no binding for " + v.str());
    extend_derivation(d, rules, r, h);
  }
  return d;
}

}  // namespace cg
