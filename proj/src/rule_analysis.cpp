#include "chasegraph/rule_analysis.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "chasegraph/errors.hpp"
#include "chasegraph/homomorphism.hpp"

namespace cg {

namespace {

Atom rename_vars(const Atom& a, const std::string& prefix) {
  std::vector<Term> args;
  for (const auto& t : a.args()) args.push_back(t.is_variable() ? Term::variable(prefix + std::string(t.name())) : t);
  return Atom(a.predicate(), std::move(args));
}

std::vector<Atom> rename_vars(const std::vector<Atom>& atoms, const std::string& prefix) {
  std::vector<Atom> out;
  for (const auto& a : atoms) out.push_back(rename_vars(a, prefix));
  return out;
}

class UnionFind {
 public:
  Term find(const Term& t) {
    auto it = parent_.find(t);
    if (it == parent_.end() || it->second == t) return t;
    auto root = find(it->second);
    parent_.insert_or_assign(t, root);
    return root;
  }
  void unite(const Term& a, const Term& b) {
    auto ra = find(a), rb = find(b);
    if (ra == rb) return;
    // keep the smaller term as root so constants win
    if (rb < ra) std::swap(ra, rb);
    parent_.insert_or_assign(rb, ra);
  }

 private:
  std::map<Term, Term> parent_;
};

// Checks one candidate: the S atoms of r2's body (mask) unified pairwise with
// the chosen head atoms of r1.
std::optional<Instance> try_candidate(const Rule& r1, const Rule& r2, const std::vector<Atom>& body1,
                                      const std::vector<Atom>& head1, const std::vector<Atom>& body2,
                                      const TermSet& existentials, const std::vector<bool>& in_s,
                                      const std::vector<std::size_t>& partner) {
  UnionFind uf;
  for (std::size_t a = 0; a < body2.size(); ++a) {
    if (!in_s[a]) continue;
    const auto& x = body2[a];
    const auto& y = head1[partner[a]];
    for (std::size_t k = 0; k < x.args().size(); ++k) uf.unite(x.args()[k], y.args()[k]);
  }
  // classes: collect members
  std::map<Term, std::vector<Term>> classes;
  auto all_terms = terms_of(body1);
  all_terms.merge(terms_of(head1));
  all_terms.merge(terms_of(body2));
  for (const auto& t : all_terms) classes[uf.find(t)].push_back(t);

  TermSet s_vars;
  TermSet rest_vars;
  for (std::size_t a = 0; a < body2.size(); ++a)
    for (const auto& t : body2[a].args())
      if (t.is_variable()) (in_s[a] ? s_vars : rest_vars).insert(t);

  std::map<Term, Term> image;  // class root -> term of the candidate instance
  std::size_t fresh = 0;
  for (const auto& [root, members] : classes) {
    std::size_t constants = 0, nulls = 0, frontier1 = 0;
    std::optional<Term> constant;
    bool r2_outside_s = false;
    for (const auto& t : members) {
      if (t.is_constant()) {
        ++constants;
        constant = t;
      } else if (existentials.contains(t)) {
        ++nulls;
      } else if (t.name().starts_with("1:")) {
        ++frontier1;
      } else if (rest_vars.contains(t)) {
        r2_outside_s = true;
      }
    }
    if (constants > 1) return std::nullopt;
    if (nulls > 0 && (nulls > 1 || constants > 0 || frontier1 > 0 || r2_outside_s)) return std::nullopt;
    if (nulls > 0) continue;  // stays a fresh null of the rule application
    image.emplace(root, constant ? *constant : Term::constant("_k" + std::to_string(fresh++)));
  }

  auto freeze = [&](const Atom& a) {
    std::vector<Term> args;
    for (const auto& t : a.args()) args.push_back(image.at(uf.find(t)));
    return Atom(a.predicate(), std::move(args));
  };
  Instance inst;
  for (const auto& a : body1) inst.insert(freeze(a));
  for (std::size_t a = 0; a < body2.size(); ++a)
    if (!in_s[a]) inst.insert(freeze(body2[a]));

  // (i) r2 is not triggered in I
  if (has_homomorphism(r2.body(), inst)) return std::nullopt;
  // (ii) r1 is triggered via h; (iii) r2 fires after Ch(I, r1, h)
  Substitution h;
  for (const auto& v : variables_of(body1)) h.bind(Term::variable(v.name().substr(2)), image.at(uf.find(v)));
  auto after = apply_rule(inst, r1, h).first;
  if (!has_homomorphism(r2.body(), after)) return std::nullopt;
  return inst;
}

}  // namespace

std::optional<Instance> dependence_witness(const Rule& r2, const Rule& r1) {
  auto body1 = rename_vars(r1.body(), "1:");
  auto head1 = rename_vars(r1.head(), "1:");
  auto body2 = rename_vars(r2.body(), "2:");
  TermSet existentials;
  for (const auto& z : r1.existentials()) existentials.insert(Term::variable("1:" + std::string(z.name())));

  const std::size_t n = body2.size();
  std::vector<bool> in_s(n);
  std::vector<std::size_t> partner(n);
  std::optional<Instance> found;

  std::function<bool(std::size_t)> assign = [&](std::size_t a) -> bool {
    if (a == n) {
      found = try_candidate(r1, r2, body1, head1, body2, existentials, in_s, partner);
      return found.has_value();
    }
    if (!in_s[a]) return assign(a + 1);
    for (std::size_t h = 0; h < head1.size(); ++h) {
      if (head1[h].predicate() != body2[a].predicate()) continue;
      partner[a] = h;
      if (assign(a + 1)) return true;
    }
    return false;
  };

  for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
    for (std::size_t a = 0; a < n; ++a) in_s[a] = (mask >> a) & 1;
    if (assign(0)) return found;
  }
  return std::nullopt;
}

bool depends_on(const Rule& r2, const Rule& r1) { return dependence_witness(r2, r1).has_value(); }

std::vector<std::size_t> RuleDependencyGraph::sources() const {
  std::vector<bool> has_in(vertices.size());
  for (const auto& [a, b] : edges) has_in[b] = true;
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < vertices.size(); ++v)
    if (!has_in[v]) out.push_back(v);
  return out;
}

std::vector<std::size_t> RuleDependencyGraph::layers() const {
  const auto n = vertices.size();
  std::vector<std::vector<bool>> reach(n, std::vector<bool>(n));
  for (std::size_t v = 0; v < n; ++v) reach[v][v] = true;
  for (const auto& [a, b] : edges) reach[a][b] = true;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (reach[i][k] && reach[k][j]) reach[i][j] = true;
  std::vector<std::size_t> layer(n, 0);
  // longest path over the condensation; at most n rounds of relaxation
  for (std::size_t round = 0; round <= 2 * n; ++round) {
    bool changed = false;
    for (const auto& [a, b] : edges) {
      bool same_component = reach[b][a];
      auto want = same_component ? layer[a] : layer[a] + 1;
      if (layer[b] < want) {
        layer[b] = want;
        changed = true;
      }
    }
    if (!changed) break;
  }
  return layer;
}

RuleDependencyGraph rule_dependency_graph(const RuleSet& rules) {
  RuleDependencyGraph g;
  for (const auto& r : rules) g.vertices.push_back(r.id());
  for (std::size_t a = 0; a < rules.size(); ++a)
    for (std::size_t b = 0; b < rules.size(); ++b)
      if (depends_on(rules[b], rules[a])) g.edges.emplace(a, b);
  return g;
}

namespace {

TermSet greedy_base(const Derivation& d, const RuleSet& rules) {
  TermSet base = d.initial.constants();
  base.merge(d.initial.nulls());
  for (const auto& r : rules) base.merge(r.constants());
  return base;
}

bool covered(const TermSet& image, const TermSet& base, const TermSet& nulls) {
  return std::all_of(image.begin(), image.end(), [&](const Term& t) { return base.contains(t) || nulls.contains(t); });
}

TermSet step_nulls(const Derivation& d, std::size_t j, const RuleSet& rules) {
  if (j == 0) return {};
  return nulls_of(d.head_image(j, rules));
}

}  // namespace

GreedinessReport is_greedy(const Derivation& d, const RuleSet& rules) {
  GreedinessReport report;
  auto base = greedy_base(d, rules);
  std::vector<TermSet> nulls(d.length() + 1);
  for (std::size_t j = 1; j <= d.length(); ++j) nulls[j] = step_nulls(d, j, rules);
  for (std::size_t i = 1; i <= d.length(); ++i) {
    const auto& t = d.steps[i - 1].trigger;
    StepGreediness s{i, t.hom.image(rules.at(t.rule).frontier()), std::nullopt};
    for (std::size_t j = 0; j < i; ++j) {
      if (covered(s.frontier_image, base, nulls[j])) {
        s.witness = j;
        break;
      }
    }
    if (!s.witness && report.greedy) {
      report.greedy = false;
      report.first_violation = i;
    }
    report.steps.push_back(std::move(s));
  }
  return report;
}

GreedinessReport is_greedy(const Derivation& d, const KnowledgeBase& kb) { return is_greedy(d, kb.rules()); }

bool verify_greedy_report(const GreedinessReport& report, const Derivation& d, const RuleSet& rules) {
  if (report.steps.size() != d.length()) return false;
  auto base = greedy_base(d, rules);
  bool greedy = true;
  for (std::size_t i = 1; i <= d.length(); ++i) {
    const auto& s = report.steps[i - 1];
    const auto& t = d.steps[i - 1].trigger;
    if (s.step != i || s.frontier_image != t.hom.image(rules.at(t.rule).frontier())) return false;
    if (s.witness) {
      if (*s.witness >= i || !covered(s.frontier_image, base, step_nulls(d, *s.witness, rules))) return false;
    } else {
      for (std::size_t j = 0; j < i; ++j)
        if (covered(s.frontier_image, base, step_nulls(d, j, rules))) return false;
      if (greedy && report.first_violation != i) return false;
      greedy = false;
    }
  }
  return greedy == report.greedy;
}

Derivation permute_adjacent(const Derivation& d, std::size_t i, const RuleSet& rules) {
  if (i < 1 || i >= d.length())
    throw NotPermutable("step " + std::to_string(i) + " has no successor in a derivation of length " +
                        std::to_string(d.length()));
  const auto& first = d.steps[i - 1].trigger;
  const auto& second = d.steps[i].trigger;
  const auto& before = d.instance(i - 1);
  if (!before.contains_all(second.hom.apply(rules.at(second.rule).body())))
    throw NotPermutable("step " + std::to_string(i + 1) + " uses atoms created by step " + std::to_string(i));
  Derivation out = d;
  Instance middle = before;
  for (const auto& a : second.extension.apply(rules.at(second.rule).head())) middle.insert(a);
  out.steps[i - 1] = {second, std::move(middle)};
  out.steps[i] = {first, d.steps[i].result};
  return out;
}

Derivation normalize_by_grd(const Derivation& d, const RuleDependencyGraph& grd, const RuleSet& rules) {
  auto layer = grd.layers();
  Derivation out = d;
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 1; i < out.length(); ++i) {
      auto cur = out.steps[i - 1].trigger.rule;
      auto next = out.steps[i].trigger.rule;
      if (layer.at(next) >= layer.at(cur)) continue;
      try {
        out = permute_adjacent(out, i, rules);
        changed = true;
      } catch (const NotPermutable&) {
      }
    }
  }
  return out;
}

std::optional<Derivation> find_greedy_rederivation(const KnowledgeBase& kb, const Instance& target,
                                                   std::size_t max_len, const RederivationOptions& options) {
  std::map<Predicate, std::size_t> budget;
  for (const auto& a : target) ++budget[a.predicate()];
  const auto& rules = kb.rules();
  auto base = kb.constants();
  base.merge(kb.database().nulls());

  auto prune = [&](const Derivation& d) {
    const auto& inst = d.final_instance();
    if (inst.size() > target.size()) return true;
    std::map<Predicate, std::size_t> counts;
    for (const auto& a : inst)
      if (++counts[a.predicate()] > budget[a.predicate()]) return true;
    if (d.length() == 0) return false;
    // prefixes of a greedy derivation are greedy, so only the last step
    // needs checking
    auto i = d.length();
    const auto& t = d.steps[i - 1].trigger;
    auto image = t.hom.image(rules[t.rule].frontier());
    for (std::size_t j = 0; j < i; ++j)
      if (covered(image, base, step_nulls(d, j, rules))) return false;
    return true;
  };

  for (std::size_t len = 0; len <= max_len; ++len) {
    EnumerationOptions opts;
    opts.max_len = len;
    opts.exact_len = true;
    opts.max_derivations = options.max_derivations;
    opts.max_atoms = options.max_atoms;
    opts.prune = prune;
    std::optional<Derivation> hit;
    for_each_derivation(kb.database(), rules, opts, [&](const Derivation& d) {
      if (d.final_instance().size() == target.size() && isomorphic_mod_nulls(d.final_instance(), target)) {
        hit = d;
        return false;
      }
      return true;
    });
    if (hit) return hit;
  }
  return std::nullopt;
}

}  // namespace cg
