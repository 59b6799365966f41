#include "fixtures.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <set>

#include "chasegraph/homomorphism.hpp"

#ifndef CHASEGRAPH_DATA_DIR
#define CHASEGRAPH_DATA_DIR "data"
#endif

namespace fx {

Instance d_dagger() { return {at("p", {c("a")}), at("r", {c("b")})}; }

RuleSet r2() {
  auto X = v("X"), Y = v("Y"), Z = v("Z"), W = v("W"), U = v("U"), V = v("V"), O = v("O");
  return {
      Rule("r1", {at("p", {X})}, {at("q", {X, Y, Z})}),
      Rule("r2", {at("r", {X})}, {at("s", {X, Y, Z})}),
      Rule("r3", {at("p", {X}), at("r", {Y})}, {at("q", {X, Z, W}), at("s", {Y, U, V})}),
      Rule("r4", {at("q", {X, Y, Z}), at("s", {W, U, V})}, {at("t", {X, Y, W, U, O})}),
  };
}

KnowledgeBase kb2() { return {d_dagger(), r2()}; }

Derivation delta1() {
  return replay_script(d_dagger(), r2(),
                       {{"r1", {{"X", "a"}}},
                        {"r1", {{"X", "a"}}},
                        {"r2", {{"X", "b"}}},
                        {"r4", {{"X", "a"}, {"Y", "Y@1"}, {"Z", "Z@1"}, {"W", "b"}, {"U", "Y@3"}, {"V", "Z@3"}}}});
}

Derivation delta2() {
  return replay_script(d_dagger(), r2(),
                       {{"r3", {{"X", "a"}, {"Y", "b"}}},
                        {"r1", {{"X", "a"}}},
                        {"r4", {{"X", "a"}, {"Y", "Z@1"}, {"Z", "W@1"}, {"W", "b"}, {"U", "U@1"}, {"V", "V@1"}}}});
}

Instance d_ddagger() { return {at("p", {c("a"), c("b")})}; }

RuleSet r3() {
  auto X = v("X"), Y = v("Y"), Z = v("Z"), W = v("W");
  return {
      Rule("r1", {at("p", {X, Y})}, {at("q", {Y, Z})}),
      Rule("r2", {at("q", {X, Y})}, {at("r", {X, Y}), at("r", {Y, Z})}),
      Rule("r3", {at("r", {X, Y}), at("q", {Z, X})}, {at("s", {X, Y})}),
      Rule("r4", {at("r", {X, Y}), at("s", {Z, W})}, {at("t", {Y, W})}),
  };
}

KnowledgeBase kb3() { return {d_ddagger(), r3()}; }

Derivation delta_fig2() {
  return replay_script(d_ddagger(), r3(),
                       {{"r1", {{"X", "a"}, {"Y", "b"}}},
                        {"r2", {{"X", "b"}, {"Y", "Z@1"}}},
                        {"r3", {{"X", "Z@1"}, {"Y", "Z@2"}, {"Z", "b"}}},
                        {"r4", {{"X", "b"}, {"Y", "Z@1"}, {"Z", "Z@1"}, {"W", "Z@2"}}}});
}

Term null_of(const Derivation& d, std::size_t step, const char* var, const RuleSet&) {
  return d.steps.at(step - 1).trigger.extension.apply(v(var));
}

std::string data_path(const std::string& file) { return std::string(CHASEGRAPH_DATA_DIR) + "/" + file; }

namespace {

bool mappable(const Term& t) { return t.is_variable() || t.is_null(); }

// plain recursive matcher, atom by atom in the given order
bool naive_match(const std::vector<Atom>& atoms, std::size_t i, std::map<Term, Term>& b, const Instance& target) {
  if (i == atoms.size()) return true;
  for (const auto& cand : target) {
    if (cand.predicate() != atoms[i].predicate()) continue;
    std::vector<Term> added;
    bool ok = true;
    for (std::size_t k = 0; ok && k < cand.args().size(); ++k) {
      const auto& s = atoms[i].args()[k];
      const auto& t = cand.args()[k];
      if (!mappable(s)) {
        ok = s == t;
      } else if (auto it = b.find(s); it != b.end()) {
        ok = it->second == t;
      } else {
        b.insert_or_assign(s, t);
        added.push_back(s);
      }
    }
    if (ok && naive_match(atoms, i + 1, b, target)) return true;
    for (const auto& s : added) b.erase(s);
  }
  return false;
}

bool naive_has_hom(const std::vector<Atom>& atoms, const Instance& target) {
  std::map<Term, Term> b;
  return naive_match(atoms, 0, b, target);
}

}  // namespace

std::vector<Substitution> brute_homomorphisms(const std::vector<Atom>& source, const Instance& target) {
  std::vector<Term> domain;
  for (const auto& a : source)
    for (const auto& t : a.args())
      if (mappable(t) && std::find(domain.begin(), domain.end(), t) == domain.end()) domain.push_back(t);
  auto range_set = target.terms();
  std::vector<Term> range(range_set.begin(), range_set.end());
  std::set<Substitution> out;
  std::vector<std::size_t> choice(domain.size(), 0);
  if (range.empty() && !domain.empty()) return {};
  while (true) {
    Substitution s;
    for (std::size_t i = 0; i < domain.size(); ++i) s.bind(domain[i], range[choice[i]]);
    bool ok = true;
    for (const auto& a : source) {
      std::vector<Term> args;
      for (const auto& t : a.args()) args.push_back(mappable(t) ? *s.get(t) : t);
      if (!target.contains(Atom(a.predicate(), args))) {
        ok = false;
        break;
      }
    }
    if (ok) out.insert(s);
    std::size_t i = 0;
    while (i < domain.size() && ++choice[i] == range.size()) choice[i++] = 0;
    if (i == domain.size()) break;
  }
  return {out.begin(), out.end()};
}

bool brute_depends_on(const Rule& r2, const Rule& r1) {
  auto v1 = variables_of(r1.body());
  auto v2 = variables_of(r2.body());
  std::size_t width = std::min<std::size_t>(3, v1.size() + v2.size());
  std::vector<Term> universe;
  for (std::size_t i = 0; i < width; ++i) universe.push_back(Term::constant("_u" + std::to_string(i)));
  for (const auto& t : r1.constants()) universe.push_back(t);
  for (const auto& t : r2.constants())
    if (std::find(universe.begin(), universe.end(), t) == universe.end()) universe.push_back(t);

  // pool of candidate extra atoms over body(r2)'s predicates
  std::set<Predicate> preds;
  for (const auto& a : r2.body()) preds.insert(a.predicate());
  std::vector<Atom> pool;
  for (const auto& p : preds) {
    std::vector<std::size_t> idx(p.arity(), 0);
    while (true) {
      std::vector<Term> args;
      for (auto k : idx) args.push_back(universe[k]);
      pool.emplace_back(p, args);
      std::size_t i = 0;
      while (i < idx.size() && ++idx[i] == universe.size()) idx[i++] = 0;
      if (i == idx.size()) break;
    }
  }

  std::vector<Term> dom(v1.begin(), v1.end());
  std::vector<std::size_t> choice(dom.size(), 0);
  std::size_t max_extra = r2.body().size() - 1;
  while (true) {
    std::set<std::vector<Atom>> seen;
    std::map<Term, Term> h;
    for (std::size_t i = 0; i < dom.size(); ++i) h.insert_or_assign(dom[i], universe[choice[i]]);
    auto img = [&](const Atom& a, std::map<Term, Term>& m) {
      std::vector<Term> args;
      for (const auto& t : a.args()) args.push_back(t.is_variable() ? m.at(t) : t);
      return Atom(a.predicate(), args);
    };
    Instance base;
    for (const auto& a : r1.body()) base.insert(img(a, h));
    // the null assignment for r1's head
    std::map<Term, Term> hbar = h;
    for (const auto& x : r1.existentials()) hbar.insert_or_assign(x, Term::fresh_null());
    Instance added;
    for (const auto& a : r1.head()) added.insert(img(a, hbar));

    std::function<bool(std::size_t, std::size_t, Instance&)> extend = [&](std::size_t from, std::size_t left,
                                                                          Instance& inst) -> bool {
      if (seen.insert(inst.atoms()).second) {
        if (!naive_has_hom(r2.body(), inst) && naive_has_hom(r2.body(), inst.united(added))) return true;
      }
      if (left == 0) return false;
      for (std::size_t i = from; i < pool.size(); ++i) {
        if (inst.contains(pool[i])) continue;
        Instance next = inst;
        next.insert(pool[i]);
        // supersets of an instance already triggering r2 cannot satisfy (i)
        if (naive_has_hom(r2.body(), next)) continue;
        if (extend(i + 1, left - 1, next)) return true;
      }
      return false;
    };
    if (extend(0, max_extra, base)) return true;

    std::size_t i = 0;
    while (i < dom.size() && ++choice[i] == universe.size()) choice[i++] = 0;
    if (i == dom.size()) break;
  }
  return false;
}

bool naive_greedy(const Derivation& d, const KnowledgeBase& kb) {
  TermSet allowed = kb.constants();
  for (const auto& t : d.initial.nulls()) allowed.insert(t);
  for (const auto& t : d.initial.constants()) allowed.insert(t);
  for (std::size_t i = 1; i <= d.length(); ++i) {
    const auto& step = d.steps[i - 1];
    const Rule& rule = kb.rules()[step.trigger.rule];
    TermSet image;
    for (const auto& x : rule.frontier()) image.insert(step.trigger.hom.apply(x));
    bool found = false;
    for (std::size_t j = 0; j < i && !found; ++j) {
      TermSet pool = allowed;
      if (j > 0) {
        const auto& sj = d.steps[j - 1];
        for (const auto& a : kb.rules()[sj.trigger.rule].head())
          for (const auto& t : a.args()) {
            auto u = sj.trigger.extension.apply(t);
            if (u.is_null()) pool.insert(u);
          }
      }
      found = std::includes(pool.begin(), pool.end(), image.begin(), image.end());
    }
    if (!found) return false;
  }
  return true;
}

bool naive_td_valid(const TreeDecomposition& td, const Instance& instance) {
  std::size_t n = td.bags.size();
  if (n == 0) return instance.empty();
  if (td.edges.size() != n - 1) return false;
  std::vector<std::vector<std::size_t>> adj(n);
  for (auto [a, b] : td.edges) {
    if (a >= n || b >= n || a == b) return false;
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  auto reach = [&](std::size_t start, const std::function<bool(std::size_t)>& allowed) {
    std::vector<bool> vis(n, false);
    std::vector<std::size_t> stack{start};
    vis[start] = true;
    std::size_t count = 0;
    while (!stack.empty()) {
      auto x = stack.back();
      stack.pop_back();
      ++count;
      for (auto y : adj[x])
        if (!vis[y] && allowed(y)) vis[y] = true, stack.push_back(y);
    }
    return count;
  };
  if (reach(0, [](std::size_t) { return true; }) != n) return false;
  for (const auto& t : instance.terms()) {
    std::vector<std::size_t> holders;
    for (std::size_t i = 0; i < n; ++i)
      if (td.bags[i].contains(t)) holders.push_back(i);
    if (holders.empty()) return false;
    if (reach(holders[0], [&](std::size_t y) { return td.bags[y].contains(t); }) != holders.size()) return false;
  }
  for (const auto& a : instance) {
    auto ts = a.terms();
    bool covered = false;
    for (const auto& bag : td.bags) covered = covered || std::includes(bag.begin(), bag.end(), ts.begin(), ts.end());
    if (!covered) return false;
  }
  return true;
}

std::optional<Derivation> random_derivation(const KnowledgeBase& kb, std::size_t len, unsigned seed) {
  std::mt19937 rng(seed);
  Derivation d;
  d.initial = kb.database();
  for (std::size_t s = 0; s < len; ++s) {
    std::vector<std::pair<std::size_t, Substitution>> options;
    for (std::size_t r = 0; r < kb.rules().size(); ++r)
      for (auto& h : triggers(d.final_instance(), kb.rules()[r])) options.emplace_back(r, std::move(h));
    if (options.empty()) return std::nullopt;
    auto& [r, h] = options[std::uniform_int_distribution<std::size_t>(0, options.size() - 1)(rng)];
    extend_derivation(d, kb.rules(), r, h);
  }
  return d;
}

}  // namespace fx
