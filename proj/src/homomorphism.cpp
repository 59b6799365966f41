#include "chasegraph/homomorphism.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

namespace cg {

namespace {

/// Backtracking matcher. Source atoms are visited in order of increasing
/// candidate count; candidates for an atom follow the target's term order.
class Matcher {
 public:
  Matcher(std::span<const Atom> source, const Instance& target, const Substitution& seed, bool rename_nulls)
      : source_(source), rename_nulls_(rename_nulls), bindings_(seed.bindings()) {
    for (const auto& a : target) index_[a.predicate()].push_back(&a);
    if (rename_nulls_)
      for (const auto& [from, to] : bindings_) used_.insert(to);
    order_.resize(source_.size());
    std::iota(order_.begin(), order_.end(), std::size_t{0});
    std::vector<std::size_t> counts(source_.size());
    for (std::size_t i = 0; i < source_.size(); ++i) counts[i] = candidate_count(source_[i]);
    std::stable_sort(order_.begin(), order_.end(), [&](auto a, auto b) { return counts[a] < counts[b]; });
  }

  void run(std::optional<std::size_t> limit, std::set<Substitution>& out) {
    limit_ = limit;
    out_ = &out;
    search(0);
  }

 private:
  std::size_t candidate_count(const Atom& a) const {
    auto it = index_.find(a.predicate());
    if (it == index_.end()) return 0;
    std::size_t n = 0;
    for (const Atom* c : it->second) {
      bool ok = true;
      for (std::size_t k = 0; ok && k < a.args().size(); ++k) {
        const auto& s = a.args()[k];
        if (s.is_constant()) {
          ok = s == c->args()[k];
        } else if (auto b = bindings_.find(s); b != bindings_.end()) {
          ok = b->second == c->args()[k];
        }
      }
      n += ok;
    }
    return n;
  }

  bool done() const { return limit_ && out_->size() >= *limit_; }

  void search(std::size_t depth) {
    if (done()) return;
    if (depth == order_.size()) {
      Substitution s;
      for (const auto& [from, to] : bindings_) s.bind(from, to);
      out_->insert(std::move(s));
      return;
    }
    const Atom& a = source_[order_[depth]];
    auto it = index_.find(a.predicate());
    if (it == index_.end()) return;
    for (const Atom* candidate : it->second) {
      std::vector<Term> bound_here;
      if (match(a, *candidate, bound_here)) search(depth + 1);
      for (const auto& t : bound_here) {
        if (rename_nulls_) used_.erase(bindings_.at(t));
        bindings_.erase(t);
      }
      if (done()) return;
    }
  }

  bool match(const Atom& a, const Atom& c, std::vector<Term>& bound_here) {
    for (std::size_t k = 0; k < a.args().size(); ++k) {
      const auto& s = a.args()[k];
      const auto& t = c.args()[k];
      if (s.is_constant()) {
        if (s != t) return false;
        continue;
      }
      if (auto b = bindings_.find(s); b != bindings_.end()) {
        if (b->second != t) return false;
        continue;
      }
      if (rename_nulls_) {
        if (!t.is_null() || used_.contains(t)) return false;
        used_.insert(t);
      }
      bindings_.emplace(s, t);
      bound_here.push_back(s);
    }
    return true;
  }

  std::span<const Atom> source_;
  bool rename_nulls_;
  std::map<Term, Term> bindings_;
  std::unordered_set<Term, TermHash> used_;
  std::unordered_map<Predicate, std::vector<const Atom*>, PredicateHash> index_;
  std::vector<std::size_t> order_;
  std::optional<std::size_t> limit_;
  std::set<Substitution>* out_ = nullptr;
};

}  // namespace

std::vector<Substitution> find_homomorphisms(const HomSearchProblem& problem, std::optional<std::size_t> limit) {
  return find_homomorphisms(problem.source, problem.target, problem.seed, limit);
}

std::vector<Substitution> find_homomorphisms(std::span<const Atom> source, const Instance& target,
                                             const Substitution& seed, std::optional<std::size_t> limit) {
  std::set<Substitution> found;
  if (limit && *limit == 0) return {};
  Matcher(source, target, seed, false).run(limit, found);
  return {found.begin(), found.end()};
}

bool has_homomorphism(std::span<const Atom> source, const Instance& target, const Substitution& seed) {
  return !find_homomorphisms(source, target, seed, 1).empty();
}

bool satisfies_rule(const Instance& instance, const Rule& rule) {
  for (const auto& h : find_homomorphisms(rule.body(), instance)) {
    if (!has_homomorphism(rule.head(), instance, h)) return false;
  }
  return true;
}

bool hom_equivalent(const Instance& a, const Instance& b) {
  auto va = a.atoms();
  auto vb = b.atoms();
  return has_homomorphism(va, b) && has_homomorphism(vb, a);
}

std::optional<Substitution> isomorphic_mod_nulls(const Instance& a, const Instance& b) {
  if (a.size() != b.size() || a.nulls().size() != b.nulls().size()) return std::nullopt;
  if (null_invariant_hash(a) != null_invariant_hash(b)) return std::nullopt;
  auto va = a.atoms();
  std::set<Substitution> found;
  Matcher(va, b, {}, true).run(1, found);
  if (found.empty()) return std::nullopt;
  return *found.begin();
}

std::size_t null_invariant_hash(const Instance& instance) {
  // multiset of atom shapes: predicate, constants in place, nulls by
  // first-occurrence pattern within the atom
  std::vector<std::string> shapes;
  for (const auto& a : instance) {
    std::string s(a.predicate().name());
    std::vector<Term> seen;
    for (const auto& t : a.args()) {
      s += '|';
      if (t.is_null()) {
        auto pos = std::find(seen.begin(), seen.end(), t);
        s += '#' + std::to_string(pos - seen.begin());
        if (pos == seen.end()) seen.push_back(t);
      } else {
        s += t.str();
      }
    }
    shapes.push_back(std::move(s));
  }
  std::sort(shapes.begin(), shapes.end());
  std::size_t h = shapes.size();
  for (const auto& s : shapes) h = h * 1099511628211ULL ^ std::hash<std::string>{}(s);
  return h;
}

}  // namespace cg
