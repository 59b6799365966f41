#include "chasegraph/atom.hpp"

#include <algorithm>

#include "chasegraph/errors.hpp"

namespace cg {

Atom::Atom(Predicate predicate, std::vector<Term> args) : predicate_(predicate), args_(std::move(args)) {
  if (args_.size() != predicate_.arity()) {
    throw Error("atom " + std::string(predicate_.name()) + " expects " + std::to_string(predicate_.arity()) +
                " arguments, got " + std::to_string(args_.size()));
  }
}

Atom make_atom(std::string_view predicate, std::vector<Term> args) {
  auto arity = args.size();
  return Atom(Predicate(predicate, arity), std::move(args));
}

bool Atom::is_ground() const {
  return std::all_of(args_.begin(), args_.end(), [](const Term& t) { return t.is_constant(); });
}

bool Atom::has_variables() const {
  return std::any_of(args_.begin(), args_.end(), [](const Term& t) { return t.is_variable(); });
}

TermSet Atom::terms() const { return {args_.begin(), args_.end()}; }

std::string Atom::str() const {
  std::string out(predicate_.name());
  out += '(';
  for (std::size_t i = 0; i < args_.size(); ++i) {
    if (i) out += ',';
    out += args_[i].str();
  }
  return out + ')';
}

std::strong_ordering operator<=>(const Atom& a, const Atom& b) {
  if (auto c = a.predicate_ <=> b.predicate_; c != 0) return c;
  return std::lexicographical_compare_three_way(a.args_.begin(), a.args_.end(), b.args_.begin(), b.args_.end());
}

TermSet terms_of(std::span<const Atom> atoms) {
  TermSet out;
  for (const auto& a : atoms) out.insert(a.args().begin(), a.args().end());
  return out;
}

namespace {

template <typename Pred>
TermSet filter_terms(std::span<const Atom> atoms, Pred pred) {
  TermSet out;
  for (const auto& a : atoms)
    for (const auto& t : a.args())
      if (pred(t)) out.insert(t);
  return out;
}

}  // namespace

TermSet variables_of(std::span<const Atom> atoms) {
  return filter_terms(atoms, [](const Term& t) { return t.is_variable(); });
}

TermSet constants_of(std::span<const Atom> atoms) {
  return filter_terms(atoms, [](const Term& t) { return t.is_constant(); });
}

TermSet nulls_of(std::span<const Atom> atoms) {
  return filter_terms(atoms, [](const Term& t) { return t.is_null(); });
}

std::string to_string(std::span<const Atom> atoms) {
  std::string out = "{";
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (i) out += ", ";
    out += atoms[i].str();
  }
  return out + "}";
}

Instance::Instance(std::initializer_list<Atom> atoms) {
  for (const auto& a : atoms) insert(a);
}

Instance::Instance(std::span<const Atom> atoms) {
  for (const auto& a : atoms) insert(a);
}

bool Instance::insert(const Atom& atom) {
  if (atom.has_variables()) throw Error("instances cannot contain variables: " + atom.str());
  return atoms_.insert(atom).second;
}

void Instance::insert(const Instance& other) { atoms_.insert(other.atoms_.begin(), other.atoms_.end()); }

bool Instance::contains_all(std::span<const Atom> atoms) const {
  return std::all_of(atoms.begin(), atoms.end(), [&](const Atom& a) { return atoms_.contains(a); });
}

bool Instance::subset_of(const Instance& other) const {
  return std::includes(other.atoms_.begin(), other.atoms_.end(), atoms_.begin(), atoms_.end());
}

TermSet Instance::terms() const {
  TermSet out;
  for (const auto& a : atoms_) out.insert(a.args().begin(), a.args().end());
  return out;
}

TermSet Instance::constants() const {
  TermSet out;
  for (const auto& a : atoms_)
    for (const auto& t : a.args())
      if (t.is_constant()) out.insert(t);
  return out;
}

TermSet Instance::nulls() const {
  TermSet out;
  for (const auto& a : atoms_)
    for (const auto& t : a.args())
      if (t.is_null()) out.insert(t);
  return out;
}

Instance Instance::difference(const Instance& other) const {
  Instance out;
  std::set_difference(atoms_.begin(), atoms_.end(), other.atoms_.begin(), other.atoms_.end(),
                      std::inserter(out.atoms_, out.atoms_.end()));
  return out;
}

Instance Instance::united(const Instance& other) const {
  Instance out = *this;
  out.insert(other);
  return out;
}

std::string Instance::str() const {
  std::vector<Atom> v(atoms_.begin(), atoms_.end());
  return to_string(v);
}

Substitution::Substitution(std::initializer_list<std::pair<Term, Term>> bindings) {
  for (const auto& [from, to] : bindings) bind(from, to);
}

void Substitution::bind(const Term& from, const Term& to) {
  if (from.is_constant() && from != to) throw Error("substitution must fix constant " + from.str());
  map_.insert_or_assign(from, to);
}

std::optional<Term> Substitution::get(const Term& t) const {
  if (auto it = map_.find(t); it != map_.end()) return it->second;
  return std::nullopt;
}

Term Substitution::apply(const Term& t) const {
  if (auto it = map_.find(t); it != map_.end()) return it->second;
  if (t.is_variable()) throw UnboundVariable("no image for variable " + t.str());
  return t;
}

Atom Substitution::apply(const Atom& a) const {
  std::vector<Term> args;
  args.reserve(a.args().size());
  for (const auto& t : a.args()) args.push_back(apply(t));
  return Atom(a.predicate(), std::move(args));
}

std::vector<Atom> Substitution::apply(std::span<const Atom> atoms) const {
  std::vector<Atom> out;
  out.reserve(atoms.size());
  for (const auto& a : atoms) out.push_back(apply(a));
  return out;
}

TermSet Substitution::image(const TermSet& terms) const {
  TermSet out;
  for (const auto& t : terms) out.insert(apply(t));
  return out;
}

Substitution Substitution::restricted_to(const TermSet& domain) const {
  Substitution out;
  for (const auto& [from, to] : map_)
    if (domain.contains(from)) out.map_.emplace(from, to);
  return out;
}

bool Substitution::extends(const Substitution& other) const {
  for (const auto& [from, to] : other.map_) {
    auto it = map_.find(from);
    if (it == map_.end() || it->second != to) return false;
  }
  return true;
}

std::string Substitution::str() const {
  std::string out = "{";
  bool first = true;
  for (const auto& [from, to] : map_) {
    if (!first) out += ", ";
    first = false;
    out += from.str() + "->" + to.str();
  }
  return out + "}";
}

std::set<Atom> apply_substitution(std::span<const Atom> atoms, const Substitution& s) {
  std::set<Atom> out;
  for (const auto& a : atoms) out.insert(s.apply(a));
  return out;
}

}  // namespace cg
