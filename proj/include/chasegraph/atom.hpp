#pragma once

#include <compare>
#include <initializer_list>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "chasegraph/term.hpp"

namespace cg {

class Atom {
 public:
  Atom(Predicate predicate, std::vector<Term> args);

  const Predicate& predicate() const { return predicate_; }
  const std::vector<Term>& args() const { return args_; }

  bool is_ground() const;
  bool has_variables() const;
  TermSet terms() const;

  std::string str() const;

  friend bool operator==(const Atom&, const Atom&) = default;
  friend std::strong_ordering operator<=>(const Atom& a, const Atom& b);

 private:
  Predicate predicate_;
  std::vector<Term> args_;
};

/// Convenience constructor: `make_atom("q", {x, y})`.
Atom make_atom(std::string_view predicate, std::vector<Term> args);

TermSet terms_of(std::span<const Atom> atoms);
TermSet variables_of(std::span<const Atom> atoms);
TermSet constants_of(std::span<const Atom> atoms);
TermSet nulls_of(std::span<const Atom> atoms);

std::string to_string(std::span<const Atom> atoms);

/// A finite set of atoms over constants and nulls.
class Instance {
 public:
  using const_iterator = std::set<Atom>::const_iterator;

  Instance() = default;
  Instance(std::initializer_list<Atom> atoms);
  explicit Instance(std::span<const Atom> atoms);

  /// Returns true if the atom was not already present. Throws on variables.
  bool insert(const Atom& atom);
  void insert(const Instance& other);

  bool contains(const Atom& atom) const { return atoms_.contains(atom); }
  bool contains_all(std::span<const Atom> atoms) const;
  bool subset_of(const Instance& other) const;

  std::size_t size() const { return atoms_.size(); }
  bool empty() const { return atoms_.empty(); }
  const_iterator begin() const { return atoms_.begin(); }
  const_iterator end() const { return atoms_.end(); }

  /// Atoms in sorted order.
  std::vector<Atom> atoms() const { return {atoms_.begin(), atoms_.end()}; }

  TermSet terms() const;
  TermSet constants() const;
  TermSet nulls() const;

  Instance difference(const Instance& other) const;
  Instance united(const Instance& other) const;

  std::string str() const;

  friend bool operator==(const Instance&, const Instance&) = default;

 private:
  std::set<Atom> atoms_;
};

/// A partial map on terms that fixes every constant.
class Substitution {
 public:
  Substitution() = default;
  Substitution(std::initializer_list<std::pair<Term, Term>> bindings);

  /// Throws Error when `from` is a constant mapped to anything but itself.
  void bind(const Term& from, const Term& to);
  bool binds(const Term& t) const { return map_.contains(t); }
  std::optional<Term> get(const Term& t) const;

  /// Image of `t`. Constants and unbound nulls map to themselves; an unbound
  /// variable raises UnboundVariable.
  Term apply(const Term& t) const;
  Atom apply(const Atom& a) const;
  std::vector<Atom> apply(std::span<const Atom> atoms) const;

  /// Images of the given terms, as a set.
  TermSet image(const TermSet& terms) const;

  /// Copy restricted to the given domain.
  Substitution restricted_to(const TermSet& domain) const;

  bool extends(const Substitution& other) const;

  const std::map<Term, Term>& bindings() const { return map_; }
  std::size_t size() const { return map_.size(); }
  bool empty() const { return map_.empty(); }

  std::string str() const;

  friend bool operator==(const Substitution&, const Substitution&) = default;
  friend auto operator<=>(const Substitution& a, const Substitution& b) { return a.map_ <=> b.map_; }

 private:
  std::map<Term, Term> map_;
};

/// Componentwise image of an atom set; collapses duplicates.
std::set<Atom> apply_substitution(std::span<const Atom> atoms, const Substitution& s);

}  // namespace cg
