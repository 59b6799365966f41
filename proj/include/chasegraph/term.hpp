#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <set>
#include <string>
#include <string_view>

namespace cg {

enum class TermKind : std::uint8_t { Constant = 0, Variable = 1, Null = 2 };

/// Returns a stable pointer to the interned copy of `name`. Thread-safe.
const std::string* intern(std::string_view name);

/// A constant, variable or labelled null.
///
/// Constants and variables are identified by their (interned) name, nulls by
/// their creation ordinal. Terms order as Constant < Variable < Null, then by
/// name (lexicographic) or ordinal.
class Term {
 public:
  static Term constant(std::string_view name);
  static Term variable(std::string_view name);
  static Term null(std::uint64_t ordinal);

  /// A null whose ordinal has never been handed out in this process.
  static Term fresh_null();

  TermKind kind() const { return kind_; }
  bool is_constant() const { return kind_ == TermKind::Constant; }
  bool is_variable() const { return kind_ == TermKind::Variable; }
  bool is_null() const { return kind_ == TermKind::Null; }

  /// Name of a constant or variable; empty for nulls.
  std::string_view name() const;
  std::uint64_t ordinal() const { return ordinal_; }

  /// `a`, `X`, or `_:n<k>`.
  std::string str() const;

  friend bool operator==(const Term& a, const Term& b) {
    return a.kind_ == b.kind_ && a.name_ == b.name_ && a.ordinal_ == b.ordinal_;
  }
  friend std::strong_ordering operator<=>(const Term& a, const Term& b);

  std::size_t hash() const;

 private:
  Term(TermKind kind, const std::string* name, std::uint64_t ordinal)
      : kind_(kind), name_(name), ordinal_(ordinal) {}

  TermKind kind_ = TermKind::Constant;
  const std::string* name_ = nullptr;
  std::uint64_t ordinal_ = 0;
};

struct TermHash {
  std::size_t operator()(const Term& t) const { return t.hash(); }
};

using TermSet = std::set<Term>;

std::string to_string(const TermSet& terms);

/// Highest null ordinal handed out so far.
std::uint64_t last_null_ordinal();

/// A predicate symbol with a fixed arity.
class Predicate {
 public:
  Predicate(std::string_view name, std::size_t arity);

  std::string_view name() const { return *name_; }
  std::size_t arity() const { return arity_; }

  friend bool operator==(const Predicate& a, const Predicate& b) {
    return a.name_ == b.name_ && a.arity_ == b.arity_;
  }
  friend std::strong_ordering operator<=>(const Predicate& a, const Predicate& b);

  std::size_t hash() const;

 private:
  const std::string* name_;
  std::size_t arity_;
};

struct PredicateHash {
  std::size_t operator()(const Predicate& p) const { return p.hash(); }
};

}  // namespace cg
