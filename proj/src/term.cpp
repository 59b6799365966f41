#include "chasegraph/term.hpp"

#include <atomic>
#include <mutex>
#include <unordered_set>

namespace cg {

namespace {

std::atomic<std::uint64_t> g_null_counter{0};

struct InternTable {
  std::mutex mutex;
  std::unordered_set<std::string> names;
};

InternTable& intern_table() {
  static InternTable table;
  return table;
}

}  // namespace

const std::string* intern(std::string_view name) {
  auto& table = intern_table();
  std::lock_guard lock(table.mutex);
  auto [it, inserted] = table.names.emplace(name);
  return &*it;
}

Term Term::constant(std::string_view name) { return Term(TermKind::Constant, intern(name), 0); }

Term Term::variable(std::string_view name) { return Term(TermKind::Variable, intern(name), 0); }

Term Term::null(std::uint64_t ordinal) {
  // keep fresh_null() from ever colliding with an explicitly named null
  auto seen = g_null_counter.load();
  while (seen < ordinal && !g_null_counter.compare_exchange_weak(seen, ordinal)) {
  }
  return Term(TermKind::Null, nullptr, ordinal);
}

Term Term::fresh_null() { return Term(TermKind::Null, nullptr, ++g_null_counter); }

std::uint64_t last_null_ordinal() { return g_null_counter.load(); }

std::string_view Term::name() const {
  if (name_ == nullptr) return {};
  return *name_;
}

std::string Term::str() const {
  if (kind_ == TermKind::Null) return "_:n" + std::to_string(ordinal_);
  return *name_;
}

std::strong_ordering operator<=>(const Term& a, const Term& b) {
  if (auto c = a.kind_ <=> b.kind_; c != 0) return c;
  if (a.kind_ == TermKind::Null) return a.ordinal_ <=> b.ordinal_;
  if (a.name_ == b.name_) return std::strong_ordering::equal;
  return *a.name_ <=> *b.name_;
}

std::size_t Term::hash() const {
  auto h = std::hash<const void*>{}(name_) ^ (std::hash<std::uint64_t>{}(ordinal_) * 0x9e3779b97f4a7c15ULL);
  return h ^ static_cast<std::size_t>(kind_);
}

std::string to_string(const TermSet& terms) {
  std::string out = "{";
  bool first = true;
  for (const auto& t : terms) {
    if (!first) out += ", ";
    first = false;
    out += t.str();
  }
  return out + "}";
}

Predicate::Predicate(std::string_view name, std::size_t arity) : name_(intern(name)), arity_(arity) {}

std::strong_ordering operator<=>(const Predicate& a, const Predicate& b) {
  if (a.name_ != b.name_) {
    if (auto c = *a.name_ <=> *b.name_; c != 0) return c;
  }
  return a.arity_ <=> b.arity_;
}

std::size_t Predicate::hash() const { return std::hash<const void*>{}(name_) * 31 + arity_; }

}  // namespace cg
