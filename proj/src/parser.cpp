#include "chasegraph/parser.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "chasegraph/errors.hpp"

namespace cg {

namespace {

bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  RuleDocument parse() {
    RuleDocument doc;
    std::set<std::string> rule_ids;
    while (true) {
      skip();
      if (pos_ >= text_.size()) break;
      auto line = line_;
      auto col = col_;
      if (peek() == '?') {
        advance();
        auto name = ident("query name");
        expect(':');
        auto atoms = atom_list(false);
        expect('.');
        doc.queries.push_back({name, BooleanQuery(std::move(atoms)), line});
        continue;
      }
      if (peek() == '@') {
        advance();
        auto kw = ident("directive");
        if (kw != "derivation") throw SyntaxError("unknown directive @" + kw, line, col);
        doc.derivations.push_back(script(line));
        continue;
      }
      auto name = ident("fact or rule");
      skip();
      if (peek() == ':') {
        advance();
        if (!rule_ids.insert(name).second) throw SyntaxError("duplicate rule id " + name, line, col);
        doc.rules.push_back(rule(name, line, col));
        doc.rule_lines.push_back(line);
        continue;
      }
      auto a = atom_after_name(name, line, col);
      if (!a.is_ground()) throw SyntaxError("facts must not contain variables", line, col);
      expect('.');
      doc.facts.push_back(std::move(a));
    }
    return doc;
  }

 private:
  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '%') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  [[noreturn]] void fail(const std::string& what) {
    std::string got = pos_ < text_.size() ? std::string("'") + text_[pos_] + "'" : "end of input";
    throw SyntaxError(what + ", found " + got, line_, col_);
  }

  void expect(char c) {
    skip();
    if (peek() != c) fail(std::string("expected '") + c + "'");
    advance();
  }

  bool accept(char c) {
    skip();
    if (peek() != c) return false;
    advance();
    return true;
  }

  bool at_arrow() {
    skip();
    return pos_ + 1 < text_.size() && text_[pos_] == '-' && text_[pos_ + 1] == '>';
  }

  std::string ident(const char* what) {
    skip();
    if (!ident_char(peek())) fail(std::string("expected ") + what);
    std::string out;
    while (pos_ < text_.size() && ident_char(text_[pos_])) {
      out += text_[pos_];
      advance();
    }
    return out;
  }

  Term term() {
    auto name = ident("term");
    if (std::isupper(static_cast<unsigned char>(name[0]))) return Term::variable(name);
    return Term::constant(name);
  }

  void check_arity(const std::string& name, std::size_t arity, std::size_t line, std::size_t col) {
    auto [it, fresh] = arity_.emplace(name, arity);
    if (!fresh && it->second != arity)
      throw ArityMismatch("predicate " + name + " used with arity " + std::to_string(arity) + " and " +
                              std::to_string(it->second),
                          line, col);
  }

  Atom atom_after_name(const std::string& name, std::size_t line, std::size_t col) {
    if (std::isupper(static_cast<unsigned char>(name[0])))
      throw SyntaxError("predicate names must not start uppercase: " + name, line, col);
    expect('(');
    std::vector<Term> args;
    if (!accept(')')) {
      do args.push_back(term());
      while (accept(','));
      expect(')');
    }
    check_arity(name, args.size(), line, col);
    return make_atom(name, std::move(args));
  }

  Atom atom() {
    skip();
    auto line = line_;
    auto col = col_;
    auto name = ident("atom");
    return atom_after_name(name, line, col);
  }

  // comma separated atoms; `allow_empty` admits an empty list
  std::vector<Atom> atom_list(bool allow_empty) {
    std::vector<Atom> out;
    skip();
    if (allow_empty && !ident_char(peek())) return out;
    do out.push_back(atom());
    while (accept(','));
    return out;
  }

  Rule rule(const std::string& name, std::size_t line, std::size_t col) {
    auto body = atom_list(true);
    skip();
    if (body.empty()) {
      if (at_arrow()) throw EmptyBody("rule " + name + " has an empty body", line_, col_);
      fail("expected a body atom");
    }
    if (!at_arrow()) fail("expected '->'");
    advance();
    advance();
    auto head = atom_list(true);
    if (head.empty()) throw EmptyHead("rule " + name + " has an empty head", line_, col_);
    expect('.');
    try {
      return Rule(name, std::move(body), std::move(head));
    } catch (const InvalidRule& e) {
      throw SyntaxError(e.what(), line, col);
    }
  }

  NamedScript script(std::size_t line) {
    NamedScript s;
    s.line = line;
    s.name = ident("derivation name");
    expect(':');
    skip();
    if (accept('.')) return s;
    do {
      ScriptStep step;
      step.rule = ident("rule id");
      expect('(');
      if (!accept(')')) {
        do {
          auto var = ident("variable");
          expect('=');
          auto value = ident("value");
          if (accept('@')) value += "@" + ident("step number");
          step.bindings.emplace_back(var, value);
        } while (accept(','));
        expect(')');
      }
      s.steps.push_back(std::move(step));
    } while (accept(';'));
    expect('.');
    return s;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
  std::map<std::string, std::size_t> arity_;
};

std::string join_atoms(const std::vector<Atom>& atoms) {
  std::string out;
  for (std::size_t i = 0; i < atoms.size(); ++i) out += (i ? ", " : "") + atoms[i].str();
  return out;
}

}  // namespace

KnowledgeBase RuleDocument::knowledge_base() const { return KnowledgeBase(Instance(facts), rules); }

const BooleanQuery& RuleDocument::query(std::string_view name) const {
  for (const auto& q : queries)
    if (q.name == name) return q.query;
  throw Error("no query named " + std::string(name));
}

const NamedScript& RuleDocument::derivation(std::string_view name) const {
  for (const auto& d : derivations)
    if (d.name == name) return d;
  throw Error("no derivation named " + std::string(name));
}

bool RuleDocument::same_content(const RuleDocument& other) const {
  if (Instance(facts) != Instance(other.facts) || rules != other.rules) return false;
  if (queries.size() != other.queries.size() || derivations.size() != other.derivations.size()) return false;
  for (std::size_t i = 0; i < queries.size(); ++i)
    if (queries[i].name != other.queries[i].name || queries[i].query.atoms() != other.queries[i].query.atoms())
      return false;
  for (std::size_t i = 0; i < derivations.size(); ++i) {
    const auto& a = derivations[i];
    const auto& b = other.derivations[i];
    if (a.name != b.name || a.steps.size() != b.steps.size()) return false;
    for (std::size_t s = 0; s < a.steps.size(); ++s)
      if (a.steps[s].rule != b.steps[s].rule || a.steps[s].bindings != b.steps[s].bindings) return false;
  }
  return true;
}

RuleDocument parse_document(std::string_view text) { return Parser(text).parse(); }

RuleDocument parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_document(ss.str());
}

std::string print_document(const RuleDocument& doc) {
  std::string out;
  for (const auto& a : doc.facts) out += a.str() + ".\n";
  for (const auto& r : doc.rules) out += r.str() + "\n";
  for (const auto& q : doc.queries) out += "?" + q.name + ": " + join_atoms(q.query.atoms()) + ".\n";
  for (const auto& d : doc.derivations) {
    out += "@derivation " + d.name + ":";
    for (std::size_t s = 0; s < d.steps.size(); ++s) {
      out += (s ? "; " : " ") + d.steps[s].rule + "(";
      for (std::size_t b = 0; b < d.steps[s].bindings.size(); ++b)
        out += (b ? "," : "") + d.steps[s].bindings[b].first + "=" + d.steps[s].bindings[b].second;
      out += ")";
    }
    out += ".\n";
  }
  return out;
}

}  // namespace cg
