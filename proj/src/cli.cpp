#include "chasegraph/cli.hpp"

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include "chasegraph/classifier.hpp"
#include "chasegraph/errors.hpp"
#include "chasegraph/parser.hpp"
#include "chasegraph/reduction.hpp"
#include "chasegraph/report.hpp"
#include "chasegraph/rule_analysis.hpp"
#include "chasegraph/selfcheck.hpp"
#include "chasegraph/tree_decomposition.hpp"

namespace cg {

namespace {

struct UsageError : Error {
  using Error::Error;
};

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw UsageError("cannot write " + path);
  f << text;
}

/// Resolves a derivation id: a declared name, or a number that first indexes
/// the declared derivations and then continues into the enumeration.
Derivation resolve_derivation(const RuleDocument& doc, const KnowledgeBase& kb, const std::string& id,
                              std::size_t max_len) {
  for (const auto& s : doc.derivations)
    if (s.name == id) return replay_script(kb.database(), kb.rules(), s.steps);
  std::size_t n = 0;
  try {
    std::size_t used = 0;
    n = std::stoul(id, &used);
    if (used != id.size()) throw std::invalid_argument(id);
  } catch (const std::exception&) {
    throw UsageError("unknown derivation " + id);
  }
  if (n < doc.derivations.size()) return replay_script(kb.database(), kb.rules(), doc.derivations[n].steps);
  n -= doc.derivations.size();
  EnumerationOptions eo;
  eo.max_len = max_len;
  eo.dedup = Dedup::ModNulls;
  std::optional<Derivation> hit;
  std::size_t seen = 0;
  for_each_derivation(kb.database(), kb.rules(), eo, [&](const Derivation& d) {
    if (seen++ == n) {
      hit = d;
      return false;
    }
    return true;
  });
  if (!hit) throw UsageError("derivation " + id + " does not exist up to length " + std::to_string(max_len));
  return *hit;
}

struct Context {
  std::ostream& out;
  std::ostream& err;
  bool json = false;
  std::string file;
  std::size_t depth = 4;
  std::size_t max_len = 4;
  std::string derivation;
  bool all = false;
  std::string dedup = "mod-nulls";
  std::string strategy = "cr-only";
  std::string trace_out;
  std::string dot_out;
  std::string dot_steps;
  std::string rule_class;
  std::string query;
  std::uint64_t seed = 1;
  std::size_t count = 500;
  std::size_t limit = 0;
  bool witness_depth = false;

  RuleDocument doc() const { return parse_file(file); }

  void emit(const std::string& kind, const Json& payload, const std::string& text) const {
    if (json)
      out << make_report(kind, payload).dump(2) << "\n";
    else
      out << text;
  }
};

int cmd_parse(const Context& c) {
  auto doc = c.doc();
  Json payload = {{"facts", doc.facts.size()}, {"rules", doc.rules.size()}, {"queries", doc.queries.size()},
                  {"derivations", doc.derivations.size()}, {"text", print_document(doc)}};
  c.emit("parse", payload, print_document(doc));
  return 0;
}

int cmd_chase(const Context& c) {
  auto kb = c.doc().knowledge_base();
  auto inst = chase_k(kb.database(), kb.rules(), c.depth);
  std::string text;
  for (const auto& a : inst) text += a.str() + "\n";
  c.emit("chase", {{"depth", c.depth}, {"size", inst.size()}, {"instance", to_json(inst)}}, text);
  return 0;
}

int cmd_derivations(const Context& c) {
  auto doc = c.doc();
  auto kb = doc.knowledge_base();
  EnumerationOptions eo;
  eo.max_len = c.max_len;
  eo.dedup = c.dedup == "none" ? Dedup::None : Dedup::ModNulls;
  Json list = Json::array();
  std::string text;
  std::size_t id = doc.derivations.size();
  for_each_derivation(kb.database(), kb.rules(), eo, [&](const Derivation& d) {
    text += "#" + std::to_string(id) + "\n" + to_string(d, kb.rules());
    auto j = to_json(d, kb.rules());
    j["id"] = id++;
    list.push_back(j);
    return c.limit == 0 || list.size() < c.limit;
  });
  c.emit("derivations", {{"max_len", c.max_len}, {"count", list.size()}, {"derivations", list}}, text);
  return 0;
}

std::string greedy_text(const GreedinessReport& r) {
  std::string text = r.greedy ? "greedy\n" : "not greedy\n";
  for (const auto& s : r.steps) {
    text += "  step " + std::to_string(s.step) + " frontier " + to_string(s.frontier_image);
    text += s.witness ? " covered by step " + std::to_string(*s.witness) + "\n" : " VIOLATION\n";
  }
  return text;
}

int cmd_greedy(const Context& c) {
  auto doc = c.doc();
  auto kb = doc.knowledge_base();
  if (!c.all) {
    if (c.derivation.empty()) throw UsageError("give --derivation ID or --all");
    auto d = resolve_derivation(doc, kb, c.derivation, c.max_len);
    auto r = is_greedy(d, kb);
    c.emit("greedy-check", {{"derivation", to_json(d, kb.rules())}, {"report", to_json(r)}},
           to_string(d, kb.rules()) + greedy_text(r));
    return r.greedy ? 0 : 1;
  }
  EnumerationOptions eo;
  eo.max_len = c.max_len;
  eo.dedup = Dedup::ModNulls;
  std::size_t total = 0, greedy = 0;
  Json bad = Json::array();
  std::string text;
  for_each_derivation(kb.database(), kb.rules(), eo, [&](const Derivation& d) {
    auto r = is_greedy(d, kb);
    ++total;
    if (r.greedy) {
      ++greedy;
    } else {
      if (bad.empty()) text += "first non-greedy derivation:\n" + to_string(d, kb.rules()) + greedy_text(r);
      bad.push_back(doc.derivations.size() + total - 1);
    }
    return true;
  });
  text += std::to_string(greedy) + " of " + std::to_string(total) + " derivations are greedy\n";
  c.emit("greedy-check", {{"total", total}, {"greedy", greedy}, {"non_greedy_ids", bad}}, text);
  return greedy == total ? 0 : 1;
}

int cmd_grd(const Context& c) {
  auto kb = c.doc().knowledge_base();
  auto g = rule_dependency_graph(kb.rules());
  std::string text = "edges:\n";
  for (const auto& [a, b] : g.edges) text += "  " + g.vertices[a] + " -> " + g.vertices[b] + "\n";
  text += "sources:";
  for (auto s : g.sources()) text += " " + g.vertices[s];
  c.emit("grd", to_json(g), text + "\n");
  return 0;
}

int cmd_graph(const Context& c) {
  auto doc = c.doc();
  auto kb = doc.knowledge_base();
  if (c.derivation.empty()) throw UsageError("--derivation is required");
  auto g = build_derivation_graph(resolve_derivation(doc, kb, c.derivation, c.max_len), kb);
  if (!c.dot_out.empty()) write_file(c.dot_out, to_dot(g));
  c.emit("graph", to_json(g), to_string(g));
  return 0;
}

int cmd_reduce(const Context& c) {
  auto doc = c.doc();
  auto kb = doc.knowledge_base();
  if (c.derivation.empty()) throw UsageError("--derivation is required");
  auto strategy = c.strategy == "full" ? Strategy::Full : Strategy::CrOnly;
  auto g = build_derivation_graph(resolve_derivation(doc, kb, c.derivation, c.max_len), kb);
  std::optional<ReductionTrace> trace;
  try {
    trace = reduce(g, strategy);
  } catch (const ResourceLimit& e) {
    c.emit("reduce", {{"strategy", c.strategy}, {"result", "unknown"}, {"reason", e.what()}},
           std::string("unknown: ") + e.what() + "\n");
    return 1;
  }
  if (!trace) {
    c.emit("reduce", {{"strategy", c.strategy}, {"result", "irreducible"}}, "no complete reduction\n");
    return 1;
  }
  if (!c.trace_out.empty())
    write_file(c.trace_out, make_report("reduction-trace", to_json(*trace)).dump(2) + "\n");
  if (!c.dot_steps.empty()) {
    std::filesystem::create_directories(c.dot_steps);
    write_file(c.dot_steps + "/step0.dot", to_dot(trace->initial));
    for (std::size_t s = 0; s < trace->graphs.size(); ++s)
      write_file(c.dot_steps + "/step" + std::to_string(s + 1) + ".dot", to_dot(trace->graphs[s]));
  }
  std::string text;
  for (const auto& s : trace->step_strings()) text += s + "\n";
  text += "final graph:\n" + to_string(trace->final_graph());
  auto payload = to_json(*trace);
  payload["strategy"] = c.strategy;
  payload["result"] = "reduced";
  c.emit("reduce", payload, text);
  return 0;
}

int cmd_treedecomp(const Context& c) {
  auto doc = c.doc();
  auto kb = doc.knowledge_base();
  if (c.derivation.empty()) throw UsageError("--derivation is required");
  auto d = resolve_derivation(doc, kb, c.derivation, c.max_len);
  auto g = build_derivation_graph(d, kb);
  auto trace = reduce(g, Strategy::CrOnly);
  if (!trace) trace = reduce(g, Strategy::Full);
  if (!trace) {
    c.emit("treedecomp", {{"result", "irreducible"}}, "graph does not reduce to a cycle-free graph\n");
    return 1;
  }
  auto td = extract_tree_decomposition(trace->final_graph());
  bool valid = validate_tree_decomposition(td, d.final_instance());
  if (!c.dot_out.empty()) write_file(c.dot_out, to_dot(td));
  std::string text;
  for (std::size_t b = 0; b < td.bags.size(); ++b) text += "B" + std::to_string(b) + " " + to_string(td.bags[b]) + "\n";
  for (const auto& [a, b] : td.edges) text += "B" + std::to_string(a) + " -- B" + std::to_string(b) + "\n";
  text += "width " + std::to_string(td.width()) + ", bound " + std::to_string(width_bound(kb)) + ", " +
          (valid ? "valid" : "INVALID") + "\n";
  auto payload = to_json(td);
  payload["valid"] = valid;
  payload["width_bound"] = width_bound(kb);
  payload["trace"] = trace->step_strings();
  c.emit("treedecomp", payload, text);
  return valid ? 0 : 1;
}

int cmd_classify(const Context& c) {
  auto kb = c.doc().knowledge_base();
  ClassifyOptions options;
  options.depth = c.depth;
  options.witness_bound_depth = c.witness_depth;
  auto v = classify(kb, parse_rule_class(c.rule_class), options);
  std::string text = to_string(v.rule_class) + " " + to_string(v.result) + " up to depth " + std::to_string(v.depth) +
                     " (" + std::to_string(v.derivations) + " derivations)\n";
  if (!v.reason.empty()) text += "reason: " + v.reason + "\n";
  if (v.counterexample) text += "counterexample:\n" + to_string(*v.counterexample, kb.rules());
  c.emit("classify", to_json(v, kb.rules()), text);
  return v.result == Outcome::Holds ? 0 : 1;
}

int cmd_entail(const Context& c) {
  auto doc = c.doc();
  auto kb = doc.knowledge_base();
  const auto& q = doc.query(c.query);
  EntailmentResult r;
  try {
    r = entails(kb, q, c.depth);
  } catch (const ResourceLimit& e) {
    c.emit("entail", {{"query", c.query}, {"result", "unknown"}, {"reason", e.what()}},
           std::string("unknown: ") + e.what() + "\n");
    return 1;
  }
  Json payload = {{"query", c.query}, {"result", r.entailed ? "entailed" : "unknown"}, {"max_depth", c.depth}};
  payload["depth"] = r.depth ? Json(*r.depth) : Json(nullptr);
  c.emit("entail", payload,
         r.entailed ? "entailed at depth " + std::to_string(*r.depth) + "\n"
                    : "not entailed up to depth " + std::to_string(c.depth) + "\n");
  return r.entailed ? 0 : 1;
}

int cmd_selfcheck(const Context& c) {
  SelfcheckOptions options;
  options.seed = c.seed;
  options.count = c.count;
  options.max_len = c.max_len;
  auto r = run_selfcheck(options);
  std::string text = std::to_string(r.kbs) + " knowledge bases, " + std::to_string(r.stats.derivations) +
                     " derivations (" + std::to_string(r.stats.greedy) + " greedy), " +
                     std::to_string(r.stats.traces) + " traces, " + std::to_string(r.stats.violations.size()) +
                     " violations\n";
  for (std::size_t i = 0; i < r.stats.violations.size() && i < 10; ++i) text += r.stats.violations[i] + "\n";
  c.emit("selfcheck",
         {{"seed", c.seed}, {"kbs", r.kbs}, {"discarded", r.discarded}, {"derivations", r.stats.derivations},
          {"greedy", r.stats.greedy}, {"traces", r.stats.traces}, {"violations", r.stats.violations}},
         text);
  return r.ok() ? 0 : 1;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bounded chase, derivation graphs and reductions for existential rules", "chasegraph"};
  app.require_subcommand(1);
  Context c{out, err};
  app.add_flag("--json", c.json, "Print a JSON report");

  auto file_arg = [&](CLI::App* sub) { sub->add_option("file", c.file, "Rule file")->required()->check(CLI::ExistingFile); };
  auto derivation_opts = [&](CLI::App* sub) {
    sub->add_option("--derivation", c.derivation, "Declared derivation name or numeric id");
    sub->add_option("--max-len", c.max_len, "Enumeration length for numeric ids")->capture_default_str();
  };

  auto* parse = app.add_subcommand("parse", "Parse and print a rule file");
  file_arg(parse);
  auto* chase = app.add_subcommand("chase", "Compute the k-saturation");
  file_arg(chase);
  chase->add_option("--depth", c.depth, "k")->required();
  auto* derivs = app.add_subcommand("derivations", "Enumerate derivations");
  file_arg(derivs);
  derivs->add_option("--max-len", c.max_len)->required();
  derivs->add_option("--dedup", c.dedup)->check(CLI::IsMember({"none", "mod-nulls"}))->capture_default_str();
  derivs->add_option("--limit", c.limit, "Stop after this many (0 = all)");
  auto* greedy = app.add_subcommand("greedy-check", "Check derivations for greediness");
  file_arg(greedy);
  derivation_opts(greedy);
  greedy->add_flag("--all", c.all, "Check every derivation up to --max-len");
  auto* grd = app.add_subcommand("grd", "Graph of rule dependencies");
  file_arg(grd);
  auto* graph = app.add_subcommand("graph", "Build a derivation graph");
  file_arg(graph);
  derivation_opts(graph);
  graph->add_option("--dot", c.dot_out, "Write DOT here");
  auto* red = app.add_subcommand("reduce", "Reduce a derivation graph");
  file_arg(red);
  derivation_opts(red);
  red->add_option("--strategy", c.strategy)->check(CLI::IsMember({"cr-only", "full"}))->capture_default_str();
  red->add_option("--trace", c.trace_out, "Write the trace as JSON");
  red->add_option("--dot-steps", c.dot_steps, "Write one DOT file per step into this directory");
  auto* td = app.add_subcommand("treedecomp", "Tree decomposition from a reduced graph");
  file_arg(td);
  derivation_opts(td);
  td->add_option("--dot", c.dot_out, "Write DOT here");
  auto* cls = app.add_subcommand("classify", "Bounded class membership");
  file_arg(cls);
  cls->add_option("--class", c.rule_class)->required()->check(CLI::IsMember({"gbts", "wgbts", "cdgs", "wcdgs"}));
  cls->add_option("--depth", c.depth)->capture_default_str();
  cls->add_flag("--witness-depth", c.witness_depth, "Weak classes: search re-derivations up to --depth");
  auto* ent = app.add_subcommand("entail", "Bounded BCQ entailment");
  file_arg(ent);
  ent->add_option("--query", c.query)->required();
  ent->add_option("--depth", c.depth)->capture_default_str();
  auto* self = app.add_subcommand("selfcheck", "Randomized consistency checks");
  self->add_option("--seed", c.seed)->capture_default_str();
  self->add_option("--count", c.count)->capture_default_str();
  self->add_option("--max-len", c.max_len)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }
  if (self->parsed()) c.max_len = self->count("--max-len") ? c.max_len : 3;

  try {
    if (parse->parsed()) return cmd_parse(c);
    if (chase->parsed()) return cmd_chase(c);
    if (derivs->parsed()) return cmd_derivations(c);
    if (greedy->parsed()) return cmd_greedy(c);
    if (grd->parsed()) return cmd_grd(c);
    if (graph->parsed()) return cmd_graph(c);
    if (red->parsed()) return cmd_reduce(c);
    if (td->parsed()) return cmd_treedecomp(c);
    if (cls->parsed()) return cmd_classify(c);
    if (ent->parsed()) return cmd_entail(c);
    if (self->parsed()) return cmd_selfcheck(c);
  } catch (const SyntaxError& e) {
    err << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const ResourceLimit& e) {
    err << "resource limit: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"chasegraph"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace cg
