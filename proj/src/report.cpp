#include "chasegraph/report.hpp"

namespace cg {

Json make_report(const std::string& kind, Json payload) {
  Json out;
  out["schema"] = kReportSchema;
  out["kind"] = kind;
  for (auto& [key, value] : payload.items()) out[key] = value;
  return out;
}

Json to_json(const TermSet& terms) {
  Json out = Json::array();
  for (const auto& t : terms) out.push_back(t.str());
  return out;
}

Json to_json(const Instance& instance) {
  Json out = Json::array();
  for (const auto& a : instance) out.push_back(a.str());
  return out;
}

Json to_json(const Substitution& s) {
  Json out = Json::object();
  for (const auto& [from, to] : s.bindings()) out[from.str()] = to.str();
  return out;
}

Json to_json(const Derivation& d, const RuleSet& rules) {
  Json steps = Json::array();
  for (std::size_t i = 1; i <= d.length(); ++i) {
    const auto& t = d.steps[i - 1].trigger;
    steps.push_back({{"step", i},
                     {"rule", rules.at(t.rule).id()},
                     {"hom", to_json(t.hom)},
                     {"extension", to_json(t.extension)},
                     {"added", to_json(d.instance(i).difference(d.instance(i - 1)))}});
  }
  return {{"initial", to_json(d.initial)}, {"steps", steps}, {"final", to_json(d.final_instance())}};
}

Json to_json(const GreedinessReport& report) {
  Json steps = Json::array();
  for (const auto& s : report.steps) {
    Json j = {{"step", s.step}, {"frontier_image", to_json(s.frontier_image)}};
    j["witness"] = s.witness ? Json(*s.witness) : Json(nullptr);
    steps.push_back(j);
  }
  Json out = {{"greedy", report.greedy}, {"steps", steps}};
  out["first_violation"] = report.first_violation ? Json(*report.first_violation) : Json(nullptr);
  return out;
}

Json to_json(const RuleDependencyGraph& grd) {
  Json edges = Json::array();
  for (const auto& [a, b] : grd.edges) edges.push_back({grd.vertices[a], grd.vertices[b]});
  Json sources = Json::array();
  for (auto s : grd.sources()) sources.push_back(grd.vertices[s]);
  return {{"vertices", grd.vertices}, {"edges", edges}, {"sources", sources}, {"layers", grd.layers()}};
}

Json to_json(const DerivationGraph& g) {
  Json nodes = Json::array();
  for (std::size_t n = 0; n < g.size(); ++n) {
    Json node = {{"id", n}, {"atoms", to_json(g.atoms(n))}, {"terms", to_json(g.terms(n))}};
    if (n > 0) node["rule"] = g.node(n).rule_id;
    nodes.push_back(node);
  }
  Json arcs = Json::array();
  for (const auto& [arc, label] : g.arcs())
    arcs.push_back({{"from", arc.first}, {"to", arc.second}, {"label", to_json(label)}});
  return {{"constants", to_json(g.constants())}, {"nodes", nodes}, {"arcs", arcs}};
}

Json to_json(const ReductionStep& step) {
  struct {
    Json operator()(const ArStep& s) const { return {{"op", "ar"}, {"i", s.i}, {"j", s.j}}; }
    Json operator()(const TrStep& s) const {
      return {{"op", "tr"}, {"i", s.i}, {"j", s.j}, {"k", s.k}, {"t", s.t.str()}};
    }
    Json operator()(const CrStep& s) const { return {{"op", "cr"}, {"i", s.i}, {"j", s.j}, {"k", s.k}, {"l", s.l}}; }
  } visitor;
  auto out = std::visit(visitor, step);
  out["text"] = to_string(step);
  return out;
}

Json to_json(const ReductionTrace& trace) {
  Json steps = Json::array();
  for (const auto& s : trace.steps) steps.push_back(to_json(s));
  return {{"steps", steps},
          {"initial", to_json(trace.initial)},
          {"final", to_json(trace.final_graph())},
          {"complete", is_reduction_complete(trace.final_graph())}};
}

Json to_json(const TreeDecomposition& td) {
  Json bags = Json::array();
  for (const auto& b : td.bags) bags.push_back(to_json(b));
  Json edges = Json::array();
  for (const auto& [a, b] : td.edges) edges.push_back({a, b});
  return {{"bags", bags}, {"edges", edges}, {"root", td.root}, {"width", td.width()}};
}

Json to_json(const DecompositionReport& report) {
  return {{"term_cover", report.term_cover}, {"atom_cover", report.atom_cover}, {"connected", report.connected},
          {"bounded", report.bounded},       {"bound", report.bound},           {"max_node_terms", report.max_node_terms},
          {"violations", report.violations}};
}

Json to_json(const ClassificationVerdict& verdict, const RuleSet& rules) {
  Json out = {{"class", to_string(verdict.rule_class)},
              {"depth", verdict.depth},
              {"result", to_string(verdict.result)},
              {"derivations", verdict.derivations},
              {"instances", verdict.instances}};
  if (!verdict.reason.empty()) out["reason"] = verdict.reason;
  if (verdict.counterexample) out["counterexample"] = to_json(*verdict.counterexample, rules);
  Json witnesses = Json::array();
  for (const auto& w : verdict.witnesses) {
    Json j = {{"instance", to_json(w.representative.final_instance())}, {"witness", to_json(w.witness, rules)}};
    if (w.trace) j["trace"] = w.trace->step_strings();
    witnesses.push_back(j);
  }
  out["witnesses"] = witnesses;
  return out;
}

namespace {

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

std::string to_dot(const DerivationGraph& g, const std::string& name) {
  std::string out = "digraph " + name + " {\n";
  for (std::size_t n = 0; n < g.size(); ++n)
    out += "  X" + std::to_string(n) + " [label=\"" + escape("X" + std::to_string(n) + ": " + g.atoms(n).str()) +
           "\"];\n";
  for (const auto& [arc, label] : g.arcs())
    out += "  X" + std::to_string(arc.first) + " -> X" + std::to_string(arc.second) + " [label=\"" +
           escape(to_string(label)) + "\"];\n";
  return out + "}\n";
}

std::string to_dot(const TreeDecomposition& td, const std::string& name) {
  std::string out = "graph " + name + " {\n";
  for (std::size_t b = 0; b < td.bags.size(); ++b)
    out += "  B" + std::to_string(b) + " [label=\"" + escape("B" + std::to_string(b) + ": " + to_string(td.bags[b])) +
           "\"];\n";
  for (const auto& [a, b] : td.edges) out += "  B" + std::to_string(a) + " -- B" + std::to_string(b) + ";\n";
  return out + "}\n";
}

}  // namespace cg
