#include <pybind11/functional.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "chasegraph/classifier.hpp"
#include "chasegraph/cli.hpp"
#include "chasegraph/errors.hpp"
#include "chasegraph/homomorphism.hpp"
#include "chasegraph/parser.hpp"
#include "chasegraph/report.hpp"
#include "chasegraph/rule_analysis.hpp"
#include "chasegraph/tree_decomposition.hpp"

namespace py = pybind11;
using namespace cg;

namespace {

std::vector<std::string> atom_strings(const Instance& inst) {
  std::vector<std::string> out;
  for (const auto& a : inst) out.push_back(a.str());
  return out;
}

std::vector<std::string> term_strings(const TermSet& terms) {
  std::vector<std::string> out;
  for (const auto& t : terms) out.push_back(t.str());
  return out;
}

}  // namespace

PYBIND11_MODULE(_chasegraph, m) {
  m.doc() = "Bounded chase, derivation graphs and reductions for existential rules";

  auto error = py::register_exception<Error>(m, "Error");
  py::register_exception<SyntaxError>(m, "SyntaxError", error.ptr());
  py::register_exception<ResourceLimit>(m, "ResourceLimit", error.ptr());
  py::register_exception<NotTriggered>(m, "NotTriggered", error.ptr());
  py::register_exception<NotPermutable>(m, "NotPermutable", error.ptr());
  py::register_exception<SideConditionViolated>(m, "SideConditionViolated", error.ptr());
  py::register_exception<NotCycleFree>(m, "NotCycleFree", error.ptr());

  py::class_<Term>(m, "Term")
      .def_static("constant", &Term::constant)
      .def_static("variable", &Term::variable)
      .def_static("null", &Term::null)
      .def_property_readonly("is_null", &Term::is_null)
      .def("__str__", &Term::str)
      .def("__repr__", &Term::str)
      .def("__hash__", &Term::hash)
      .def(py::self == py::self)
      .def(py::self < py::self);

  py::class_<Instance>(m, "Instance")
      .def("__len__", &Instance::size)
      .def("atoms", &atom_strings)
      .def("terms", [](const Instance& i) { return term_strings(i.terms()); })
      .def("__str__", &Instance::str)
      .def(py::self == py::self);

  py::class_<Rule>(m, "Rule")
      .def_property_readonly("id", &Rule::id)
      .def_property_readonly("frontier", [](const Rule& r) { return term_strings(r.frontier()); })
      .def_property_readonly("existentials", [](const Rule& r) { return term_strings(r.existentials()); })
      .def("__str__", &Rule::str);

  py::class_<KnowledgeBase>(m, "KnowledgeBase")
      .def_property_readonly("database", &KnowledgeBase::database)
      .def_property_readonly("rules", &KnowledgeBase::rules)
      .def_property_readonly("constants", [](const KnowledgeBase& kb) { return term_strings(kb.constants()); });

  py::class_<BooleanQuery>(m, "BooleanQuery").def("__str__", &BooleanQuery::str);

  py::class_<RuleDocument>(m, "RuleDocument")
      .def_property_readonly("rules", [](const RuleDocument& d) { return d.rules; })
      .def_property_readonly("facts", [](const RuleDocument& d) { return atom_strings(Instance(d.facts)); })
      .def("knowledge_base", &RuleDocument::knowledge_base)
      .def("query", &RuleDocument::query, py::return_value_policy::copy)
      .def("derivation_names",
           [](const RuleDocument& d) {
             std::vector<std::string> out;
             for (const auto& s : d.derivations) out.push_back(s.name);
             return out;
           })
      .def("replay", [](const RuleDocument& d, const std::string& name) {
        auto kb = d.knowledge_base();
        return replay_script(kb.database(), kb.rules(), d.derivation(name).steps);
      });

  m.def("parse_document", [](const std::string& text) { return parse_document(text); });
  m.def("print_document", &print_document);

  py::class_<Derivation>(m, "Derivation")
      .def_property_readonly("length", &Derivation::length)
      .def_property_readonly("final_instance", &Derivation::final_instance)
      .def("instance", &Derivation::instance)
      .def("rule_ids",
           [](const Derivation& d, const KnowledgeBase& kb) {
             std::vector<std::string> out;
             for (const auto& s : d.steps) out.push_back(kb.rules().at(s.trigger.rule).id());
             return out;
           })
      .def("to_json", [](const Derivation& d, const KnowledgeBase& kb) { return to_json(d, kb.rules()).dump(); });

  m.def("validate_derivation",
        [](const Derivation& d, const KnowledgeBase& kb) { return validate_derivation(d, kb.rules()); });
  m.def("chase_k", [](const KnowledgeBase& kb, std::size_t k) { return chase_k(kb.database(), kb.rules(), k); });
  m.def(
      "enumerate_derivations",
      [](const KnowledgeBase& kb, std::size_t max_len, bool mod_nulls) {
        EnumerationOptions eo;
        eo.max_len = max_len;
        eo.dedup = mod_nulls ? Dedup::ModNulls : Dedup::None;
        return enumerate_derivations(kb.database(), kb.rules(), eo);
      },
      py::arg("kb"), py::arg("max_len"), py::arg("mod_nulls") = true);
  m.def("isomorphic_mod_nulls",
        [](const Instance& a, const Instance& b) { return isomorphic_mod_nulls(a, b).has_value(); });

  py::class_<GreedinessReport>(m, "GreedinessReport")
      .def_readonly("greedy", &GreedinessReport::greedy)
      .def_readonly("first_violation", &GreedinessReport::first_violation);
  m.def("is_greedy", [](const Derivation& d, const KnowledgeBase& kb) { return is_greedy(d, kb); });
  m.def("depends_on", &depends_on, py::arg("r2"), py::arg("r1"));
  m.def("rule_dependency_graph", [](const KnowledgeBase& kb) {
    auto g = rule_dependency_graph(kb.rules());
    std::vector<std::pair<std::string, std::string>> edges;
    for (const auto& [a, b] : g.edges) edges.emplace_back(g.vertices[a], g.vertices[b]);
    return edges;
  });
  m.def("permute_adjacent", [](const Derivation& d, std::size_t i, const KnowledgeBase& kb) {
    return permute_adjacent(d, i, kb.rules());
  });
  m.def("find_greedy_rederivation", [](const KnowledgeBase& kb, const Instance& target, std::size_t max_len) {
    return find_greedy_rederivation(kb, target, max_len);
  });

  py::class_<DerivationGraph>(m, "DerivationGraph")
      .def("__len__", &DerivationGraph::size)
      .def("atoms", [](const DerivationGraph& g, std::size_t i) { return atom_strings(g.atoms(i)); })
      .def("terms", [](const DerivationGraph& g, std::size_t i) { return term_strings(g.terms(i)); })
      .def("arcs",
           [](const DerivationGraph& g) {
             std::vector<std::pair<std::pair<std::size_t, std::size_t>, std::vector<std::string>>> out;
             for (const auto& [arc, label] : g.arcs()) out.push_back({arc, term_strings(label)});
             return out;
           })
      .def("to_dot", [](const DerivationGraph& g) { return to_dot(g); })
      .def("to_json", [](const DerivationGraph& g) { return to_json(g).dump(); });
  m.def("build_derivation_graph",
        [](const Derivation& d, const KnowledgeBase& kb) { return build_derivation_graph(d, kb); });
  m.def("is_cycle_free", &is_cycle_free);

  py::class_<ReductionTrace>(m, "ReductionTrace")
      .def_property_readonly("steps", &ReductionTrace::step_strings)
      .def_property_readonly("final_graph", &ReductionTrace::final_graph)
      .def("replay_matches", &ReductionTrace::replay_matches);
  m.def(
      "reduce",
      [](const DerivationGraph& g, const std::string& strategy) {
        return reduce(g, strategy == "full" ? Strategy::Full : Strategy::CrOnly);
      },
      py::arg("graph"), py::arg("strategy") = "cr-only");

  py::class_<TreeDecomposition>(m, "TreeDecomposition")
      .def_property_readonly("bags",
                             [](const TreeDecomposition& td) {
                               std::vector<std::vector<std::string>> out;
                               for (const auto& b : td.bags) out.push_back(term_strings(b));
                               return out;
                             })
      .def_readonly("edges", &TreeDecomposition::edges)
      .def_property_readonly("width", &TreeDecomposition::width);
  m.def("extract_tree_decomposition", &extract_tree_decomposition);
  m.def("validate_tree_decomposition", &validate_tree_decomposition);
  m.def("width_bound", &width_bound);

  m.def(
      "classify",
      [](const KnowledgeBase& kb, const std::string& cls, std::size_t depth) {
        ClassifyOptions options;
        options.depth = depth;
        auto v = classify(kb, parse_rule_class(cls), options);
        return std::make_pair(to_string(v.result), to_json(v, kb.rules()).dump());
      },
      py::arg("kb"), py::arg("rule_class"), py::arg("depth") = 4);
  m.def("entails", [](const KnowledgeBase& kb, const BooleanQuery& q, std::size_t depth) {
    auto r = entails(kb, q, depth);
    return r.depth;
  });

  m.def("run_cli", [](const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return py::make_tuple(code, out.str(), err.str());
  });
}
