#pragma once

#include <string>

#include <json.hpp>

#include "chasegraph/chase.hpp"
#include "chasegraph/classifier.hpp"
#include "chasegraph/derivation_graph.hpp"
#include "chasegraph/reduction.hpp"
#include "chasegraph/rule_analysis.hpp"
#include "chasegraph/tree_decomposition.hpp"

namespace cg {

using Json = nlohmann::ordered_json;

inline constexpr int kReportSchema = 1;

/// `{"schema": 1, "kind": kind, ...payload}`.
Json make_report(const std::string& kind, Json payload);

Json to_json(const TermSet& terms);
Json to_json(const Instance& instance);
Json to_json(const Substitution& s);
Json to_json(const Derivation& d, const RuleSet& rules);
Json to_json(const GreedinessReport& report);
Json to_json(const RuleDependencyGraph& grd);
Json to_json(const DerivationGraph& g);
Json to_json(const ReductionStep& step);
Json to_json(const ReductionTrace& trace);
Json to_json(const TreeDecomposition& td);
Json to_json(const DecompositionReport& report);
Json to_json(const ClassificationVerdict& verdict, const RuleSet& rules);

/// Nodes captioned `X<i>: {atoms}`, arcs captioned with their sorted labels.
std::string to_dot(const DerivationGraph& g, const std::string& name = "G");
std::string to_dot(const TreeDecomposition& td, const std::string& name = "T");

}  // namespace cg
