#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "chasegraph/atom.hpp"
#include "chasegraph/chase.hpp"
#include "chasegraph/rule.hpp"

namespace cg {

/// How terms(X_i) is computed for i >= 1.
enum class NodeTerms {
  /// terms(h̄_i(head(rho_i))) ∪ C; terms(X_0) = terms(D) ∪ C.
  HeadImage,
  /// terms(At(X_i)) ∪ C, the newly added atoms only.
  NewAtoms,
};

struct GraphNode {
  Instance atoms;  // At(X_i)
  TermSet terms;   // terms(X_i), includes C
  /// h̄_i(fr(rho_i)) \ C; empty for X_0.
  TermSet frontier_image;
  std::optional<Trigger> provenance;
  std::string rule_id;
};

using Arc = std::pair<std::size_t, std::size_t>;

/// Nodes X_0..X_n with atom decorations, labelled arcs (i, j) with i < j and
/// the constant set C. Node data is shared between copies; reductions only
/// touch the arcs.
class DerivationGraph {
 public:
  DerivationGraph() = default;
  DerivationGraph(std::vector<GraphNode> nodes, TermSet constants);

  std::size_t size() const { return nodes_ ? nodes_->size() : 0; }
  const GraphNode& node(std::size_t i) const { return nodes_->at(i); }
  const Instance& atoms(std::size_t i) const { return node(i).atoms; }
  const TermSet& terms(std::size_t i) const { return node(i).terms; }
  const TermSet& constants() const { return constants_; }

  const std::map<Arc, TermSet>& arcs() const { return arcs_; }
  bool has_arc(std::size_t i, std::size_t j) const { return arcs_.contains({i, j}); }
  /// Throws SideConditionViolated when the arc is missing.
  const TermSet& label(std::size_t i, std::size_t j) const;
  std::vector<std::size_t> parents(std::size_t k) const;
  std::vector<std::size_t> children(std::size_t i) const;

  /// Adds (or unions into) the label of arc (i, j). Requires i < j.
  void add_arc(std::size_t i, std::size_t j, const TermSet& label);
  void set_label(std::size_t i, std::size_t j, TermSet label);
  void remove_arc(std::size_t i, std::size_t j);

  /// ∪ At(X_i).
  Instance instance() const;
  /// Does `other` share these nodes (same node data)?
  bool same_nodes(const DerivationGraph& other) const;

  friend bool operator==(const DerivationGraph& a, const DerivationGraph& b);

 private:
  std::shared_ptr<const std::vector<GraphNode>> nodes_;
  std::map<Arc, TermSet> arcs_;
  TermSet constants_;
};

DerivationGraph build_derivation_graph(const Derivation& d, const RuleSet& rules, const TermSet& constants,
                                       NodeTerms mode = NodeTerms::HeadImage);
/// C = const(D, R) from the knowledge base.
DerivationGraph build_derivation_graph(const Derivation& d, const KnowledgeBase& kb,
                                       NodeTerms mode = NodeTerms::HeadImage);

/// fr(X_n): empty for nodes without incoming arcs, else h̄_n(fr(rho_n)) \ C.
TermSet node_frontier(const DerivationGraph& g, std::size_t node);

/// Smallest n with x ∈ terms(X_n) \ C. Throws UnknownTerm.
std::size_t x_generative_node(const DerivationGraph& g, const Term& x);

struct DecompositionReport {
  bool term_cover = true;
  bool atom_cover = true;
  bool connected = true;
  bool bounded = true;
  std::size_t bound = 0;
  std::size_t max_node_terms = 0;
  std::vector<std::string> violations;

  bool ok() const { return term_cover && atom_cover && connected && bounded; }
};

/// The four decomposition properties of a (possibly reduced) graph for the
/// final instance of its derivation.
DecompositionReport check_decomposition_properties(const DerivationGraph& g, const Instance& final_instance,
                                                   const KnowledgeBase& kb);

/// For every non-constant x, each node containing x is reachable from x's
/// generative node by a directed path through nodes containing x. Returns the
/// violations found.
std::vector<std::string> check_generative_paths(const DerivationGraph& g);

/// Frontier/label invariants: for each node with parents, its frontier equals
/// the union of incoming labels, and every label is within its source terms.
std::vector<std::string> check_label_invariants(const DerivationGraph& g);

std::string to_string(const DerivationGraph& g);

}  // namespace cg
