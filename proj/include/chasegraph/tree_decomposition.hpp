#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "chasegraph/atom.hpp"
#include "chasegraph/derivation_graph.hpp"
#include "chasegraph/rule.hpp"

namespace cg {

struct TreeDecomposition {
  std::vector<TermSet> bags;
  /// Undirected, stored with the smaller index first.
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::size_t root = 0;

  /// Largest bag size minus one (-1 for no bags).
  long width() const;
  std::size_t max_bag() const;
};

/// One bag per node holding terms(X_i) restricted to the terms of the graph's
/// instance; arcs become tree edges and the trees of the forest are chained
/// root to root in order of their smallest node. Throws NotCycleFree.
TreeDecomposition extract_tree_decomposition(const DerivationGraph& g);

/// The edges form a tree over the bags, every term and every atom of the
/// instance is covered, and each term occupies a connected subtree.
bool validate_tree_decomposition(const TreeDecomposition& td, const Instance& instance);

/// max{|terms(D)|, max_rho |terms(head(rho))|} + |C|.
std::size_t width_bound(const KnowledgeBase& kb);

}  // namespace cg
