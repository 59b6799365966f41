#pragma once

#include <optional>
#include <string>
#include <vector>

#include "chasegraph/chase.hpp"
#include "chasegraph/derivation_graph.hpp"
#include "chasegraph/rule.hpp"
#include "chasegraph/tree_decomposition.hpp"

namespace fx {

using namespace cg;

inline Term c(const char* n) { return Term::constant(n); }
inline Term v(const char* n) { return Term::variable(n); }
inline Atom at(const char* p, std::vector<Term> args) { return make_atom(p, std::move(args)); }

// the wgbts-but-not-gbts example
Instance d_dagger();
RuleSet r2();
KnowledgeBase kb2();
Derivation delta1();
Derivation delta2();

// the derivation graph example
Instance d_ddagger();
RuleSet r3();
KnowledgeBase kb3();
Derivation delta_fig2();

/// Null created for existential `var` at step `step` (1-based).
Term null_of(const Derivation& d, std::size_t step, const char* var, const RuleSet& rules);

std::string data_path(const std::string& file);

// ---- independent oracles ----

/// Every map of the source's variables and nulls to terms of the target, kept
/// when the image is a subset of the target.
std::vector<Substitution> brute_homomorphisms(const std::vector<Atom>& source, const Instance& target);

/// Dependence by enumerating small instances: r1's body image under every map
/// into a small constant universe, plus up to |body(r2)| - 1 further atoms.
bool brute_depends_on(const Rule& r2, const Rule& r1);

/// Greedy check straight from the definition.
bool naive_greedy(const Derivation& d, const KnowledgeBase& kb);

/// The three tree decomposition conditions plus tree shape, checked naively.
bool naive_td_valid(const TreeDecomposition& td, const Instance& instance);

/// Small random valid derivation for property tests.
std::optional<Derivation> random_derivation(const KnowledgeBase& kb, std::size_t len, unsigned seed);

}  // namespace fx
