#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "chasegraph/atom.hpp"
#include "chasegraph/rule.hpp"

namespace cg {

/// Map `source` into `target`, extending `seed`. Variables and nulls of the
/// source are mappable; constants are fixed.
struct HomSearchProblem {
  std::span<const Atom> source;
  const Instance& target;
  Substitution seed = {};
};

/// All homomorphisms (up to `limit`) from the source atoms into the target
/// that extend the seed. Each result binds exactly the seed's domain plus the
/// mappable terms of the source. Results are duplicate-free and sorted.
std::vector<Substitution> find_homomorphisms(const HomSearchProblem& problem,
                                             std::optional<std::size_t> limit = std::nullopt);

std::vector<Substitution> find_homomorphisms(std::span<const Atom> source, const Instance& target,
                                             const Substitution& seed = {},
                                             std::optional<std::size_t> limit = std::nullopt);

bool has_homomorphism(std::span<const Atom> source, const Instance& target, const Substitution& seed = {});

/// Does `instance` satisfy `rule` (every body match extends to the head)?
bool satisfies_rule(const Instance& instance, const Rule& rule);

bool hom_equivalent(const Instance& a, const Instance& b);

/// A bijective renaming of nulls mapping `a` onto `b`, if one exists.
std::optional<Substitution> isomorphic_mod_nulls(const Instance& a, const Instance& b);

/// Cheap isomorphism-invariant fingerprint; equal for instances that are
/// isomorphic modulo null renaming.
std::size_t null_invariant_hash(const Instance& instance);

}  // namespace cg
