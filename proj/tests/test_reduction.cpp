#include <doctest.h>

#include "chasegraph/errors.hpp"
#include "chasegraph/reduction.hpp"
#include "chasegraph/rule_analysis.hpp"
#include "fixtures.hpp"

using namespace fx;

namespace {

struct Fig2 {
  Derivation d = delta_fig2();
  Term z0 = null_of(d, 1, "Z", r3());
  Term z1 = null_of(d, 2, "Z", r3());
  DerivationGraph g = build_derivation_graph(d, kb3());
};

}  // namespace

TEST_CASE("the tr, ar, cr sequence of the example") {
  Fig2 f;
  auto t = apply_tr(f.g, 2, 1, 3, f.z0);
  CHECK(t.label(1, 3).empty());
  CHECK(t.label(2, 3) == TermSet{f.z0, f.z1});
  auto a = apply_ar(t, 1, 3);
  CHECK_FALSE(a.has_arc(1, 3));
  auto c = apply_cr(a, 2, 3, 4, 2);
  std::map<Arc, TermSet> expected{{{0, 1}, {}}, {{1, 2}, {f.z0}}, {{2, 3}, {f.z0, f.z1}}, {{2, 4}, {f.z0, f.z1}}};
  CHECK(c.arcs() == expected);
  CHECK(is_cycle_free(c));
  CHECK(is_reduction_complete(c));
  CHECK(c.same_nodes(f.g));

  auto trace = make_trace(f.g, {TrStep{2, 1, 3, f.z0}, ArStep{1, 3}, CrStep{2, 3, 4, 2}});
  CHECK(trace.replay_matches());
  CHECK(trace.final_graph() == c);
  CHECK(check_prefix_invariants(trace).ok());
  CHECK(trace.step_strings() == std::vector<std::string>{"TR(2,1,3," + f.z0.str() + ")", "AR(1,3)", "CR(2,3,4,2)"});
}

TEST_CASE("side conditions") {
  Fig2 f;
  CHECK_NOTHROW(apply_ar(f.g, 0, 1));
  CHECK_THROWS_AS(apply_ar(f.g, 1, 2), SideConditionViolated);
  CHECK_THROWS_AS(apply_ar(f.g, 0, 4), SideConditionViolated);
  // tr is symmetric in which arc loses the term
  CHECK_NOTHROW(apply_tr(f.g, 1, 2, 3, f.z0));
  CHECK_THROWS_AS(apply_tr(f.g, 2, 1, 3, f.z1), SideConditionViolated);
  CHECK_THROWS_AS(apply_tr(f.g, 2, 2, 3, f.z0), SideConditionViolated);
  CHECK_NOTHROW(apply_cr(f.g, 1, 2, 3, 2));
  CHECK_THROWS_AS(apply_cr(f.g, 1, 2, 3, 3), SideConditionViolated);
  CHECK_THROWS_AS(apply_cr(f.g, 1, 2, 3, 1), SideConditionViolated);
  CHECK_THROWS_AS(apply_cr(f.g, 2, 2, 3, 2), SideConditionViolated);
  CHECK_THROWS_AS(apply_cr(f.g, 1, 2, 4, 0), SideConditionViolated);
}

TEST_CASE("cr overwrites an existing target arc") {
  Fig2 f;
  auto g = apply_cr(f.g, 1, 2, 3, 2);
  CHECK(g.label(2, 3) == TermSet{f.z0, f.z1});
  CHECK_FALSE(g.has_arc(1, 3));
  auto g2 = apply_cr(f.g, 2, 3, 4, 3);
  CHECK(g2.label(3, 4) == TermSet{f.z0, f.z1});
}

TEST_CASE("cycle freeness") {
  Fig2 f;
  CHECK_FALSE(is_cycle_free(f.g));
  Derivation d;
  d.initial = d_ddagger();
  CHECK(is_cycle_free(build_derivation_graph(d, kb3())));
}

TEST_CASE("reduce strategies on the example") {
  Fig2 f;
  auto cr = reduce(f.g, Strategy::CrOnly);
  REQUIRE(cr);
  CHECK(cr->step_strings() == std::vector<std::string>{"CR(1,2,3,2)", "CR(2,3,4,2)"});
  CHECK(is_reduction_complete(cr->final_graph()));
  CHECK(check_prefix_invariants(*cr).ok());
  auto full = reduce(f.g, Strategy::Full);
  REQUIRE(full);
  CHECK(is_reduction_complete(full->final_graph()));
  CHECK(full->replay_matches());
  CHECK(check_prefix_invariants(*full).ok());

  ReductionTrace empty{f.g, {}, {}};
  CHECK(check_prefix_invariants(empty).ok());
}

TEST_CASE("the non-greedy derivation is irreducible") {
  auto g = build_derivation_graph(delta1(), kb2());
  CHECK_FALSE(reduce(g, Strategy::CrOnly));
  CHECK_FALSE(reduce(g, Strategy::Full));
  auto g2 = build_derivation_graph(delta2(), kb2());
  CHECK(reduce(g2, Strategy::CrOnly));
  CHECK(reduce(g2, Strategy::Full));
}

TEST_CASE("greedy iff reducible on the example knowledge bases") {
  for (const auto& kb : {kb2(), kb3()}) {
    EnumerationOptions o;
    o.max_len = 4;
    for_each_derivation(kb.database(), kb.rules(), o, [&](const Derivation& d) {
      auto g = build_derivation_graph(d, kb);
      bool greedy = is_greedy(d, kb).greedy;
      auto cr = reduce(g, Strategy::CrOnly);
      CHECK(greedy == cr.has_value());
      if (d.length() <= 3) CHECK(greedy == reduce(g, Strategy::Full).has_value());
      if (cr) CHECK(check_prefix_invariants(*cr).ok());
      return true;
    });
  }
}

TEST_CASE("a cycle-free graph with a node of two parents") {
  // two independent sources feed one step: no undirected cycle, yet not greedy
  auto X = v("X"), Y = v("Y");
  RuleSet rules{Rule("r1", {at("p", {X})}, {at("q", {Y})}), Rule("r2", {at("p", {X})}, {at("r", {Y})}),
                Rule("r3", {at("q", {X}), at("r", {Y})}, {at("s", {X, Y})})};
  KnowledgeBase kb(Instance{at("p", {c("a")})}, rules);
  auto d = replay_script(kb.database(), rules,
                         {{"r1", {{"X", "a"}}}, {"r2", {{"X", "a"}}}, {"r3", {{"X", "Y@1"}, {"Y", "Y@2"}}}});
  auto g = build_derivation_graph(d, kb);
  CHECK(is_cycle_free(g));
  CHECK_FALSE(is_reduction_complete(g));
  CHECK_FALSE(is_greedy(d, kb).greedy);
  CHECK_FALSE(reduce(g, Strategy::Full));
}

TEST_CASE("redundant head atoms do not break the correspondence") {
  auto X = v("X"), Y = v("Y"), Z = v("Z");
  RuleSet rules{Rule("r1", {at("p", {X})}, {at("q", {Y})}), Rule("r2", {at("q", {X})}, {at("q", {X}), at("r", {Z})}),
                Rule("r3", {at("q", {X}), at("r", {Y})}, {at("s", {X, Y})})};
  KnowledgeBase kb(Instance{at("p", {c("a")})}, rules);
  auto d = replay_script(kb.database(), rules,
                         {{"r1", {{"X", "a"}}}, {"r2", {{"X", "Y@1"}}}, {"r3", {{"X", "Y@1"}, {"Y", "Z@2"}}}});
  bool greedy = is_greedy(d, kb).greedy;
  CHECK(greedy);
  auto g = build_derivation_graph(d, kb);
  CHECK(reduce(g, Strategy::CrOnly).has_value() == greedy);
  CHECK(reduce(g, Strategy::Full).has_value() == greedy);
}

TEST_CASE("full search respects its state cap") {
  auto g = build_derivation_graph(delta1(), kb2());
  ReduceOptions tiny;
  tiny.max_states = 2;
  CHECK_THROWS_AS(reduce(g, Strategy::Full, tiny), ResourceLimit);
}
