#include "chasegraph/reduction.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <unordered_set>

#include "chasegraph/errors.hpp"

namespace cg {

namespace {

std::string arc_name(std::size_t i, std::size_t j) {
  return "(X" + std::to_string(i) + ",X" + std::to_string(j) + ")";
}

void require_arc(const DerivationGraph& g, std::size_t i, std::size_t j) {
  if (!g.has_arc(i, j)) throw SideConditionViolated("no arc " + arc_name(i, j));
}

}  // namespace

std::string to_string(const ReductionStep& step) {
  struct {
    std::string operator()(const ArStep& s) const {
      return "AR(" + std::to_string(s.i) + "," + std::to_string(s.j) + ")";
    }
    std::string operator()(const TrStep& s) const {
      return "TR(" + std::to_string(s.i) + "," + std::to_string(s.j) + "," + std::to_string(s.k) + "," + s.t.str() +
             ")";
    }
    std::string operator()(const CrStep& s) const {
      return "CR(" + std::to_string(s.i) + "," + std::to_string(s.j) + "," + std::to_string(s.k) + "," +
             std::to_string(s.l) + ")";
    }
  } visitor;
  return std::visit(visitor, step);
}

DerivationGraph apply_ar(const DerivationGraph& g, std::size_t i, std::size_t j) {
  require_arc(g, i, j);
  if (!g.label(i, j).empty()) throw SideConditionViolated("label of " + arc_name(i, j) + " is not empty");
  auto out = g;
  out.remove_arc(i, j);
  return out;
}

DerivationGraph apply_tr(const DerivationGraph& g, std::size_t i, std::size_t j, std::size_t k, const Term& t) {
  if (i == j) throw SideConditionViolated("tr needs two distinct arcs");
  require_arc(g, i, k);
  require_arc(g, j, k);
  if (!g.label(i, k).contains(t) || !g.label(j, k).contains(t))
    throw SideConditionViolated(t.str() + " does not label both " + arc_name(i, k) + " and " + arc_name(j, k));
  auto out = g;
  auto label = g.label(j, k);
  label.erase(t);
  out.set_label(j, k, std::move(label));
  return out;
}

DerivationGraph apply_cr(const DerivationGraph& g, std::size_t i, std::size_t j, std::size_t k, std::size_t l) {
  if (i == j) throw SideConditionViolated("cr needs two distinct arcs");
  require_arc(g, i, k);
  require_arc(g, j, k);
  if (l >= k) throw SideConditionViolated("cr target X" + std::to_string(l) + " must precede X" + std::to_string(k));
  TermSet u = g.label(i, k);
  u.insert(g.label(j, k).begin(), g.label(j, k).end());
  const auto& terms = g.terms(l);
  if (!std::includes(terms.begin(), terms.end(), u.begin(), u.end()))
    throw SideConditionViolated(to_string(u) + " is not within terms(X" + std::to_string(l) + ")");
  auto out = g;
  out.remove_arc(i, k);
  out.remove_arc(j, k);
  out.set_label(l, k, std::move(u));
  return out;
}

DerivationGraph apply_step(const DerivationGraph& g, const ReductionStep& step) {
  struct {
    const DerivationGraph& g;
    DerivationGraph operator()(const ArStep& s) const { return apply_ar(g, s.i, s.j); }
    DerivationGraph operator()(const TrStep& s) const { return apply_tr(g, s.i, s.j, s.k, s.t); }
    DerivationGraph operator()(const CrStep& s) const { return apply_cr(g, s.i, s.j, s.k, s.l); }
  } visitor{g};
  return std::visit(visitor, step);
}

bool is_cycle_free(const DerivationGraph& g) {
  std::vector<std::size_t> parent(g.size());
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (const auto& [arc, _] : g.arcs()) {
    auto a = find(arc.first), b = find(arc.second);
    if (a == b) return false;
    parent[a] = b;
  }
  return true;
}

bool is_reduction_complete(const DerivationGraph& g) {
  std::vector<std::size_t> in(g.size());
  for (const auto& [arc, _] : g.arcs())
    if (++in[arc.second] > 1) return false;
  return is_cycle_free(g);
}

bool ReductionTrace::replay_matches() const {
  if (graphs.size() != steps.size()) return false;
  DerivationGraph g = initial;
  for (std::size_t s = 0; s < steps.size(); ++s) {
    try {
      g = apply_step(g, steps[s]);
    } catch (const SideConditionViolated&) {
      return false;
    }
    if (!(g == graphs[s])) return false;
  }
  return true;
}

std::vector<std::string> ReductionTrace::step_strings() const {
  std::vector<std::string> out;
  for (const auto& s : steps) out.push_back(to_string(s));
  return out;
}

ReductionTrace make_trace(const DerivationGraph& g, const std::vector<ReductionStep>& steps) {
  ReductionTrace trace{g, {}, {}};
  DerivationGraph cur = g;
  for (const auto& s : steps) {
    cur = apply_step(cur, s);
    trace.steps.push_back(s);
    trace.graphs.push_back(cur);
  }
  return trace;
}

namespace {

std::optional<ReductionTrace> reduce_cr_only(const DerivationGraph& g) {
  ReductionTrace trace{g, {}, {}};
  DerivationGraph cur = g;
  while (true) {
    std::optional<std::size_t> k;
    for (std::size_t n = 0; n < cur.size() && !k; ++n)
      if (cur.parents(n).size() >= 2) k = n;
    if (!k) break;
    auto ps = cur.parents(*k);
    auto i = ps[0], j = ps[1];
    TermSet u = cur.label(i, *k);
    u.insert(cur.label(j, *k).begin(), cur.label(j, *k).end());
    std::optional<std::size_t> l;
    for (std::size_t m = 0; m < *k && !l; ++m)
      if (std::includes(cur.terms(m).begin(), cur.terms(m).end(), u.begin(), u.end())) l = m;
    if (!l) return std::nullopt;
    ReductionStep step = CrStep{i, j, *k, *l};
    cur = apply_step(cur, step);
    trace.steps.push_back(step);
    trace.graphs.push_back(cur);
  }
  if (!is_reduction_complete(cur)) return std::nullopt;
  return trace;
}

std::string encode(const DerivationGraph& g) {
  std::string key;
  for (const auto& [arc, label] : g.arcs()) {
    key += std::to_string(arc.first) + ">" + std::to_string(arc.second) + ":";
    for (const auto& t : label) key += t.str() + ",";
    key += ";";
  }
  return key;
}

std::vector<ReductionStep> applicable_steps(const DerivationGraph& g) {
  std::vector<ReductionStep> out;
  for (const auto& [arc, label] : g.arcs())
    if (label.empty()) out.push_back(ArStep{arc.first, arc.second});
  for (std::size_t k = 0; k < g.size(); ++k) {
    auto ps = g.parents(k);
    if (ps.size() < 2) continue;
    for (auto i : ps) {
      for (auto j : ps) {
        if (i == j) continue;
        for (const auto& t : g.label(j, k))
          if (g.label(i, k).contains(t)) out.push_back(TrStep{i, j, k, t});
      }
    }
    for (std::size_t a = 0; a < ps.size(); ++a) {
      for (std::size_t b = a + 1; b < ps.size(); ++b) {
        TermSet u = g.label(ps[a], k);
        u.insert(g.label(ps[b], k).begin(), g.label(ps[b], k).end());
        for (std::size_t l = 0; l < k; ++l)
          if (std::includes(g.terms(l).begin(), g.terms(l).end(), u.begin(), u.end()))
            out.push_back(CrStep{ps[a], ps[b], k, l});
      }
    }
  }
  return out;
}

std::optional<ReductionTrace> reduce_full(const DerivationGraph& g, const ReduceOptions& options) {
  struct State {
    DerivationGraph graph;
    std::size_t parent;
    std::optional<ReductionStep> step;
  };
  std::vector<State> states{{g, 0, std::nullopt}};
  std::unordered_set<std::string> visited{encode(g)};
  std::deque<std::size_t> queue{0};
  while (!queue.empty()) {
    auto s = queue.front();
    queue.pop_front();
    if (is_reduction_complete(states[s].graph)) {
      std::vector<ReductionStep> steps;
      for (auto v = s; v != 0; v = states[v].parent) steps.push_back(*states[v].step);
      std::reverse(steps.begin(), steps.end());
      return make_trace(g, steps);
    }
    for (const auto& step : applicable_steps(states[s].graph)) {
      auto next = apply_step(states[s].graph, step);
      if (!visited.insert(encode(next)).second) continue;
      if (states.size() >= options.max_states)
        throw ResourceLimit("reduction search exceeded " + std::to_string(options.max_states) + " states");
      states.push_back({std::move(next), s, step});
      queue.push_back(states.size() - 1);
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<ReductionTrace> reduce(const DerivationGraph& g, Strategy strategy, const ReduceOptions& options) {
  return strategy == Strategy::CrOnly ? reduce_cr_only(g) : reduce_full(g, options);
}

PrefixReport check_prefix_invariants(const ReductionTrace& trace) {
  PrefixReport report;
  auto check = [&](const DerivationGraph& g, const std::string& where) {
    if (!g.same_nodes(trace.initial))
      report.violations.push_back(where + ": node set changed");
    for (const auto& v : check_label_invariants(g)) report.violations.push_back(where + ": " + v);
    for (const auto& [arc, _] : g.arcs())
      if (arc.first >= arc.second) report.violations.push_back(where + ": backward arc");
  };
  check(trace.initial, "prefix 0");
  for (std::size_t s = 0; s < trace.graphs.size(); ++s) check(trace.graphs[s], "prefix " + std::to_string(s + 1));
  if (!trace.replay_matches()) report.violations.push_back("trace does not replay");
  const auto& last = trace.final_graph();
  if (is_reduction_complete(last)) {
    for (std::size_t n = 1; n < last.size(); ++n) {
      if (last.parents(n).empty()) continue;
      auto fr = node_frontier(last, n);
      bool found = false;
      for (std::size_t m = 0; m < n && !found; ++m)
        found = std::includes(last.terms(m).begin(), last.terms(m).end(), fr.begin(), fr.end());
      if (!found) report.violations.push_back("no earlier node covers the frontier of X" + std::to_string(n));
    }
  }
  return report;
}

}  // namespace cg
