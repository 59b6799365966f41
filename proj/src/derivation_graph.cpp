#include "chasegraph/derivation_graph.hpp"

#include <algorithm>
#include <queue>

#include "chasegraph/errors.hpp"
#include "chasegraph/tree_decomposition.hpp"

namespace cg {

DerivationGraph::DerivationGraph(std::vector<GraphNode> nodes, TermSet constants)
    : nodes_(std::make_shared<const std::vector<GraphNode>>(std::move(nodes))), constants_(std::move(constants)) {}

const TermSet& DerivationGraph::label(std::size_t i, std::size_t j) const {
  auto it = arcs_.find({i, j});
  if (it == arcs_.end())
    throw SideConditionViolated("no arc (X" + std::to_string(i) + ",X" + std::to_string(j) + ")");
  return it->second;
}

std::vector<std::size_t> DerivationGraph::parents(std::size_t k) const {
  std::vector<std::size_t> out;
  for (const auto& [arc, _] : arcs_)
    if (arc.second == k) out.push_back(arc.first);
  return out;
}

std::vector<std::size_t> DerivationGraph::children(std::size_t i) const {
  std::vector<std::size_t> out;
  for (auto it = arcs_.lower_bound({i, 0}); it != arcs_.end() && it->first.first == i; ++it)
    out.push_back(it->first.second);
  return out;
}

void DerivationGraph::add_arc(std::size_t i, std::size_t j, const TermSet& label) {
  if (i >= j || j >= size()) throw Error("arcs must point forward between existing nodes");
  auto& l = arcs_[{i, j}];
  l.insert(label.begin(), label.end());
}

void DerivationGraph::set_label(std::size_t i, std::size_t j, TermSet label) {
  if (i >= j || j >= size()) throw Error("arcs must point forward between existing nodes");
  arcs_[{i, j}] = std::move(label);
}

void DerivationGraph::remove_arc(std::size_t i, std::size_t j) { arcs_.erase({i, j}); }

Instance DerivationGraph::instance() const {
  Instance out;
  for (std::size_t i = 0; i < size(); ++i) out.insert(atoms(i));
  return out;
}

bool DerivationGraph::same_nodes(const DerivationGraph& other) const { return nodes_ == other.nodes_; }

bool operator==(const DerivationGraph& a, const DerivationGraph& b) {
  if (a.size() != b.size() || a.arcs_ != b.arcs_ || a.constants_ != b.constants_) return false;
  if (a.nodes_ == b.nodes_) return true;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a.atoms(i) != b.atoms(i) || a.terms(i) != b.terms(i)) return false;
  return true;
}

namespace {

TermSet without(TermSet s, const TermSet& drop) {
  for (const auto& t : drop) s.erase(t);
  return s;
}

}  // namespace

DerivationGraph build_derivation_graph(const Derivation& d, const RuleSet& rules, const TermSet& constants,
                                       NodeTerms mode) {
  std::vector<GraphNode> nodes;
  GraphNode x0;
  x0.atoms = d.initial;
  x0.terms = d.initial.terms();
  x0.terms.insert(constants.begin(), constants.end());
  nodes.push_back(std::move(x0));
  for (std::size_t i = 1; i <= d.length(); ++i) {
    const auto& t = d.steps[i - 1].trigger;
    const auto& rule = rules.at(t.rule);
    GraphNode x;
    x.atoms = d.instance(i).difference(d.instance(i - 1));
    auto head = d.head_image(i, rules);
    x.terms = mode == NodeTerms::HeadImage ? terms_of(head) : x.atoms.terms();
    x.terms.insert(constants.begin(), constants.end());
    x.frontier_image = without(t.hom.image(rule.frontier()), constants);
    x.provenance = t;
    x.rule_id = rule.id();
    nodes.push_back(std::move(x));
  }

  DerivationGraph g(nodes, constants);
  // which node introduced each atom
  std::map<Atom, std::size_t> origin;
  for (std::size_t i = 0; i < nodes.size(); ++i)
    for (const auto& a : nodes[i].atoms) origin.emplace(a, i);

  for (std::size_t j = 1; j <= d.length(); ++j) {
    const auto& t = d.steps[j - 1].trigger;
    const auto& rule = rules.at(t.rule);
    for (const auto& atom : frontier_atoms(rule, RuleSide::Body)) {
      auto it = origin.find(t.hom.apply(atom));
      if (it == origin.end() || it->second >= j) continue;
      TermSet label;
      for (const auto& v : atom.args())
        if (rule.frontier().contains(v)) label.insert(t.hom.apply(v));
      g.add_arc(it->second, j, without(std::move(label), constants));
    }
  }
  return g;
}

DerivationGraph build_derivation_graph(const Derivation& d, const KnowledgeBase& kb, NodeTerms mode) {
  return build_derivation_graph(d, kb.rules(), kb.constants(), mode);
}

TermSet node_frontier(const DerivationGraph& g, std::size_t node) {
  if (node >= g.size()) throw Error("no node X" + std::to_string(node));
  if (g.parents(node).empty()) return {};
  return g.node(node).frontier_image;
}

std::size_t x_generative_node(const DerivationGraph& g, const Term& x) {
  if (!g.constants().contains(x))
    for (std::size_t n = 0; n < g.size(); ++n)
      if (g.terms(n).contains(x)) return n;
  throw UnknownTerm("term " + x.str() + " occurs in no node outside C");
}

namespace {

bool connected_within(const DerivationGraph& g, const std::vector<std::size_t>& members) {
  if (members.size() <= 1) return true;
  std::vector<bool> in(g.size()), seen(g.size());
  for (auto m : members) in[m] = true;
  std::vector<std::size_t> stack{members.front()};
  seen[members.front()] = true;
  std::size_t reached = 1;
  while (!stack.empty()) {
    auto v = stack.back();
    stack.pop_back();
    auto next = g.children(v);
    auto up = g.parents(v);
    next.insert(next.end(), up.begin(), up.end());
    for (auto w : next) {
      if (in[w] && !seen[w]) {
        seen[w] = true;
        ++reached;
        stack.push_back(w);
      }
    }
  }
  return reached == members.size();
}

TermSet non_constant_terms(const DerivationGraph& g) {
  TermSet out;
  for (std::size_t n = 0; n < g.size(); ++n)
    for (const auto& t : g.terms(n))
      if (!g.constants().contains(t)) out.insert(t);
  return out;
}

}  // namespace

DecompositionReport check_decomposition_properties(const DerivationGraph& g, const Instance& final_instance,
                                                   const KnowledgeBase& kb) {
  DecompositionReport r;
  TermSet all;
  for (std::size_t n = 0; n < g.size(); ++n) all.insert(g.terms(n).begin(), g.terms(n).end());
  auto inst_terms = final_instance.terms();
  for (const auto& t : inst_terms) {
    if (!all.contains(t)) {
      r.term_cover = false;
      r.violations.push_back("term " + t.str() + " of the instance is in no node");
    }
  }
  for (const auto& t : all) {
    if (!inst_terms.contains(t) && !g.constants().contains(t)) {
      r.term_cover = false;
      r.violations.push_back("node term " + t.str() + " is neither in the instance nor in C");
    }
  }
  for (const auto& a : final_instance) {
    auto ts = a.terms();
    bool found = false;
    for (std::size_t n = 0; n < g.size() && !found; ++n)
      found = std::includes(g.terms(n).begin(), g.terms(n).end(), ts.begin(), ts.end());
    if (!found) {
      r.atom_cover = false;
      r.violations.push_back("atom " + a.str() + " fits in no node");
    }
  }
  for (const auto& x : non_constant_terms(g)) {
    std::vector<std::size_t> members;
    for (std::size_t n = 0; n < g.size(); ++n)
      if (g.terms(n).contains(x)) members.push_back(n);
    if (!connected_within(g, members)) {
      r.connected = false;
      r.violations.push_back("nodes containing " + x.str() + " are not connected");
    }
  }
  r.bound = width_bound(kb);
  for (std::size_t n = 0; n < g.size(); ++n) {
    r.max_node_terms = std::max(r.max_node_terms, g.terms(n).size());
    if (g.terms(n).size() > r.bound) {
      r.bounded = false;
      r.violations.push_back("X" + std::to_string(n) + " has " + std::to_string(g.terms(n).size()) +
                             " terms, bound " + std::to_string(r.bound));
    }
  }
  return r;
}

std::vector<std::string> check_generative_paths(const DerivationGraph& g) {
  std::vector<std::string> out;
  for (const auto& x : non_constant_terms(g)) {
    auto gen = x_generative_node(g, x);
    std::vector<bool> seen(g.size());
    std::queue<std::size_t> q;
    q.push(gen);
    seen[gen] = true;
    while (!q.empty()) {
      auto v = q.front();
      q.pop();
      for (auto w : g.children(v)) {
        if (!seen[w] && g.terms(w).contains(x)) {
          seen[w] = true;
          q.push(w);
        }
      }
    }
    for (std::size_t n = 0; n < g.size(); ++n)
      if (g.terms(n).contains(x) && !seen[n])
        out.push_back("X" + std::to_string(n) + " holds " + x.str() + " but is unreachable from X" +
                      std::to_string(gen));
  }
  return out;
}

std::vector<std::string> check_label_invariants(const DerivationGraph& g) {
  std::vector<std::string> out;
  for (const auto& [arc, label] : g.arcs()) {
    const auto& src = g.terms(arc.first);
    if (!std::includes(src.begin(), src.end(), label.begin(), label.end()))
      out.push_back("label of (X" + std::to_string(arc.first) + ",X" + std::to_string(arc.second) +
                    ") is not within the source terms");
  }
  for (std::size_t k = 1; k < g.size(); ++k) {
    auto ps = g.parents(k);
    if (ps.empty()) continue;
    TermSet incoming;
    for (auto p : ps) incoming.merge(TermSet(g.label(p, k)));
    if (incoming != node_frontier(g, k))
      out.push_back("frontier of X" + std::to_string(k) + " is " + to_string(node_frontier(g, k)) +
                    " but incoming labels give " + to_string(incoming));
  }
  return out;
}

std::string to_string(const DerivationGraph& g) {
  std::string out;
  for (std::size_t n = 0; n < g.size(); ++n) out += "X" + std::to_string(n) + ": " + g.atoms(n).str() + "\n";
  for (const auto& [arc, label] : g.arcs())
    out += "(X" + std::to_string(arc.first) + ",X" + std::to_string(arc.second) + ") " + to_string(label) + "\n";
  return out;
}

}  // namespace cg
