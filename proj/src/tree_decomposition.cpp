#include "chasegraph/tree_decomposition.hpp"

#include <algorithm>
#include <numeric>

#include "chasegraph/errors.hpp"
#include "chasegraph/reduction.hpp"

namespace cg {

long TreeDecomposition::width() const { return static_cast<long>(max_bag()) - 1; }

std::size_t TreeDecomposition::max_bag() const {
  std::size_t m = 0;
  for (const auto& b : bags) m = std::max(m, b.size());
  return m;
}

TreeDecomposition extract_tree_decomposition(const DerivationGraph& g) {
  if (!is_cycle_free(g)) throw NotCycleFree("the graph has an undirected cycle");
  TreeDecomposition td;
  auto present = g.instance().terms();
  for (std::size_t n = 0; n < g.size(); ++n) {
    TermSet bag;
    for (const auto& t : g.terms(n))
      if (present.contains(t)) bag.insert(t);
    td.bags.push_back(std::move(bag));
  }
  std::vector<std::size_t> comp(g.size());
  std::iota(comp.begin(), comp.end(), std::size_t{0});
  auto find = [&](std::size_t v) {
    while (comp[v] != v) v = comp[v] = comp[comp[v]];
    return v;
  };
  for (const auto& [arc, _] : g.arcs()) {
    td.edges.emplace_back(arc.first, arc.second);
    auto a = find(arc.first), b = find(arc.second);
    comp[std::max(a, b)] = std::min(a, b);
  }
  // a component's root is its smallest node
  std::vector<std::size_t> roots;
  for (std::size_t n = 0; n < g.size(); ++n)
    if (find(n) == n) roots.push_back(n);
  for (std::size_t r = 1; r < roots.size(); ++r) td.edges.emplace_back(roots[r - 1], roots[r]);
  std::sort(td.edges.begin(), td.edges.end());
  td.root = 0;
  return td;
}

namespace {

bool connected(const std::vector<std::vector<std::size_t>>& adj, const std::vector<bool>& member) {
  auto start = std::find(member.begin(), member.end(), true);
  if (start == member.end()) return true;
  std::vector<bool> seen(member.size());
  std::vector<std::size_t> stack{static_cast<std::size_t>(start - member.begin())};
  seen[stack.back()] = true;
  while (!stack.empty()) {
    auto v = stack.back();
    stack.pop_back();
    for (auto w : adj[v])
      if (member[w] && !seen[w]) {
        seen[w] = true;
        stack.push_back(w);
      }
  }
  for (std::size_t v = 0; v < member.size(); ++v)
    if (member[v] && !seen[v]) return false;
  return true;
}

}  // namespace

bool validate_tree_decomposition(const TreeDecomposition& td, const Instance& instance) {
  const auto n = td.bags.size();
  if (n == 0) return instance.empty();
  if (td.edges.size() != n - 1) return false;
  std::vector<std::vector<std::size_t>> adj(n);
  for (const auto& [a, b] : td.edges) {
    if (a >= n || b >= n || a == b) return false;
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  if (!connected(adj, std::vector<bool>(n, true))) return false;
  TermSet covered;
  for (const auto& b : td.bags) covered.insert(b.begin(), b.end());
  for (const auto& t : instance.terms())
    if (!covered.contains(t)) return false;
  for (const auto& a : instance) {
    auto ts = a.terms();
    bool fits = std::any_of(td.bags.begin(), td.bags.end(),
                            [&](const TermSet& b) { return std::includes(b.begin(), b.end(), ts.begin(), ts.end()); });
    if (!fits) return false;
  }
  for (const auto& t : covered) {
    std::vector<bool> member(n);
    for (std::size_t v = 0; v < n; ++v) member[v] = td.bags[v].contains(t);
    if (!connected(adj, member)) return false;
  }
  return true;
}

std::size_t width_bound(const KnowledgeBase& kb) {
  std::size_t m = kb.database().terms().size();
  for (const auto& r : kb.rules()) m = std::max(m, terms_of(r.head()).size());
  return m + kb.constants().size();
}

}  // namespace cg
