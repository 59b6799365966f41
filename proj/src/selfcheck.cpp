#include "chasegraph/selfcheck.hpp"

#include "chasegraph/errors.hpp"
#include "chasegraph/rule_analysis.hpp"
#include "chasegraph/tree_decomposition.hpp"

namespace cg {

namespace {

std::size_t pick(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

}  // namespace

KnowledgeBase random_kb(std::mt19937_64& rng, const RandomKbOptions& options) {
  std::vector<Predicate> preds;
  for (std::size_t p = 0; p < options.predicates; ++p)
    preds.emplace_back("p" + std::to_string(p), pick(rng, 1, options.max_arity));
  std::vector<Term> constants;
  for (std::size_t c = 0; c < options.constants; ++c) constants.push_back(Term::constant(std::string(1, 'a' + c)));
  const std::vector<Term> body_pool{Term::variable("X"), Term::variable("Y"), Term::variable("Z")};
  const std::vector<Term> ex_pool{Term::variable("U"), Term::variable("V")};

  RuleSet rules;
  auto nrules = pick(rng, 1, options.max_rules);
  for (std::size_t r = 0; r < nrules; ++r) {
    std::vector<Atom> body;
    for (std::size_t b = pick(rng, 1, options.max_body); b > 0; --b) {
      const auto& p = preds[pick(rng, 0, preds.size() - 1)];
      std::vector<Term> args;
      for (std::size_t k = 0; k < p.arity(); ++k)
        args.push_back(pick(rng, 0, 9) == 0 ? constants[pick(rng, 0, constants.size() - 1)]
                                            : body_pool[pick(rng, 0, body_pool.size() - 1)]);
      body.emplace_back(p, std::move(args));
    }
    auto vars = variables_of(body);
    std::vector<Term> head_pool(vars.begin(), vars.end());
    head_pool.insert(head_pool.end(), ex_pool.begin(), ex_pool.end());
    std::vector<Atom> head;
    for (std::size_t h = pick(rng, 1, options.max_head); h > 0; --h) {
      const auto& p = preds[pick(rng, 0, preds.size() - 1)];
      std::vector<Term> args;
      for (std::size_t k = 0; k < p.arity(); ++k)
        args.push_back(pick(rng, 0, 9) == 0 ? constants[pick(rng, 0, constants.size() - 1)]
                                            : head_pool[pick(rng, 0, head_pool.size() - 1)]);
      head.emplace_back(p, std::move(args));
    }
    rules.emplace_back("r" + std::to_string(r + 1), std::move(body), std::move(head));
  }

  Instance db;
  for (std::size_t d = pick(rng, 1, options.max_db); d > 0; --d) {
    const auto& p = preds[pick(rng, 0, preds.size() - 1)];
    std::vector<Term> args;
    for (std::size_t k = 0; k < p.arity(); ++k) args.push_back(constants[pick(rng, 0, constants.size() - 1)]);
    db.insert(Atom(p, std::move(args)));
  }
  return KnowledgeBase(std::move(db), std::move(rules));
}

void CheckStats::merge(const CheckStats& other) {
  derivations += other.derivations;
  greedy += other.greedy;
  traces += other.traces;
  graphs += other.graphs;
  decompositions += other.decompositions;
  violations.insert(violations.end(), other.violations.begin(), other.violations.end());
}

void check_trace(const ReductionTrace& trace, const Derivation& d, const KnowledgeBase& kb, CheckStats& stats,
                 const std::string& where) {
  ++stats.traces;
  auto fail = [&](const std::string& what) { stats.violations.push_back(where + ": " + what); };
  for (const auto& v : check_prefix_invariants(trace).violations) fail(v);
  for (const auto& g : trace.graphs) {
    ++stats.graphs;
    for (const auto& v : check_decomposition_properties(g, d.final_instance(), kb).violations) fail(v);
    for (const auto& v : check_generative_paths(g)) fail(v);
  }
  const auto& last = trace.final_graph();
  if (!is_cycle_free(last)) return;
  auto td = extract_tree_decomposition(last);
  ++stats.decompositions;
  if (!validate_tree_decomposition(td, d.final_instance())) fail("tree decomposition does not validate");
  if (td.max_bag() > width_bound(kb)) fail("bag larger than the width bound");
}

void check_derivation(const Derivation& d, const KnowledgeBase& kb, CheckStats& stats) {
  ++stats.derivations;
  auto where = "derivation " + std::to_string(stats.derivations);
  auto fail = [&](const std::string& what) { stats.violations.push_back(where + ": " + what); };
  for (const auto& p : validate_derivation(d, kb.rules())) fail(p);

  auto report = is_greedy(d, kb);
  if (!verify_greedy_report(report, d, kb.rules())) fail("greediness report does not re-verify");
  stats.greedy += report.greedy;

  auto g = build_derivation_graph(d, kb);
  ++stats.graphs;
  for (const auto& v : check_decomposition_properties(g, d.final_instance(), kb).violations) fail(v);
  for (const auto& v : check_generative_paths(g)) fail(v);
  for (const auto& v : check_prefix_invariants(make_trace(g, {})).violations) fail(v);

  auto full = reduce(g, Strategy::Full);
  auto cr = reduce(g, Strategy::CrOnly);
  if (report.greedy != full.has_value() || report.greedy != cr.has_value())
    fail(std::string("greedy=") + (report.greedy ? "yes" : "no") + " full=" + (full ? "yes" : "no") +
         " cr-only=" + (cr ? "yes" : "no") + "\n" + to_string(d, kb.rules()));
  if (full) check_trace(*full, d, kb, stats, where + " full");
  if (cr) check_trace(*cr, d, kb, stats, where + " cr-only");
}

SelfcheckReport run_selfcheck(const SelfcheckOptions& options) {
  SelfcheckReport report;
  std::mt19937_64 rng(options.seed);
  while (report.kbs < options.count) {
    auto kb = random_kb(rng);
    EnumerationOptions eo;
    eo.max_len = options.max_len;
    eo.max_derivations = options.max_derivations;
    std::vector<Derivation> all;
    try {
      all = enumerate_derivations(kb.database(), kb.rules(), eo);
    } catch (const ResourceLimit&) {
      ++report.discarded;
      continue;
    }
    CheckStats stats;
    for (const auto& d : all) check_derivation(d, kb, stats);
    report.stats.merge(stats);
    ++report.kbs;
  }
  return report;
}

}  // namespace cg
