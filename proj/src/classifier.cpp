#include "chasegraph/classifier.hpp"

#include <map>
#include <unordered_map>

#include "chasegraph/derivation_graph.hpp"
#include "chasegraph/errors.hpp"
#include "chasegraph/homomorphism.hpp"
#include "chasegraph/rule_analysis.hpp"

namespace cg {

std::string to_string(RuleClass c) {
  switch (c) {
    case RuleClass::Gbts: return "gbts";
    case RuleClass::Wgbts: return "wgbts";
    case RuleClass::Cdgs: return "cdgs";
    case RuleClass::Wcdgs: return "wcdgs";
  }
  return "?";
}

std::string to_string(Outcome o) {
  switch (o) {
    case Outcome::Holds: return "holds";
    case Outcome::Refuted: return "refuted";
    case Outcome::Unknown: return "unknown";
  }
  return "?";
}

RuleClass parse_rule_class(const std::string& name) {
  for (auto c : {RuleClass::Gbts, RuleClass::Wgbts, RuleClass::Cdgs, RuleClass::Wcdgs})
    if (to_string(c) == name) return c;
  throw Error("unknown class " + name);
}

namespace {

constexpr std::size_t idx(RuleClass c) { return static_cast<std::size_t>(c); }

struct Group {
  Derivation shortest;
  std::optional<Derivation> greedy;
  std::optional<Derivation> reducible;
  std::optional<ReductionTrace> trace;
};

std::array<ClassificationVerdict, 4> run(const KnowledgeBase& kb, const ClassifyOptions& options,
                                         const std::array<bool, 4>& wanted) {
  std::array<ClassificationVerdict, 4> v;
  for (auto c : {RuleClass::Gbts, RuleClass::Wgbts, RuleClass::Cdgs, RuleClass::Wcdgs}) {
    v[idx(c)].rule_class = c;
    v[idx(c)].depth = options.depth;
  }
  const bool need_greedy = wanted[idx(RuleClass::Gbts)] || wanted[idx(RuleClass::Wgbts)];
  const bool need_reduce = wanted[idx(RuleClass::Cdgs)] || wanted[idx(RuleClass::Wcdgs)];
  const bool need_groups = wanted[idx(RuleClass::Wgbts)] || wanted[idx(RuleClass::Wcdgs)];

  std::vector<Group> groups;
  std::unordered_map<std::size_t, std::vector<std::size_t>> buckets;
  std::optional<std::string> reduce_failure;
  std::size_t count = 0;

  EnumerationOptions eo;
  eo.max_len = options.depth;
  eo.dedup = options.dedup;
  eo.max_derivations = options.max_derivations;
  eo.max_atoms = options.max_atoms;

  auto visit = [&](const Derivation& d) {
    ++count;
    bool greedy = need_greedy && is_greedy(d, kb.rules()).greedy;
    std::optional<ReductionTrace> trace;
    if (need_reduce && !reduce_failure) {
      try {
        trace = reduce(build_derivation_graph(d, kb), Strategy::Full, options.reduce);
      } catch (const ResourceLimit& e) {
        reduce_failure = e.what();
      }
    }
    auto& gb = v[idx(RuleClass::Gbts)];
    if (need_greedy && !greedy && !gb.counterexample) gb.counterexample = d;
    auto& cd = v[idx(RuleClass::Cdgs)];
    if (need_reduce && !reduce_failure && !trace && !cd.counterexample) cd.counterexample = d;

    if (need_groups) {
      const auto& inst = d.final_instance();
      auto& bucket = buckets[null_invariant_hash(inst)];
      Group* group = nullptr;
      for (auto g : bucket)
        if (isomorphic_mod_nulls(groups[g].shortest.final_instance(), inst)) group = &groups[g];
      if (!group) {
        bucket.push_back(groups.size());
        groups.push_back({d, std::nullopt, std::nullopt, std::nullopt});
        group = &groups.back();
      } else if (d.length() < group->shortest.length()) {
        group->shortest = d;
      }
      if (greedy && (!group->greedy || d.length() < group->greedy->length())) group->greedy = d;
      if (trace && (!group->reducible || d.length() < group->reducible->length())) {
        group->reducible = d;
        group->trace = trace;
      }
    }
    if (options.stop_early && !need_groups) {
      bool gb_done = !wanted[idx(RuleClass::Gbts)] || gb.counterexample;
      bool cd_done = !wanted[idx(RuleClass::Cdgs)] || cd.counterexample || reduce_failure;
      if (gb_done && cd_done) return false;
    }
    return true;
  };

  try {
    for_each_derivation(kb.database(), kb.rules(), eo, visit);
  } catch (const ResourceLimit& e) {
    for (auto& verdict : v) {
      verdict.result = Outcome::Unknown;
      verdict.reason = e.what();
      verdict.derivations = count;
    }
    // a refutation found before the cap still stands
    for (auto c : {RuleClass::Gbts, RuleClass::Cdgs})
      if (v[idx(c)].counterexample) v[idx(c)].result = Outcome::Refuted;
    return v;
  }

  for (auto& verdict : v) {
    verdict.derivations = count;
    verdict.instances = groups.size();
  }
  auto& gb = v[idx(RuleClass::Gbts)];
  gb.result = gb.counterexample ? Outcome::Refuted : Outcome::Holds;
  auto& cd = v[idx(RuleClass::Cdgs)];
  if (cd.counterexample) {
    cd.result = Outcome::Refuted;
  } else if (reduce_failure) {
    cd.result = Outcome::Unknown;
    cd.reason = *reduce_failure;
  } else {
    cd.result = Outcome::Holds;
  }

  auto weak = [&](RuleClass c, bool reducible) {
    auto& verdict = v[idx(c)];
    if (reducible && reduce_failure) {
      verdict.result = Outcome::Unknown;
      verdict.reason = *reduce_failure;
      return;
    }
    verdict.result = Outcome::Holds;
    for (const auto& g : groups) {
      auto bound = options.witness_bound_depth ? options.depth : g.shortest.length();
      const auto& best = reducible ? g.reducible : g.greedy;
      if (!best || best->length() > bound) {
        if (!verdict.counterexample) verdict.counterexample = g.shortest;
        verdict.result = Outcome::Refuted;
        verdict.witnesses.clear();
        if (options.stop_early) return;
        continue;
      }
      if (verdict.result == Outcome::Holds)
        verdict.witnesses.push_back({g.shortest, *best, reducible ? g.trace : std::nullopt});
    }
  };
  weak(RuleClass::Wgbts, false);
  weak(RuleClass::Wcdgs, true);
  return v;
}

bool reducible(const Derivation& d, const KnowledgeBase& kb, const ReduceOptions& options) {
  return reduce(build_derivation_graph(d, kb), Strategy::Full, options).has_value();
}

}  // namespace

ClassificationVerdict classify(const KnowledgeBase& kb, RuleClass rule_class, const ClassifyOptions& options) {
  std::array<bool, 4> wanted{};
  wanted[idx(rule_class)] = true;
  return run(kb, options, wanted)[idx(rule_class)];
}

std::array<ClassificationVerdict, 4> classify_all(const KnowledgeBase& kb, const ClassifyOptions& options) {
  auto opts = options;
  opts.stop_early = false;
  return run(kb, opts, {true, true, true, true});
}

bool verify_certificate(const ClassificationVerdict& verdict, const KnowledgeBase& kb, const ClassifyOptions& options) {
  const auto& rules = kb.rules();
  auto valid = [&](const Derivation& d) {
    return d.initial == kb.database() && d.length() <= verdict.depth && validate_derivation(d, rules).empty();
  };
  switch (verdict.result) {
    case Outcome::Unknown:
      return true;
    case Outcome::Refuted: {
      if (!verdict.counterexample || !valid(*verdict.counterexample)) return false;
      const auto& d = *verdict.counterexample;
      switch (verdict.rule_class) {
        case RuleClass::Gbts:
          return !is_greedy(d, rules).greedy;
        case RuleClass::Cdgs:
          return !reducible(d, kb, options.reduce);
        case RuleClass::Wgbts: {
          auto bound = options.witness_bound_depth ? verdict.depth : d.length();
          return !find_greedy_rederivation(kb, d.final_instance(), bound).has_value();
        }
        case RuleClass::Wcdgs: {
          auto bound = options.witness_bound_depth ? verdict.depth : d.length();
          const auto& target = d.final_instance();
          EnumerationOptions eo;
          eo.max_len = bound;
          eo.prune = [&](const Derivation& p) { return p.final_instance().size() > target.size(); };
          bool found = false;
          for_each_derivation(kb.database(), rules, eo, [&](const Derivation& p) {
            if (isomorphic_mod_nulls(p.final_instance(), target) && reducible(p, kb, options.reduce)) found = true;
            return !found;
          });
          return !found;
        }
      }
      return false;
    }
    case Outcome::Holds: {
      if (verdict.rule_class == RuleClass::Gbts || verdict.rule_class == RuleClass::Cdgs) {
        // exhaustive claim: re-check every derivation directly
        EnumerationOptions eo;
        eo.max_len = verdict.depth;
        bool ok = true;
        for_each_derivation(kb.database(), rules, eo, [&](const Derivation& d) {
          ok = verdict.rule_class == RuleClass::Gbts ? is_greedy(d, rules).greedy : reducible(d, kb, options.reduce);
          return ok;
        });
        return ok;
      }
      if (verdict.witnesses.size() != verdict.instances) return false;
      for (const auto& w : verdict.witnesses) {
        if (!valid(w.representative) || !valid(w.witness)) return false;
        if (!isomorphic_mod_nulls(w.representative.final_instance(), w.witness.final_instance())) return false;
        auto bound = options.witness_bound_depth ? verdict.depth : w.representative.length();
        if (w.witness.length() > bound) return false;
        if (verdict.rule_class == RuleClass::Wgbts) {
          auto report = is_greedy(w.witness, rules);
          if (!report.greedy || !verify_greedy_report(report, w.witness, rules)) return false;
        } else {
          if (!w.trace || !w.trace->replay_matches() || !is_reduction_complete(w.trace->final_graph())) return false;
          if (!(w.trace->initial == build_derivation_graph(w.witness, kb))) return false;
        }
      }
      return true;
    }
  }
  return false;
}

SubsumptionReport subsumption_check(const KnowledgeBase& kb, std::size_t depth) {
  ClassifyOptions options;
  options.depth = depth;
  SubsumptionReport report{classify_all(kb, options), {}};
  const auto& v = report.verdicts;
  auto out = [&](RuleClass c) { return v[idx(c)].result; };
  auto known = [&](RuleClass a, RuleClass b) { return out(a) != Outcome::Unknown && out(b) != Outcome::Unknown; };
  if (out(RuleClass::Gbts) == Outcome::Holds && out(RuleClass::Wgbts) == Outcome::Refuted)
    report.violations.push_back("gbts holds but wgbts is refuted");
  if (out(RuleClass::Cdgs) == Outcome::Holds && out(RuleClass::Wcdgs) == Outcome::Refuted)
    report.violations.push_back("cdgs holds but wcdgs is refuted");
  if (known(RuleClass::Gbts, RuleClass::Cdgs) && out(RuleClass::Gbts) != out(RuleClass::Cdgs))
    report.violations.push_back("gbts and cdgs verdicts differ");
  if (known(RuleClass::Wgbts, RuleClass::Wcdgs) && out(RuleClass::Wgbts) != out(RuleClass::Wcdgs))
    report.violations.push_back("wgbts and wcdgs verdicts differ");
  return report;
}

EntailmentResult entails(const KnowledgeBase& kb, const BooleanQuery& q, std::size_t depth,
                         const ChaseOptions& options) {
  Instance current = kb.database();
  for (std::size_t k = 0;; ++k) {
    if (has_homomorphism(q.atoms(), current)) return {true, k};
    if (k == depth) return {};
    current = one_step(current, kb.rules());
    if (current.size() > options.max_atoms)
      throw ResourceLimit("chase exceeded " + std::to_string(options.max_atoms) + " atoms");
  }
}

}  // namespace cg
