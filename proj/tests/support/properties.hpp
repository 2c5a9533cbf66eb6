#pragma once

// Property checks over randomly generated abduction problems, shared by the
// property tests and the acceptance runner.

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "isarepair/abduction.hpp"
#include "isarepair/error.hpp"
#include "model_checker.hpp"
#include "random_terminology.hpp"

namespace props {

using namespace isarepair;

struct Report {
  std::size_t cases = 0;
  std::size_t checked = 0;
  std::size_t failures = 0;
  std::size_t truncated = 0;
  std::size_t redrawn = 0;  // cases dropped for hitting a resource limit
  std::vector<std::string> notes;

  void fail(std::string msg) {
    ++failures;
    if (notes.size() < 10) notes.push_back(std::move(msg));
  }
};

struct Run {
  randgen::Case c;
  SingleResult basic;
  SingleResult optimized;
  CombineResult combined;
};

inline AbductionLimits property_limits() {
  AbductionLimits l;
  l.tableau.max_nodes = 20000;
  return l;
}

inline std::vector<Run> run_cases(std::uint32_t seed, int n, const randgen::Params& p, Report& report) {
  std::mt19937 rng(seed);
  const auto limits = property_limits();
  std::vector<Run> runs;
  while (static_cast<int>(runs.size()) < n) {
    auto c = randgen::next_case(rng, p, limits);
    try {
      Run r{c, repair_single(c.t, c.missing, limits), repair_single_optimized(c.t, c.missing, limits), {}};
      r.combined = combine(c.t, {c.missing}, {r.basic.actions}, limits);
      if (r.basic.stats.truncated || r.optimized.stats.truncated || r.combined.truncated) ++report.truncated;
      runs.push_back(std::move(r));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::ResourceLimit) throw;
      ++report.redrawn;
    }
  }
  report.cases = runs.size();
  return runs;
}

inline std::string where(const Run& r, const RepairingAction& a) {
  return r.c.missing.str() + " via " + a.str() + " in\n" + r.c.text;
}

// Every emitted action is acyclically addable, entails the relation, and
// leaves the terminology coherent.
inline void check_soundness(const Run& r, Report& report) {
  std::vector<RepairingAction> all = r.basic.actions;
  all.insert(all.end(), r.optimized.actions.begin(), r.optimized.actions.end());
  all.insert(all.end(), r.combined.actions.begin(), r.combined.actions.end());
  for (const auto& a : all) {
    ++report.checked;
    Terminology ext;
    try {
      ext = add_all_isa_acyclic(r.c.t, a.axioms());
    } catch (const Error& e) {
      report.fail("not addable (" + std::string(e.what()) + "): " + where(r, a));
      continue;
    }
    try {
      auto names = ext.original_names();
      auto again = Terminology::make(ext.roles(), ext.definitions(), {names.begin(), names.end()});
      if (!(again == ext)) report.fail("revalidation differs: " + where(r, a));
    } catch (const Error& e) {
      report.fail("revalidation failed: " + where(r, a));
    }
    if (!is_subsumed(ext, r.c.missing)) report.fail("not entailed: " + where(r, a));
    if (!check_coherence(ext).coherent) report.fail("incoherent: " + where(r, a));
  }
}

// No proper subset of a per-relation action entails the relation.
inline void check_minimality(const Run& r, Report& report) {
  std::vector<RepairingAction> all = r.basic.actions;
  all.insert(all.end(), r.optimized.actions.begin(), r.optimized.actions.end());
  for (const auto& a : all) {
    ++report.checked;
    const auto& ax = a.axioms();
    const std::uint32_t full = (1u << ax.size()) - 1;
    for (std::uint32_t mask = 0; mask < full; ++mask) {
      std::vector<IsaStatement> subset;
      for (std::size_t i = 0; i < ax.size(); ++i) {
        if (mask & (1u << i)) subset.push_back(ax[i]);
      }
      if (action_repairs(r.c.t, RepairingAction(subset), r.c.missing)) {
        report.fail("proper subset " + RepairingAction(subset).str() + " entails: " + where(r, a));
        break;
      }
    }
  }
}

// Entailment for the oracle. "Not entailed" answers are backed by a witness
// interpretation that is checked by the independent evaluator.
inline bool oracle_entails(const Terminology& ext, const IsaStatement& m, Report& report) {
  auto query = Concept::conj(Concept::atom(m.sub), Concept::negate(Concept::atom(m.super)));
  auto g = build_completion_graph(ext, query, ExpansionMode::Satisfiability, property_limits().tableau);
  if (!g.has_open_leaf()) return true;
  auto w = oracle::witness(g);
  if (w && (oracle::Evaluator(ext, *w).eval(query) & 1u) == 0) {
    report.fail("witness model does not refute " + m.str());
  }
  return false;
}

using AxiomSet = std::set<IsaStatement>;

// All ⊆-minimal axiom sets of size ≤ 2 over original-name pairs whose
// addition entails the relation. Sets that cannot be added acyclically are
// not decided; no subset of an emitted action is such a set.
inline std::set<AxiomSet> oracle_solutions(const Terminology& t, const IsaStatement& m, Report& report) {
  auto names = t.original_names();
  std::vector<IsaStatement> pairs;
  for (const auto& a : names) {
    for (const auto& b : names) {
      if (a != b) pairs.push_back({a, b});
    }
  }
  std::vector<AxiomSet> entailing;
  auto consider = [&](const AxiomSet& s) {
    Terminology ext;
    try {
      ext = add_all_isa_acyclic(t, std::vector<IsaStatement>(s.begin(), s.end()));
    } catch (const Error&) {
      return;
    }
    if (oracle_entails(ext, m, report)) entailing.push_back(s);
  };
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    consider({pairs[i]});
    for (std::size_t j = i + 1; j < pairs.size(); ++j) consider({pairs[i], pairs[j]});
  }
  std::set<AxiomSet> minimal;
  for (const auto& s : entailing) {
    bool has_smaller = false;
    for (const auto& o : entailing) {
      if (o.size() < s.size() && std::includes(s.begin(), s.end(), o.begin(), o.end())) has_smaller = true;
    }
    if (!has_smaller) minimal.insert(s);
  }
  return minimal;
}

inline void check_oracle(const Run& r, Report& report) {
  auto solutions = oracle_solutions(r.c.t, r.c.missing, report);
  std::vector<RepairingAction> all = r.basic.actions;
  all.insert(all.end(), r.optimized.actions.begin(), r.optimized.actions.end());
  for (const auto& a : all) {
    if (a.size() > 2) continue;
    ++report.checked;
    AxiomSet s(a.axioms().begin(), a.axioms().end());
    if (!solutions.contains(s)) report.fail("not in oracle set: " + where(r, a));
  }
}

inline randgen::Params suite_params() { return {8, 2, 3}; }
inline randgen::Params tiny_params() { return {6, 2, 3}; }

}  // namespace props
