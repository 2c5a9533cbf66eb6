#include "isarepair/abduction.hpp"

#include <algorithm>
#include <map>

#include "isarepair/error.hpp"

namespace isarepair {

RepairingAction::RepairingAction(std::vector<IsaStatement> axioms) : axioms_(std::move(axioms)) {
  std::sort(axioms_.begin(), axioms_.end());
  axioms_.erase(std::unique(axioms_.begin(), axioms_.end()), axioms_.end());
}

bool RepairingAction::contains(const IsaStatement& s) const {
  return std::binary_search(axioms_.begin(), axioms_.end(), s);
}

bool RepairingAction::is_subset_of(const RepairingAction& other) const {
  return std::includes(other.axioms_.begin(), other.axioms_.end(), axioms_.begin(), axioms_.end());
}

RepairingAction RepairingAction::united(const RepairingAction& other) const {
  std::vector<IsaStatement> all = axioms_;
  all.insert(all.end(), other.axioms_.begin(), other.axioms_.end());
  return RepairingAction(std::move(all));
}

std::string RepairingAction::str() const {
  std::string out = "{";
  for (std::size_t i = 0; i < axioms_.size(); ++i) {
    if (i) out += ", ";
    out += axioms_[i].str();
  }
  return out + "}";
}

std::strong_ordering operator<=>(const RepairingAction& a, const RepairingAction& b) {
  if (auto c = a.size() <=> b.size(); c != 0) return c;
  return std::lexicographical_compare_three_way(a.axioms_.begin(), a.axioms_.end(), b.axioms_.begin(),
                                                b.axioms_.end());
}

std::vector<RepairingAction> minimize(std::vector<RepairingAction> actions) {
  std::sort(actions.begin(), actions.end());
  actions.erase(std::unique(actions.begin(), actions.end()), actions.end());
  std::vector<RepairingAction> kept;
  for (auto& a : actions) {
    bool redundant = std::any_of(kept.begin(), kept.end(), [&](const RepairingAction& k) { return k.is_subset_of(a); });
    if (!redundant) kept.push_back(std::move(a));
  }
  return kept;
}

namespace {

std::uint32_t max_individual(const std::vector<AboxStatement>& statements) {
  std::uint32_t top = 0;
  for (const auto& s : statements) {
    top = std::max(top, s.individual.index);
    if (s.kind == AboxStatement::Kind::RoleAssertion) top = std::max(top, s.target.index);
  }
  return top;
}

// Pos/Neg over `statements` for individuals 0..last.
std::vector<PosNegSets> collect(const std::vector<AboxStatement>& statements, std::uint32_t last) {
  std::vector<PosNegSets> out(last + 1);
  for (std::uint32_t i = 0; i <= last; ++i) out[i].individual = Individual{i};
  for (const auto& s : statements) {
    if (s.kind != AboxStatement::Kind::ConceptAssertion) continue;
    auto& slot = out[s.individual.index];
    if (s.term.is_atom()) {
      slot.pos.insert(s.term.name());
    } else if (s.term.is_negated_atom()) {
      slot.neg.insert(s.term.inner().name());
    }
  }
  return out;
}

void add_pair(std::set<IsaStatement>& out, const ConceptName& p, const ConceptName& n) {
  if (p.is_bar() || n.is_bar() || p == n) return;
  out.insert(IsaStatement{p.text, n.text});
}

}  // namespace

std::vector<PosNegSets> pos_neg_sets(const std::vector<AboxStatement>& statements) {
  if (statements.empty()) return {};
  return collect(statements, max_individual(statements));
}

std::set<IsaStatement> closure_pairs(const std::vector<PosNegSets>& sets) {
  std::set<IsaStatement> out;
  for (const auto& s : sets) {
    for (const auto& p : s.pos) {
      for (const auto& n : s.neg) add_pair(out, p, n);
    }
  }
  return out;
}

std::set<IsaStatement> extract_closure_set(const CompletionGraph& g, std::size_t leaf) {
  const auto& n = g.node(leaf);
  if (!n.is_leaf() || n.status != NodeStatus::Open) {
    throw Error(ErrorCode::LeafNotOpen, "ABox " + n.label + " is not an open leaf");
  }
  return closure_pairs(pos_neg_sets(g.effective_abox(leaf)));
}

std::vector<LeafClosure> leaf_closures(const CompletionGraph& g) {
  std::vector<LeafClosure> out;
  for (std::size_t leaf : g.open_leaves()) {
    auto sets = pos_neg_sets(g.effective_abox(leaf));
    auto closure = closure_pairs(sets);
    out.push_back({leaf, g.node(leaf).label, std::move(sets), std::move(closure)});
  }
  return out;
}

std::vector<NodeClosure> node_closures(const CompletionGraph& g) {
  std::vector<NodeClosure> out(g.nodes().size());
  std::vector<std::vector<PosNegSets>> cumulative(g.nodes().size());
  std::vector<std::set<IsaStatement>> offered(g.nodes().size());  // R_A of all ancestors

  // Parents precede children in node order.
  for (std::size_t i = 0; i < g.nodes().size(); ++i) {
    const auto& node = g.node(i);
    std::uint32_t last = max_individual(g.effective_abox(i));
    auto local = collect(node.local, last);

    auto& cum = cumulative[i];
    cum = node.parent ? cumulative[*node.parent] : std::vector<PosNegSets>{};
    cum.resize(last + 1);
    for (std::uint32_t k = 0; k <= last; ++k) {
      cum[k].individual = Individual{k};
      // Names already present along the path are not new here.
      std::erase_if(local[k].pos, [&](const ConceptName& n) { return cum[k].pos.contains(n); });
      std::erase_if(local[k].neg, [&](const ConceptName& n) { return cum[k].neg.contains(n); });
      cum[k].pos.insert(local[k].pos.begin(), local[k].pos.end());
      cum[k].neg.insert(local[k].neg.begin(), local[k].neg.end());
    }

    std::set<IsaStatement> closure;
    if (node.status != NodeStatus::Closed) {
      for (std::uint32_t k = 0; k <= last; ++k) {
        for (const auto& p : local[k].pos) {
          for (const auto& n : cum[k].neg) add_pair(closure, p, n);
        }
        for (const auto& n : local[k].neg) {
          for (const auto& p : cum[k].pos) add_pair(closure, p, n);
        }
      }
    }
    if (node.parent) offered[i] = offered[*node.parent];
    std::erase_if(closure, [&](const IsaStatement& s) { return offered[i].contains(s); });
    offered[i].insert(closure.begin(), closure.end());

    out[i] = NodeClosure{i, node.label, node.status, std::move(local), std::move(closure)};
  }
  return out;
}

AdmissibilityVerdict check_admissible(const Terminology& t, const RepairingAction& action, const TableauLimits& limits) {
  Terminology extended;
  try {
    extended = add_all_isa_acyclic(t, action.axioms());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::WouldCreateCycle) return AdmissibilityVerdict::Cyclic;
    throw;
  }
  return check_coherence(extended, limits).coherent ? AdmissibilityVerdict::Admissible
                                                    : AdmissibilityVerdict::Incoherent;
}

bool action_repairs(const Terminology& t, const RepairingAction& action, const IsaStatement& s,
                    const TableauLimits& limits) {
  try {
    return is_subsumed(add_all_isa_acyclic(t, action.axioms()), s, limits);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::WouldCreateCycle) return false;
    throw;
  }
}

void check_preconditions(const Terminology& t, const std::vector<IsaStatement>& m, const AbductionLimits& limits) {
  if (m.empty()) throw Error(ErrorCode::PreconditionViolated, "no missing is-a relations given");
  for (const auto& s : m) {
    for (const auto& name : {s.sub, s.super}) {
      if (!t.knows(name)) throw Error(ErrorCode::UnknownName, "unknown concept " + name);
    }
    if (s.sub == s.super) throw Error(ErrorCode::SelfSubsumption, "self-subsumption " + s.str());
  }
  for (const auto& s : m) {
    if (is_subsumed(t, s, limits.tableau)) {
      throw Error(ErrorCode::AlreadyEntailed, s.str() + " is already entailed by the ontology");
    }
    for (const auto& name : {s.sub, s.super}) {
      if (!is_satisfiable(t, Concept::atom(name), limits.tableau)) {
        throw Error(ErrorCode::PreconditionViolated, "concept " + name + " in " + s.str() + " is unsatisfiable");
      }
    }
  }
  Terminology extended;
  try {
    extended = add_all_isa_acyclic(t, m);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::WouldCreateCycle) throw;
    throw Error(ErrorCode::PreconditionViolated, std::string("missing relations cannot be added acyclically: ") + e.what());
  }
  auto report = check_coherence(extended, limits.tableau);
  if (!report.coherent) {
    std::string names;
    for (const auto& n : report.unsatisfiable) names += (names.empty() ? "" : ", ") + n;
    throw Error(ErrorCode::PreconditionViolated, "ontology plus missing relations is incoherent: " + names);
  }
}

namespace {

// Minimal hitting sets by iterative deepening on their size.
class HittingSets {
 public:
  HittingSets(std::vector<std::vector<IsaStatement>> sets, std::size_t cap) : sets_(std::move(sets)), cap_(cap) {}

  std::vector<RepairingAction> run(AbductionStats& stats) {
    if (std::any_of(sets_.begin(), sets_.end(), [](const auto& s) { return s.empty(); })) return {};
    std::vector<IsaStatement> current;
    for (std::size_t depth = 1; depth <= sets_.size() && !truncated_; ++depth) dfs(current, depth);
    stats.candidates_explored += explored_;
    stats.truncated = stats.truncated || truncated_;
    std::vector<RepairingAction> out;
    for (auto& f : found_) out.push_back(std::move(f));
    return minimize(std::move(out));
  }

 private:
  bool hits(const std::vector<IsaStatement>& cur, const std::vector<IsaStatement>& set) const {
    return std::any_of(set.begin(), set.end(),
                       [&](const IsaStatement& e) { return std::find(cur.begin(), cur.end(), e) != cur.end(); });
  }

  bool covers_found(const std::vector<IsaStatement>& cur) const {
    RepairingAction a(cur);
    return std::any_of(found_.begin(), found_.end(), [&](const RepairingAction& f) { return f.is_subset_of(a); });
  }

  void dfs(std::vector<IsaStatement>& cur, std::size_t budget) {
    if (truncated_ || covers_found(cur)) return;
    const std::vector<IsaStatement>* unhit = nullptr;
    for (const auto& s : sets_) {
      if (!hits(cur, s)) {
        unhit = &s;
        break;
      }
    }
    if (!unhit) {
      if (++explored_ > cap_) {
        truncated_ = true;
        return;
      }
      found_.emplace_back(cur);
      return;
    }
    if (budget == 0) return;
    for (const auto& e : *unhit) {
      cur.push_back(e);
      dfs(cur, budget - 1);
      cur.pop_back();
    }
  }

  std::vector<std::vector<IsaStatement>> sets_;
  std::size_t cap_;
  std::size_t explored_ = 0;
  bool truncated_ = false;
  std::vector<RepairingAction> found_;
};

// ⊆-minimal subsets of an entailing action that still entail s.
void minimal_entailing(const Terminology& t, const RepairingAction& action, const IsaStatement& s,
                       const TableauLimits& limits, std::vector<RepairingAction>& out) {
  bool reduced = false;
  if (action.size() > 1) {
    for (std::size_t skip = 0; skip < action.size(); ++skip) {
      std::vector<IsaStatement> sub;
      for (std::size_t i = 0; i < action.size(); ++i) {
        if (i != skip) sub.push_back(action.axioms()[i]);
      }
      RepairingAction smaller(std::move(sub));
      if (action_repairs(t, smaller, s, limits)) {
        reduced = true;
        minimal_entailing(t, smaller, s, limits, out);
      }
    }
  }
  if (!reduced) out.push_back(action);
}

void filter_candidates(const Terminology& t, SingleResult& r, const AbductionLimits& limits) {
  std::vector<RepairingAction> reduced;
  for (const auto& a : r.candidates) {
    switch (check_admissible(t, a, limits.tableau)) {
      case AdmissibilityVerdict::Cyclic: r.discarded_cyclic.push_back(a); break;
      case AdmissibilityVerdict::Incoherent: r.discarded_incoherent.push_back(a); break;
      case AdmissibilityVerdict::Admissible:
        // Adding to a full definition changes its meaning, so a leaf-closing
        // selection need not entail the relation once added.
        if (!action_repairs(t, a, r.relation, limits.tableau)) {
          r.discarded_not_entailing.push_back(a);
          break;
        }
        minimal_entailing(t, a, r.relation, limits.tableau, reduced);
        break;
    }
  }
  for (auto& a : minimize(std::move(reduced))) {
    switch (check_admissible(t, a, limits.tableau)) {
      case AdmissibilityVerdict::Cyclic: r.discarded_cyclic.push_back(std::move(a)); break;
      case AdmissibilityVerdict::Incoherent: r.discarded_incoherent.push_back(std::move(a)); break;
      case AdmissibilityVerdict::Admissible: r.actions.push_back(std::move(a)); break;
    }
  }
}

CompletionGraph graph_for(const Terminology& t, const IsaStatement& m, const AbductionLimits& limits) {
  auto input = Concept::conj(Concept::atom(m.sub), Concept::negate(Concept::atom(m.super)));
  return build_completion_graph(t, input, ExpansionMode::Full, limits.tableau);
}

}  // namespace

SingleResult repair_single(const Terminology& t, const IsaStatement& m, const AbductionLimits& limits) {
  check_preconditions(t, {m}, limits);
  SingleResult r;
  r.relation = m;
  auto g = graph_for(t, m, limits);
  r.stats.graph_nodes = g.nodes().size();

  std::vector<std::vector<IsaStatement>> sets;
  for (auto& leaf : leaf_closures(g)) sets.emplace_back(leaf.closure.begin(), leaf.closure.end());
  r.stats.open_leaves = sets.size();
  r.candidates = HittingSets(std::move(sets), limits.max_candidates).run(r.stats);
  filter_candidates(t, r, limits);
  return r;
}

namespace {

using Family = std::vector<RepairingAction>;

// Unions of one member from each family, ⊆-minimized; empty if any family is.
Family product(const Family& a, const Family& b, std::size_t cap, AbductionStats& stats) {
  Family out;
  for (const auto& x : a) {
    for (const auto& y : b) {
      if (++stats.candidates_explored > cap) {
        stats.truncated = true;
        return minimize(std::move(out));
      }
      out.push_back(x.united(y));
    }
  }
  return minimize(std::move(out));
}

class OptimizedChooser {
 public:
  OptimizedChooser(const CompletionGraph& g, std::size_t cap, AbductionStats& stats)
      : g_(g), closures_(node_closures(g)), cap_(cap), stats_(stats), open_below_(g.nodes().size(), false) {
    for (std::size_t leaf : g.open_leaves()) {
      for (std::size_t i : g.path(leaf)) open_below_[i] = true;
    }
  }

  Family choose(std::size_t node) {
    if (!open_below_[node]) return {RepairingAction{}};
    Family options;
    for (const auto& s : closures_[node].closure) options.push_back(RepairingAction({s}));
    const auto& children = g_.node(node).children;
    if (!children.empty()) {
      Family acc{RepairingAction{}};
      for (std::size_t c : children) {
        if (acc.empty()) break;
        acc = product(acc, choose(c), cap_, stats_);
      }
      options.insert(options.end(), acc.begin(), acc.end());
    }
    return minimize(std::move(options));
  }

 private:
  const CompletionGraph& g_;
  std::vector<NodeClosure> closures_;
  std::size_t cap_;
  AbductionStats& stats_;
  std::vector<bool> open_below_;
};

}  // namespace

SingleResult repair_single_optimized(const Terminology& t, const IsaStatement& m, const AbductionLimits& limits) {
  check_preconditions(t, {m}, limits);
  SingleResult r;
  r.relation = m;
  auto g = graph_for(t, m, limits);
  r.stats.graph_nodes = g.nodes().size();
  r.stats.open_leaves = g.open_leaves().size();
  r.candidates = OptimizedChooser(g, limits.max_candidates, r.stats).choose(0);
  filter_candidates(t, r, limits);
  return r;
}

CombineResult combine(const Terminology& t, const std::vector<IsaStatement>& m,
                      const std::vector<std::vector<RepairingAction>>& per_relation, const AbductionLimits& limits) {
  if (m.empty()) throw Error(ErrorCode::PreconditionViolated, "no missing is-a relations given");
  if (per_relation.size() != m.size()) {
    throw Error(ErrorCode::PreconditionViolated, "one action list per missing relation is required");
  }
  CombineResult out;
  AbductionStats stats;
  Family acc{RepairingAction{}};
  for (const auto& family : per_relation) acc = product(acc, family, limits.max_candidates, stats);
  out.truncated = stats.truncated;
  acc.push_back(RepairingAction(m));

  for (auto& a : minimize(std::move(acc))) {
    switch (check_admissible(t, a, limits.tableau)) {
      case AdmissibilityVerdict::Cyclic: out.discarded_cyclic.push_back(std::move(a)); break;
      case AdmissibilityVerdict::Incoherent: out.discarded_incoherent.push_back(std::move(a)); break;
      case AdmissibilityVerdict::Admissible: {
        bool all = std::all_of(m.begin(), m.end(),
                               [&](const IsaStatement& s) { return action_repairs(t, a, s, limits.tableau); });
        (all ? out.actions : out.discarded_not_entailing).push_back(std::move(a));
        break;
      }
    }
  }
  return out;
}

std::vector<std::string> named_supers(const Terminology& t, const std::string& name, const TableauLimits& limits) {
  if (!t.knows(name)) throw Error(ErrorCode::UnknownName, "unknown concept " + name);
  std::vector<std::string> out;
  for (const auto& s : t.original_names()) {
    if (s == name || is_subsumed(t, IsaStatement{name, s}, limits)) out.push_back(s);
  }
  return out;
}

std::vector<std::string> named_subs(const Terminology& t, const std::string& name, const TableauLimits& limits) {
  if (!t.knows(name)) throw Error(ErrorCode::UnknownName, "unknown concept " + name);
  std::vector<std::string> out;
  for (const auto& s : t.original_names()) {
    if (s == name || is_subsumed(t, IsaStatement{s, name}, limits)) out.push_back(s);
  }
  return out;
}

SourceTarget source_target_sets(const Terminology& t, const IsaStatement& s, const TableauLimits& limits) {
  auto minus = [](const std::vector<std::string>& a, const std::vector<std::string>& b) {
    std::vector<std::string> out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
  };
  return {minus(named_supers(t, s.sub, limits), named_supers(t, s.super, limits)),
          minus(named_subs(t, s.super, limits), named_subs(t, s.sub, limits))};
}

std::vector<RepairingAction> expand_alternatives(const Terminology& t, const RepairingAction& action,
                                                 const TableauLimits& limits) {
  std::vector<std::vector<IsaStatement>> choices;
  for (const auto& ax : action.axioms()) {
    auto st = source_target_sets(t, ax, limits);
    std::vector<IsaStatement> options;
    for (const auto& src : st.source) {
      for (const auto& tgt : st.target) {
        if (src != tgt) options.push_back({src, tgt});
      }
    }
    choices.push_back(std::move(options));
  }

  std::set<RepairingAction> all;
  std::vector<IsaStatement> pick;
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (i == choices.size()) {
      all.insert(RepairingAction(pick));
      return;
    }
    for (const auto& o : choices[i]) {
      pick.push_back(o);
      self(self, i + 1);
      pick.pop_back();
    }
  };
  rec(rec, 0);

  std::vector<RepairingAction> out{action};
  for (const auto& a : all) {
    if (a != action) out.push_back(a);
  }
  return out;
}

AbductionReport run_abduction(const Terminology& t, const std::vector<IsaStatement>& m, const AbductionOptions& options) {
  check_preconditions(t, m, options.limits);
  AbductionReport report;
  report.missing = m;
  std::vector<std::vector<RepairingAction>> lists;
  for (const auto& rel : m) {
    auto r = options.optimized ? repair_single_optimized(t, rel, options.limits) : repair_single(t, rel, options.limits);
    lists.push_back(r.actions);
    report.per_relation.push_back(std::move(r));
  }
  report.combined = combine(t, m, lists, options.limits);
  if (options.expand_alternatives) {
    for (const auto& a : report.combined.actions) {
      AlternativeSet set{a, {}};
      auto alts = expand_alternatives(t, a, options.limits.tableau);
      for (std::size_t i = 1; i < alts.size(); ++i) {
        const auto& alt = alts[i];
        bool entails = std::all_of(m.begin(), m.end(), [&](const IsaStatement& s) {
          return action_repairs(t, alt, s, options.limits.tableau);
        });
        if (entails && check_admissible(t, alt, options.limits.tableau) == AdmissibilityVerdict::Admissible) {
          set.alternatives.push_back(alts[i]);
        }
      }
      report.alternatives.push_back(std::move(set));
    }
  }
  return report;
}

}  // namespace isarepair
