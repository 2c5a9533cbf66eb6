#pragma once

// Repairing-action generation for missing is-a relations.
//
// A repairing action is a set of named is-a axioms whose acyclic addition
// makes a missing relation entailed. Candidates come from the open leaves of
// the completion graph of A ⊓ ¬B: every pair P ⊑ N with x:P and x:¬N in a
// leaf closes that leaf, so an action must pick one such pair per open leaf.

#include <compare>
#include <cstddef>
#include <set>
#include <string>
#include <vector>

#include "isarepair/tableau.hpp"
#include "isarepair/terminology.hpp"

namespace isarepair {

class RepairingAction {
 public:
  RepairingAction() = default;
  explicit RepairingAction(std::vector<IsaStatement> axioms);  // sorts and deduplicates
  static RepairingAction of(std::initializer_list<IsaStatement> axioms) { return RepairingAction(axioms); }

  const std::vector<IsaStatement>& axioms() const noexcept { return axioms_; }
  std::size_t size() const noexcept { return axioms_.size(); }
  bool empty() const noexcept { return axioms_.empty(); }
  bool contains(const IsaStatement& s) const;
  bool is_subset_of(const RepairingAction& other) const;

  RepairingAction united(const RepairingAction& other) const;

  // "{A <= B, C <= D}"
  std::string str() const;

  friend bool operator==(const RepairingAction&, const RepairingAction&) = default;
  // Size first, then lexicographic on the sorted axioms.
  friend std::strong_ordering operator<=>(const RepairingAction& a, const RepairingAction& b);

 private:
  std::vector<IsaStatement> axioms_;
};

// Removes duplicates and every action that is a proper superset of another;
// returns the survivors in canonical order.
std::vector<RepairingAction> minimize(std::vector<RepairingAction> actions);

struct PosNegSets {
  Individual individual;
  std::set<ConceptName> pos;
  std::set<ConceptName> neg;
};

// Named concepts asserted (pos) and negated (neg) per individual, over the
// given statements. Bar names are kept; they are only dropped when pairs are
// formed.
std::vector<PosNegSets> pos_neg_sets(const std::vector<AboxStatement>& statements);

// R_A: every P ⊑ N with P ∈ pos, N ∈ neg of the same individual, excluding
// bar names and P = N.
std::set<IsaStatement> closure_pairs(const std::vector<PosNegSets>& sets);

// R_A of an open leaf over its effective ABox. Throws LeafNotOpen.
std::set<IsaStatement> extract_closure_set(const CompletionGraph& g, std::size_t leaf);

struct LeafClosure {
  std::size_t node = 0;
  std::string label;
  std::vector<PosNegSets> sets;
  std::set<IsaStatement> closure;
};

// Pos/Neg/R_A for every open leaf, in graph order.
std::vector<LeafClosure> leaf_closures(const CompletionGraph& g);

// Per-node sets of the optimized variant: Pos/Neg hold only names introduced
// by the node's own statements, and R_A holds pairs (over the cumulative
// sets) with at least one side introduced here that no ancestor's R_A
// already offers.
struct NodeClosure {
  std::size_t node = 0;
  std::string label;
  NodeStatus status = NodeStatus::Open;
  std::vector<PosNegSets> sets;
  std::set<IsaStatement> closure;
};

std::vector<NodeClosure> node_closures(const CompletionGraph& g);

struct AbductionLimits {
  TableauLimits tableau;
  std::size_t max_candidates = 10000;  // per relation and for the combination
};

struct AbductionStats {
  std::size_t graph_nodes = 0;
  std::size_t open_leaves = 0;
  std::size_t candidates_explored = 0;
  bool truncated = false;
};

struct SingleResult {
  IsaStatement relation;
  // ⊆-minimal selections before any filtering.
  std::vector<RepairingAction> candidates;
  // Coherent, acyclically addable, entailing, semantically minimal actions.
  std::vector<RepairingAction> actions;
  std::vector<RepairingAction> discarded_cyclic;
  std::vector<RepairingAction> discarded_incoherent;
  std::vector<RepairingAction> discarded_not_entailing;
  AbductionStats stats;
};

// Throws PreconditionViolated / AlreadyEntailed / UnknownName when (t, m)
// is not a well-posed abduction problem: M empty, a relation entailed,
// an endpoint unsatisfiable, t incoherent, or t ∪ M not addable or coherent.
void check_preconditions(const Terminology& t, const std::vector<IsaStatement>& m,
                         const AbductionLimits& limits = {});

// True iff the action can be added acyclically and the result entails s.
bool action_repairs(const Terminology& t, const RepairingAction& action, const IsaStatement& s,
                    const TableauLimits& limits = {});

enum class AdmissibilityVerdict { Admissible, Cyclic, Incoherent };
AdmissibilityVerdict check_admissible(const Terminology& t, const RepairingAction& action,
                                      const TableauLimits& limits = {});

SingleResult repair_single(const Terminology& t, const IsaStatement& m, const AbductionLimits& limits = {});
SingleResult repair_single_optimized(const Terminology& t, const IsaStatement& m,
                                     const AbductionLimits& limits = {});

struct CombineResult {
  std::vector<RepairingAction> actions;
  std::vector<RepairingAction> discarded_cyclic;
  std::vector<RepairingAction> discarded_incoherent;
  std::vector<RepairingAction> discarded_not_entailing;
  bool truncated = false;
};

// Rep(M): {M} plus one-per-relation unions, ⊆-minimized and filtered.
CombineResult combine(const Terminology& t, const std::vector<IsaStatement>& m,
                      const std::vector<std::vector<RepairingAction>>& per_relation,
                      const AbductionLimits& limits = {});

struct SourceTarget {
  std::vector<std::string> source;  // sorted
  std::vector<std::string> target;  // sorted
};

// Source = named supers of sub minus supers of super; Target = named subs of
// super minus subs of sub.
SourceTarget source_target_sets(const Terminology& t, const IsaStatement& s, const TableauLimits& limits = {});

// Every substitution S_i ⊑ T_i with (S_i, T_i) ∈ Source × Target per axiom.
// The original action comes first; the rest follow in canonical order.
std::vector<RepairingAction> expand_alternatives(const Terminology& t, const RepairingAction& action,
                                                 const TableauLimits& limits = {});

// Named sub/super closure among original-kind names.
std::vector<std::string> named_supers(const Terminology& t, const std::string& name, const TableauLimits& limits = {});
std::vector<std::string> named_subs(const Terminology& t, const std::string& name, const TableauLimits& limits = {});

struct AbductionOptions {
  bool optimized = false;
  bool expand_alternatives = false;
  AbductionLimits limits;
};

struct AlternativeSet {
  RepairingAction action;
  std::vector<RepairingAction> alternatives;  // coherent, acyclic, entailing ones only
};

struct AbductionReport {
  std::vector<IsaStatement> missing;
  std::vector<SingleResult> per_relation;
  CombineResult combined;
  std::vector<AlternativeSet> alternatives;  // for combined actions, when requested
};

AbductionReport run_abduction(const Terminology& t, const std::vector<IsaStatement>& m,
                              const AbductionOptions& options = {});

}  // namespace isarepair
