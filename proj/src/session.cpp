#include "isarepair/session.hpp"

#include <algorithm>

#include "isarepair/error.hpp"

namespace isarepair {

std::string_view verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Unvalidated: return "unvalidated";
    case Verdict::Correct: return "correct";
    case Verdict::Incorrect: return "incorrect";
  }
  return "?";
}

Verdict parse_verdict(std::string_view s) {
  if (s == "correct") return Verdict::Correct;
  if (s == "incorrect") return Verdict::Incorrect;
  if (s == "unvalidated") return Verdict::Unvalidated;
  throw Error(ErrorCode::BadRequest, "unknown verdict '" + std::string(s) + "'");
}

std::string_view entry_status_name(EntryStatus s) { return s == EntryStatus::Repaired ? "repaired" : "unrepaired"; }

std::string_view variant_name(Variant v) { return v == Variant::Optimized ? "optimized" : "basic"; }

Variant parse_variant(std::string_view s) {
  if (s == "basic") return Variant::Basic;
  if (s == "optimized") return Variant::Optimized;
  throw Error(ErrorCode::BadRequest, "unknown variant '" + std::string(s) + "'");
}

std::string_view edge_tag_name(EdgeTag t) {
  switch (t) {
    case EdgeTag::Asserted: return "asserted";
    case EdgeTag::Inferred: return "inferred";
    case EdgeTag::MissingUnrepaired: return "missing-unrepaired";
    case EdgeTag::AddedByRepair: return "added-by-repair";
  }
  return "?";
}

RepairSession RepairSession::create(Terminology base, std::vector<IsaStatement> missing, AbductionLimits limits) {
  check_preconditions(base, missing, limits);
  RepairSession s;
  s.base_ = base;
  s.current_ = std::move(base);
  s.limits_ = limits;
  for (auto& m : missing) s.entries_.push_back(MissingEntry{std::move(m), false, {}});
  return s;
}

RepairSession RepairSession::restore(Terminology base, std::vector<MissingEntry> entries,
                                     std::map<IsaStatement, Verdict> verdicts, std::vector<EditRecord> edits,
                                     std::uint64_t revision, AbductionLimits limits) {
  RepairSession s;
  s.base_ = std::move(base);
  s.entries_ = std::move(entries);
  s.verdicts_ = std::move(verdicts);
  s.limits_ = limits;
  s.revision_ = revision;
  for (const auto& e : edits) {
    if (e.entry && *e.entry >= s.entries_.size()) {
      throw Error(ErrorCode::InvalidIndex, "edit refers to entry " + std::to_string(*e.entry));
    }
  }
  s.current_ = s.replay(edits);
  s.edits_ = std::move(edits);
  return s;
}

void RepairSession::check_index(std::size_t idx) const {
  if (idx >= entries_.size()) {
    throw Error(ErrorCode::InvalidIndex, "no missing relation with index " + std::to_string(idx));
  }
}

const MissingEntry& RepairSession::entry(std::size_t idx) const {
  check_index(idx);
  return entries_[idx];
}

Verdict RepairSession::verdict(const IsaStatement& axiom) const {
  auto it = verdicts_.find(axiom);
  return it == verdicts_.end() ? Verdict::Unvalidated : it->second;
}

Terminology RepairSession::replay(const std::vector<EditRecord>& edits) const {
  Terminology t = base_;
  for (const auto& e : edits) t = add_isa_acyclic(t, e.applied).terminology;
  return t;
}

// Replays first so a failing edit leaves the session untouched.
void RepairSession::commit(std::vector<EditRecord> edits) {
  Terminology t = replay(edits);
  current_ = std::move(t);
  edits_ = std::move(edits);
}

bool RepairSession::in_some_action(const IsaStatement& axiom) const {
  for (const auto& e : entries_) {
    for (const auto& a : e.actions) {
      if (a.contains(axiom)) return true;
    }
  }
  return false;
}

void RepairSession::generate_actions(std::size_t idx, Variant variant) {
  check_index(idx);
  auto& e = entries_[idx];
  auto result = variant == Variant::Optimized ? repair_single_optimized(current_, e.relation, limits_)
                                              : repair_single(current_, e.relation, limits_);
  std::vector<RepairingAction> kept;
  for (auto& a : result.actions) {
    bool rejected = std::any_of(a.axioms().begin(), a.axioms().end(),
                                [&](const IsaStatement& s) { return verdict(s) == Verdict::Incorrect; });
    if (!rejected) kept.push_back(std::move(a));
  }
  e.actions = std::move(kept);
  e.generated = true;
  ++revision_;
}

void RepairSession::validate(const IsaStatement& axiom, Verdict v) {
  if (v == Verdict::Unvalidated) throw Error(ErrorCode::BadRequest, "a verdict must be correct or incorrect");
  Verdict old = verdict(axiom);
  if (old == v) return;
  if (old != Verdict::Unvalidated) {
    throw Error(ErrorCode::ConflictingVerdict, axiom.str() + " is already validated as " + std::string(verdict_name(old)));
  }
  if (!in_some_action(axiom)) {
    throw Error(ErrorCode::AxiomNotInAction, axiom.str() + " does not occur in any repairing action");
  }
  if (v == Verdict::Correct) {
    auto edits = edits_;
    edits.push_back(EditRecord{std::nullopt, axiom, axiom});
    commit(std::move(edits));
  } else {
    for (auto& e : entries_) std::erase_if(e.actions, [&](const RepairingAction& a) { return a.contains(axiom); });
  }
  verdicts_[axiom] = v;
  ++revision_;
}

SourceTarget RepairSession::source_target(const IsaStatement& axiom) const {
  std::vector<EditRecord> others;
  for (const auto& e : edits_) {
    if (e.origin != axiom) others.push_back(e);
  }
  return source_target_sets(replay(others), axiom, limits_.tableau);
}

void RepairSession::repair_axiom(std::size_t idx, const IsaStatement& axiom, const std::string& source,
                                 const std::string& target) {
  check_index(idx);
  const auto& e = entries_[idx];
  bool listed = std::any_of(e.actions.begin(), e.actions.end(), [&](const RepairingAction& a) { return a.contains(axiom); });
  if (!listed) {
    throw Error(ErrorCode::AxiomNotInAction, axiom.str() + " is not part of an action for " + e.relation.str());
  }
  if (verdict(axiom) != Verdict::Correct) {
    throw Error(ErrorCode::PreconditionViolated, axiom.str() + " must be validated as correct before repairing");
  }
  auto st = source_target(axiom);
  if (std::find(st.source.begin(), st.source.end(), source) == st.source.end() ||
      std::find(st.target.begin(), st.target.end(), target) == st.target.end()) {
    throw Error(ErrorCode::ChoiceOutsideSets,
                source + " <= " + target + " is not in Source x Target of " + axiom.str());
  }
  std::vector<EditRecord> edits;
  for (const auto& rec : edits_) {
    if (rec.origin != axiom) edits.push_back(rec);
  }
  edits.push_back(EditRecord{idx, axiom, IsaStatement{source, target}});
  commit(std::move(edits));
  ++revision_;
}

void RepairSession::revoke(std::size_t idx) {
  check_index(idx);
  std::vector<EditRecord> edits;
  for (const auto& rec : edits_) {
    if (rec.entry != idx) edits.push_back(rec);
  }
  if (edits.size() == edits_.size()) {
    throw Error(ErrorCode::NothingToRevoke, "nothing to revoke for " + entries_[idx].relation.str());
  }
  commit(std::move(edits));
  ++revision_;
}

bool RepairSession::axiom_repaired(const IsaStatement& axiom) const {
  return std::any_of(edits_.begin(), edits_.end(), [&](const EditRecord& e) { return e.entry && e.origin == axiom; });
}

// Actions generated after other entries' edits may lean on those edits, so
// a fully repaired action only counts while the relation is still entailed.
EntryStatus RepairSession::status(std::size_t idx) const {
  check_index(idx);
  for (const auto& a : entries_[idx].actions) {
    if (std::all_of(a.axioms().begin(), a.axioms().end(), [&](const IsaStatement& s) { return axiom_repaired(s); })) {
      return is_subsumed(current_, entries_[idx].relation, limits_.tableau) ? EntryStatus::Repaired
                                                                             : EntryStatus::Unrepaired;
    }
  }
  return EntryStatus::Unrepaired;
}

SessionSummary RepairSession::summary() const {
  SessionSummary out;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    out.entries.push_back({entries_[i].relation, status(i), entries_[i].generated, entries_[i].actions.size()});
  }
  for (const auto& [ax, v] : verdicts_) {
    if (v == Verdict::Correct) ++out.correct;
    if (v == Verdict::Incorrect) ++out.incorrect;
  }
  for (const auto& e : edits_) out.added.push_back(e.applied);
  out.revision = revision_;
  return out;
}

Hierarchy RepairSession::hierarchy() const {
  Hierarchy h;
  h.names = current_.original_names();
  const std::size_t n = h.names.size();
  std::vector<std::vector<bool>> below(n, std::vector<bool>(n, false));  // below[i][j]: i ⊑ j
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      below[i][j] = i == j || is_subsumed(current_, IsaStatement{h.names[i], h.names[j]}, limits_.tableau);
    }
  }
  auto strictly = [&](std::size_t i, std::size_t j) { return below[i][j] && !below[j][i]; };

  // Names used as top-level conjuncts in a base definition are asserted supers.
  auto asserted = [&](const std::string& sub, const std::string& super) {
    const Concept* body = base_.definition(ConceptName::original(sub));
    if (!body) return false;
    for (const auto& c : conjuncts(*body)) {
      if (c.is_atom() && c.name() == ConceptName::original(super)) return true;
    }
    return false;
  };
  auto added = [&](const std::string& sub, const std::string& super) {
    return std::any_of(edits_.begin(), edits_.end(),
                       [&](const EditRecord& e) { return e.applied == IsaStatement{sub, super}; });
  };

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j || !below[i][j]) continue;
      if (below[j][i] && i > j) continue;  // one edge per equivalent pair
      bool direct = true;
      for (std::size_t k = 0; k < n && direct; ++k) {
        if (k != i && k != j && strictly(i, k) && strictly(k, j)) direct = false;
      }
      const auto& a = h.names[i];
      const auto& b = h.names[j];
      if (added(a, b)) {
        h.edges.push_back({a, b, EdgeTag::AddedByRepair});
      } else if (direct) {
        h.edges.push_back({a, b, asserted(a, b) ? EdgeTag::Asserted : EdgeTag::Inferred});
      }
    }
  }
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (status(i) == EntryStatus::Unrepaired) {
      h.edges.push_back({entries_[i].relation.sub, entries_[i].relation.super, EdgeTag::MissingUnrepaired});
    }
  }
  return h;
}

}  // namespace isarepair
