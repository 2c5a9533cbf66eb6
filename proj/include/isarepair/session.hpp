#pragma once

// Interactive repair workflow: generate actions per missing relation,
// validate axioms (with propagation across entries), repair through a
// Source/Target choice, and revoke per entry.
//
// The current ontology is always the base ontology plus the edit log
// replayed in order, so revoking is "drop the entry's edits and replay".

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "isarepair/abduction.hpp"

namespace isarepair {

enum class Verdict { Unvalidated, Correct, Incorrect };
enum class EntryStatus { Unrepaired, Repaired };
enum class Variant { Basic, Optimized };

std::string_view verdict_name(Verdict v);
Verdict parse_verdict(std::string_view s);  // BadRequest on junk
std::string_view entry_status_name(EntryStatus s);
std::string_view variant_name(Variant v);
Variant parse_variant(std::string_view s);

struct MissingEntry {
  IsaStatement relation;
  bool generated = false;
  std::vector<RepairingAction> actions;
};

// One ontology edit. Validation edits belong to no entry; repair edits are
// attributed to the entry they were made for. `origin` is the validated
// axiom, `applied` the axiom actually added (its Source/Target choice).
struct EditRecord {
  std::optional<std::size_t> entry;
  IsaStatement origin;
  IsaStatement applied;

  friend bool operator==(const EditRecord&, const EditRecord&) = default;
};

struct EntrySummary {
  IsaStatement relation;
  EntryStatus status = EntryStatus::Unrepaired;
  bool generated = false;
  std::size_t action_count = 0;
};

struct SessionSummary {
  std::vector<EntrySummary> entries;
  std::size_t correct = 0;
  std::size_t incorrect = 0;
  std::vector<IsaStatement> added;  // applied axioms, edit-log order
  std::uint64_t revision = 0;
};

enum class EdgeTag { Asserted, Inferred, MissingUnrepaired, AddedByRepair };
std::string_view edge_tag_name(EdgeTag t);

struct HierarchyEdge {
  std::string sub;
  std::string super;
  EdgeTag tag;
};

struct Hierarchy {
  std::vector<std::string> names;
  std::vector<HierarchyEdge> edges;  // direct edges plus missing relations
};

class RepairSession {
 public:
  // Checks the abduction preconditions for the whole of `missing`.
  static RepairSession create(Terminology base, std::vector<IsaStatement> missing, AbductionLimits limits = {});

  const Terminology& base() const noexcept { return base_; }
  const Terminology& current() const noexcept { return current_; }
  const std::vector<MissingEntry>& entries() const noexcept { return entries_; }
  const MissingEntry& entry(std::size_t idx) const;
  const std::map<IsaStatement, Verdict>& verdicts() const noexcept { return verdicts_; }
  Verdict verdict(const IsaStatement& axiom) const;
  const std::vector<EditRecord>& edits() const noexcept { return edits_; }
  const AbductionLimits& limits() const noexcept { return limits_; }
  std::uint64_t revision() const noexcept { return revision_; }

  // (Re)computes the entry's actions against the current ontology; actions
  // with an incorrect axiom are dropped.
  void generate_actions(std::size_t idx, Variant variant = Variant::Basic);

  // Incorrect: drops every action containing the axiom from every entry.
  // Correct: adds the axiom to the ontology. Same verdict twice is a no-op;
  // the opposite verdict raises ConflictingVerdict.
  void validate(const IsaStatement& axiom, Verdict verdict);

  // Source/Target sets of a validated axiom, computed against the current
  // ontology without the axiom's own edits.
  SourceTarget source_target(const IsaStatement& axiom) const;

  // Replaces the axiom's plain edit with source ⊑ target, attributed to idx.
  void repair_axiom(std::size_t idx, const IsaStatement& axiom, const std::string& source, const std::string& target);

  // Drops every edit attributed to idx. Verdicts are kept.
  void revoke(std::size_t idx);

  bool axiom_repaired(const IsaStatement& axiom) const;
  EntryStatus status(std::size_t idx) const;
  SessionSummary summary() const;
  Hierarchy hierarchy() const;

  // Snapshot restore; validates and replays the edit log.
  static RepairSession restore(Terminology base, std::vector<MissingEntry> entries,
                               std::map<IsaStatement, Verdict> verdicts, std::vector<EditRecord> edits,
                               std::uint64_t revision, AbductionLimits limits = {});

 private:
  RepairSession() = default;
  void check_index(std::size_t idx) const;
  bool in_some_action(const IsaStatement& axiom) const;
  Terminology replay(const std::vector<EditRecord>& edits) const;
  void commit(std::vector<EditRecord> edits);

  Terminology base_;
  Terminology current_;
  std::vector<MissingEntry> entries_;
  std::map<IsaStatement, Verdict> verdicts_;
  std::vector<EditRecord> edits_;
  AbductionLimits limits_;
  std::uint64_t revision_ = 0;
};

}  // namespace isarepair
