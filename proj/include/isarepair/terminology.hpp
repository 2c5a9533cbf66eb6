#pragma once

#include <compare>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "isarepair/concept.hpp"

namespace isarepair {

// Parsed terminological axiom. Primitive axioms only exist before
// normalization.
struct Axiom {
  enum class Kind { Definition, Primitive };

  Kind kind = Kind::Definition;
  ConceptName name;
  Concept body = Concept::top();

  static Axiom definition(std::string name, Concept body) {
    return {Kind::Definition, ConceptName::original(std::move(name)), std::move(body)};
  }
  static Axiom primitive(std::string name, Concept bound) {
    return {Kind::Primitive, ConceptName::original(std::move(name)), std::move(bound)};
  }

  friend bool operator==(const Axiom&, const Axiom&) = default;
};

// Named is-a statement `sub ⊑ super` between original-kind concept names.
struct IsaStatement {
  std::string sub;
  std::string super;

  std::string str() const { return sub + " <= " + super; }

  friend bool operator==(const IsaStatement&, const IsaStatement&) = default;
  friend std::strong_ordering operator<=>(const IsaStatement&, const IsaStatement&) = default;
};

// An acyclic ALC terminology: unique, non-cyclic definitions A ≐ D over a
// declared role set. Names without a definition are primitive. Immutable;
// edits return new values.
class Terminology {
 public:
  Terminology() = default;

  // Validates every invariant: unique definitions, declared roles, acyclic
  // use graph. Original names occurring in bodies are registered
  // automatically; `declared` adds names that occur nowhere else.
  static Terminology make(std::set<std::string> roles,
                          std::vector<std::pair<ConceptName, Concept>> definitions,
                          const std::set<std::string>& declared = {});

  const std::set<std::string>& roles() const noexcept { return roles_; }

  // Definitions in insertion order.
  const std::vector<std::pair<ConceptName, Concept>>& definitions() const noexcept { return definitions_; }

  const Concept* definition(const ConceptName& name) const;
  bool is_defined(const ConceptName& name) const { return definition(name) != nullptr; }

  // Known names, defined or primitive, original or bar.
  bool knows(const ConceptName& name) const { return names_.contains(name); }
  bool knows(const std::string& original) const { return knows(ConceptName::original(original)); }

  const std::set<ConceptName>& names() const noexcept { return names_; }
  std::vector<std::string> original_names() const;
  std::set<ConceptName> primitive_names() const;

  friend bool operator==(const Terminology& a, const Terminology& b);

 private:
  std::set<std::string> roles_;
  std::vector<std::pair<ConceptName, Concept>> definitions_;
  std::map<ConceptName, std::size_t> index_;
  std::set<ConceptName> names_;
};

// Rewrites primitive axioms A ⊑ C into A ≐ C ⊓ Ā. A primitive bounded only
// by ⊤ leaves A primitive with no bar name.
Terminology normalize_terminology(const std::vector<Axiom>& axioms, const std::set<std::string>& roles);

// Inverse metadata for an acyclic is-a addition.
struct IsaEdit {
  IsaStatement axiom;
  bool created_definition = false;

  // Removes the conjunct this edit introduced. Applying it immediately after
  // add_isa_acyclic restores the original terminology.
  Terminology undo(const Terminology& t) const;
};

struct IsaAddition {
  Terminology terminology;
  IsaEdit edit;
};

// Adds sub ⊑ super while keeping an acyclic terminology:
//   sub undefined:   sub ≐ super ⊓ ~sub
//   sub ≐ C:         sub ≐ super ⊓ C
// Throws WouldCreateCycle if super depends on sub.
IsaAddition add_isa_acyclic(const Terminology& t, const IsaStatement& s);

// Applies a sequence of additions in order.
Terminology add_all_isa_acyclic(Terminology t, const std::vector<IsaStatement>& axioms);

// One lazy-unfolding step: the definition of `name` (or nnf of its negation).
std::optional<Concept> unfold_once(const Terminology& t, const ConceptName& name, bool negated);

}  // namespace isarepair
