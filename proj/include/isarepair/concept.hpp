#pragma once

// ALC concept terms.
//
// A Concept is an immutable tree shared by reference; copies are cheap and
// structurally compared. Conjunction and disjunction are binary in the tree;
// the reasoner flattens nested chains when it applies rules.

#include <compare>
#include <cstddef>
#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace isarepair {

enum class NameKind { Original, Bar };

// A concept name. Bar names (Ā) are generated by normalization and axiom
// addition and are keyed by the original name they derive from.
struct ConceptName {
  std::string text;
  NameKind kind = NameKind::Original;

  static ConceptName original(std::string text) { return {std::move(text), NameKind::Original}; }
  static ConceptName bar_of(const ConceptName& base) { return {base.text, NameKind::Bar}; }

  bool is_bar() const noexcept { return kind == NameKind::Bar; }

  // Display / serialized form: bar names carry the '~' marker.
  std::string str() const { return is_bar() ? "~" + text : text; }

  friend bool operator==(const ConceptName&, const ConceptName&) = default;
  friend std::strong_ordering operator<=>(const ConceptName& a, const ConceptName& b) {
    if (auto c = a.text <=> b.text; c != 0) return c;
    return a.kind <=> b.kind;
  }
};

inline constexpr char kBarMarker = '~';

enum class ConceptKind { Top, Bottom, Atom, Not, And, Or, Exists, Forall };

class Concept {
 public:
  static Concept top();
  static Concept bottom();
  static Concept atom(ConceptName name);
  static Concept atom(std::string original_name) { return atom(ConceptName::original(std::move(original_name))); }
  static Concept negate(Concept inner);
  static Concept conj(Concept left, Concept right);
  static Concept disj(Concept left, Concept right);
  static Concept some(std::string role, Concept filler);
  static Concept all(std::string role, Concept filler);

  // Left-nested conjunction/disjunction of a nonempty list.
  static Concept conj_of(const std::vector<Concept>& parts);
  static Concept disj_of(const std::vector<Concept>& parts);

  ConceptKind kind() const noexcept;
  const ConceptName& name() const;    // Atom
  const std::string& role() const;    // Exists, Forall
  const Concept& inner() const;       // Not
  const Concept& left() const;        // And, Or
  const Concept& right() const;       // And, Or
  const Concept& filler() const;      // Exists, Forall

  bool is_atom() const noexcept { return kind() == ConceptKind::Atom; }
  bool is_negated_atom() const noexcept;

  // Number of constructor nodes in the tree.
  std::size_t size() const;

  // Ontology-syntax rendering that parses back to the same tree.
  std::string str() const;

  friend bool operator==(const Concept& a, const Concept& b);
  friend std::strong_ordering operator<=>(const Concept& a, const Concept& b);

 private:
  struct Node;
  explicit Concept(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

// Negation normal form; negation only directly above atoms. Idempotent.
Concept nnf(const Concept& c);

// Operands of a maximal chain of And (resp. Or) nodes, left to right.
std::vector<Concept> conjuncts(const Concept& c);
std::vector<Concept> disjuncts(const Concept& c);

// Calls f for every concept name occurring in c (with repetition).
void for_each_name(const Concept& c, const std::function<void(const ConceptName&)>& f);
void for_each_role(const Concept& c, const std::function<void(const std::string&)>& f);

}  // namespace isarepair
