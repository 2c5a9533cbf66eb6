#pragma once

// ALC tableau with lazy unfolding over acyclic terminologies.
//
// The engine builds the full completion graph: a tree of ABox nodes where
// only ⊔-rule applications create children. Every branch is saturated unless
// the caller asks for satisfiability mode, which stops at the first open
// saturated leaf. Rule priority is fixed (unfold > ⊓ > ∃ > ∀ > ⊔, oldest
// statement first), so equal inputs give identical graphs.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "isarepair/concept.hpp"
#include "isarepair/terminology.hpp"

namespace isarepair {

struct Individual {
  std::uint32_t index = 0;

  // x, y, z, u, v, w, then x6, x7, ...
  std::string name() const;

  friend bool operator==(const Individual&, const Individual&) = default;
  friend std::strong_ordering operator<=>(const Individual&, const Individual&) = default;
};

struct AboxStatement {
  enum class Kind { ConceptAssertion, RoleAssertion };

  Kind kind = Kind::ConceptAssertion;
  Individual individual;               // x in x:C, and the source of x r y
  Concept term = Concept::top();       // NNF
  std::string role;
  Individual target;

  static AboxStatement concept_assertion(Individual x, Concept c) {
    return {Kind::ConceptAssertion, x, std::move(c), {}, {}};
  }
  static AboxStatement role_assertion(Individual x, std::string r, Individual y) {
    return {Kind::RoleAssertion, x, Concept::top(), std::move(r), y};
  }

  std::string str() const;
};

enum class NodeStatus { Open, Closed, Interior };

std::string_view node_status_name(NodeStatus s);

struct AboxNode {
  std::string label;  // "1", "1.2", "1.2.3", ...
  std::optional<std::size_t> parent;
  std::vector<std::size_t> children;
  std::vector<AboxStatement> local;
  NodeStatus status = NodeStatus::Open;

  bool is_leaf() const noexcept { return children.empty(); }
};

struct TableauLimits {
  std::size_t max_nodes = 100000;
  std::size_t max_individuals = 10000;
};

enum class ExpansionMode { Full, Satisfiability };

class CompletionGraph {
 public:
  CompletionGraph(std::vector<AboxNode> nodes, Concept input, Terminology terminology);

  const std::vector<AboxNode>& nodes() const noexcept { return nodes_; }
  const AboxNode& node(std::size_t i) const { return nodes_.at(i); }
  const AboxNode& root() const { return nodes_.front(); }
  const Concept& input() const noexcept { return input_; }
  const Terminology& terminology() const noexcept { return terminology_; }

  std::optional<std::size_t> find(std::string_view label) const;

  std::vector<std::size_t> leaves() const;
  std::vector<std::size_t> open_leaves() const;
  bool has_open_leaf() const;

  // Root-to-node index path (inclusive).
  std::vector<std::size_t> path(std::size_t node) const;

  // Statements of the node and of every node on the path to the root.
  std::vector<AboxStatement> effective_abox(std::size_t node) const;

  // Plain-text tree: one "ABox <label> [status]" header per node followed by
  // its local statements.
  std::string dump() const;

 private:
  std::vector<AboxNode> nodes_;
  Concept input_;
  Terminology terminology_;
};

// Throws UnknownName / UndeclaredRole if `c` mentions names the terminology
// does not know, ResourceLimit when a limit is exceeded.
CompletionGraph build_completion_graph(const Terminology& t, const Concept& c,
                                       ExpansionMode mode = ExpansionMode::Full, const TableauLimits& limits = {});

bool is_satisfiable(const Terminology& t, const Concept& c, const TableauLimits& limits = {});
bool is_subsumed(const Terminology& t, const Concept& sub, const Concept& super, const TableauLimits& limits = {});
bool is_subsumed(const Terminology& t, const IsaStatement& s, const TableauLimits& limits = {});

struct CoherenceReport {
  bool coherent = true;
  std::vector<std::string> unsatisfiable;  // original-kind names, sorted
};

CoherenceReport check_coherence(const Terminology& t, const TableauLimits& limits = {});

}  // namespace isarepair
