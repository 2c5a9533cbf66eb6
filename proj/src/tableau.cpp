#include "isarepair/tableau.hpp"

#include <map>
#include <unordered_set>

#include "isarepair/error.hpp"

namespace isarepair {

std::string Individual::name() const {
  static constexpr const char* kNames[] = {"x", "y", "z", "u", "v", "w"};
  if (index < std::size(kNames)) return kNames[index];
  return "x" + std::to_string(index);
}

std::string AboxStatement::str() const {
  if (kind == Kind::RoleAssertion) return individual.name() + " " + role + " " + target.name();
  return individual.name() + " : " + term.str();
}

std::string_view node_status_name(NodeStatus s) {
  switch (s) {
    case NodeStatus::Open: return "open";
    case NodeStatus::Closed: return "closed";
    case NodeStatus::Interior: return "interior";
  }
  return "?";
}

CompletionGraph::CompletionGraph(std::vector<AboxNode> nodes, Concept input, Terminology terminology)
    : nodes_(std::move(nodes)), input_(std::move(input)), terminology_(std::move(terminology)) {}

std::optional<std::size_t> CompletionGraph::find(std::string_view label) const {
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (nodes_[i].label == label) return i;
  }
  return std::nullopt;
}

std::vector<std::size_t> CompletionGraph::leaves() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (nodes_[i].is_leaf()) out.push_back(i);
  }
  return out;
}

std::vector<std::size_t> CompletionGraph::open_leaves() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (nodes_[i].is_leaf() && nodes_[i].status == NodeStatus::Open) out.push_back(i);
  }
  return out;
}

bool CompletionGraph::has_open_leaf() const {
  for (const auto& n : nodes_) {
    if (n.is_leaf() && n.status == NodeStatus::Open) return true;
  }
  return false;
}

std::vector<std::size_t> CompletionGraph::path(std::size_t node) const {
  std::vector<std::size_t> out;
  for (std::optional<std::size_t> cur = node; cur; cur = nodes_.at(*cur).parent) out.push_back(*cur);
  return {out.rbegin(), out.rend()};
}

std::vector<AboxStatement> CompletionGraph::effective_abox(std::size_t node) const {
  std::vector<AboxStatement> out;
  for (std::size_t i : path(node)) {
    const auto& local = nodes_[i].local;
    out.insert(out.end(), local.begin(), local.end());
  }
  return out;
}

std::string CompletionGraph::dump() const {
  std::string out = "input: " + input_.str() + "\n";
  for (const auto& n : nodes_) {
    out += "ABox " + n.label + " [" + std::string(node_status_name(n.status)) + "]\n";
    for (const auto& s : n.local) out += "  " + s.str() + "\n";
  }
  return out;
}

namespace {

// Interned NNF concepts for one expansion run.
class ConceptPool {
 public:
  struct Entry {
    ConceptKind kind;
    Concept term;
    int role = -1;
    std::vector<int> operands;  // flattened for And/Or; filler for quantifiers
    int unfolded = -2;          // -2: not computed, -1: no definition
    int complement = -2;
  };

  explicit ConceptPool(const Terminology& t) : t_(t) {}

  int intern(const Concept& c) {
    if (auto it = ids_.find(c); it != ids_.end()) return it->second;
    Entry e{c.kind(), c, -1, {}};
    switch (c.kind()) {
      case ConceptKind::And:
        for (const auto& op : conjuncts(c)) e.operands.push_back(intern(op));
        break;
      case ConceptKind::Or:
        for (const auto& op : disjuncts(c)) e.operands.push_back(intern(op));
        break;
      case ConceptKind::Exists:
      case ConceptKind::Forall:
        e.role = role_id(c.role());
        e.operands.push_back(intern(c.filler()));
        break;
      default: break;
    }
    int id = static_cast<int>(entries_.size());
    entries_.push_back(std::move(e));
    ids_.emplace(c, id);
    return id;
  }

  const Entry& operator[](int id) const { return entries_[static_cast<std::size_t>(id)]; }

  bool is_literal(int id) const {
    const auto& e = (*this)[id];
    return e.kind == ConceptKind::Atom || (e.kind == ConceptKind::Not && e.term.is_negated_atom());
  }

  int complement(int id) {
    if (entries_[id].complement == -2) {
      const Concept c = entries_[id].term;
      int other = c.kind() == ConceptKind::Atom ? intern(Concept::negate(c)) : intern(c.inner());
      entries_[id].complement = other;
    }
    return entries_[id].complement;
  }

  // Lazy unfolding of a literal: A ↦ D, ¬A ↦ nnf(¬D).
  int unfold(int id) {
    if (entries_[id].unfolded == -2) {
      const Concept c = entries_[id].term;
      bool negated = c.kind() == ConceptKind::Not;
      const ConceptName& name = negated ? c.inner().name() : c.name();
      auto body = unfold_once(t_, name, negated);
      int u = body ? intern(negated ? *body : nnf(*body)) : -1;
      entries_[id].unfolded = u;
    }
    return entries_[id].unfolded;
  }

  const std::string& role_name(int r) const { return roles_[static_cast<std::size_t>(r)]; }

 private:
  int role_id(const std::string& r) {
    for (std::size_t i = 0; i < roles_.size(); ++i) {
      if (roles_[i] == r) return static_cast<int>(i);
    }
    roles_.push_back(r);
    return static_cast<int>(roles_.size() - 1);
  }

  const Terminology& t_;
  std::map<Concept, int> ids_;
  std::vector<Entry> entries_;
  std::vector<std::string> roles_;
};

struct Assertion {
  std::uint32_t ind;
  int cid;
  bool done = false;  // unfold / ⊓ / ∃ already handled
};

struct Edge {
  std::uint32_t from;
  int role;
  std::uint32_t to;
};

struct BranchState {
  std::vector<Assertion> assertions;
  std::unordered_set<std::uint64_t> present;
  std::vector<Edge> edges;
  std::uint32_t individuals = 1;

  static std::uint64_t key(std::uint32_t ind, int cid) {
    return (static_cast<std::uint64_t>(ind) << 32) | static_cast<std::uint32_t>(cid);
  }
  bool has(std::uint32_t ind, int cid) const { return present.contains(key(ind, cid)); }
};

class Expander {
 public:
  Expander(const Terminology& t, ExpansionMode mode, const TableauLimits& limits)
      : t_(t), mode_(mode), limits_(limits), pool_(t) {}

  CompletionGraph run(const Concept& input) {
    Concept normalized = nnf(input);
    nodes_.push_back(AboxNode{"1", std::nullopt, {}, {}, NodeStatus::Open});

    BranchState root;
    bool ok = add(root, 0, 0, pool_.intern(normalized)) && saturate(root, 0);
    if (!ok) {
      nodes_[0].status = NodeStatus::Closed;
      return finish(input);
    }

    // Depth-first expansion; children are created one at a time so that the
    // satisfiability mode can stop after the first open leaf.
    struct Frame {
      std::size_t node;
      BranchState state;
      std::vector<int> disjuncts;
      std::uint32_t individual;
      std::size_t next = 0;
    };
    std::vector<Frame> stack;

    auto settle = [&](std::size_t node, BranchState&& state) -> bool {
      auto pick = pick_disjunction(state);
      if (!pick) {
        nodes_[node].status = NodeStatus::Open;
        return mode_ == ExpansionMode::Satisfiability;
      }
      nodes_[node].status = NodeStatus::Interior;
      std::uint32_t ind = state.assertions[*pick].ind;
      std::vector<int> options = pool_[state.assertions[*pick].cid].operands;
      stack.push_back(Frame{node, std::move(state), std::move(options), ind});
      return false;
    };

    if (settle(0, std::move(root))) return finish(input);

    while (!stack.empty()) {
      Frame& top = stack.back();
      if (top.next == top.disjuncts.size()) {
        stack.pop_back();
        continue;
      }
      std::size_t k = top.next++;
      std::size_t parent = top.node;
      if (nodes_.size() >= limits_.max_nodes) {
        throw Error(ErrorCode::ResourceLimit,
                    "completion graph exceeds " + std::to_string(limits_.max_nodes) + " nodes");
      }
      std::size_t child = nodes_.size();
      nodes_.push_back(AboxNode{nodes_[parent].label + "." + std::to_string(k + 1), parent, {}, {},
                                NodeStatus::Open});
      nodes_[parent].children.push_back(child);

      BranchState state = top.state;
      int disjunct = top.disjuncts[k];
      std::uint32_t ind = top.individual;
      if (!add(state, child, ind, disjunct) || !saturate(state, child)) {
        nodes_[child].status = NodeStatus::Closed;
        continue;
      }
      if (settle(child, std::move(state))) break;
    }
    return finish(input);
  }

 private:
  CompletionGraph finish(const Concept& input) { return CompletionGraph(std::move(nodes_), input, t_); }

  void record(std::size_t node, AboxStatement s) { nodes_[node].local.push_back(std::move(s)); }

  // Adds ind:cid; returns false on clash.
  bool add(BranchState& st, std::size_t node, std::uint32_t ind, int cid) {
    if (!st.present.insert(BranchState::key(ind, cid)).second) return true;
    st.assertions.push_back({ind, cid});
    record(node, AboxStatement::concept_assertion(Individual{ind}, pool_[cid].term));
    const auto kind = pool_[cid].kind;
    if (kind == ConceptKind::Bottom) return false;
    if (pool_.is_literal(cid)) return !st.has(ind, pool_.complement(cid));
    return true;
  }

  std::uint32_t fresh_individual(BranchState& st) {
    if (st.individuals >= limits_.max_individuals) {
      throw Error(ErrorCode::ResourceLimit,
                  "branch exceeds " + std::to_string(limits_.max_individuals) + " individuals");
    }
    return st.individuals++;
  }

  bool saturate(BranchState& st, std::size_t node) {
    for (;;) {
      switch (apply_one(st, node)) {
        case Step::Clash: return false;
        case Step::None: return true;
        case Step::Applied: break;
      }
    }
  }

  enum class Step { Applied, None, Clash };

  Step apply_one(BranchState& st, std::size_t node) {
    auto& as = st.assertions;

    // Lazy unfolding.
    for (std::size_t i = 0; i < as.size(); ++i) {
      if (as[i].done || !pool_.is_literal(as[i].cid)) continue;
      as[i].done = true;
      int u = pool_.unfold(as[i].cid);
      if (u < 0) continue;
      std::uint32_t ind = as[i].ind;
      return add(st, node, ind, u) ? Step::Applied : Step::Clash;
    }

    // ⊓-rule, all flattened conjuncts at once.
    for (std::size_t i = 0; i < as.size(); ++i) {
      if (as[i].done || pool_[as[i].cid].kind != ConceptKind::And) continue;
      as[i].done = true;
      std::uint32_t ind = as[i].ind;
      std::vector<int> ops = pool_[as[i].cid].operands;
      bool changed = false;
      for (int op : ops) {
        if (st.has(ind, op)) continue;
        changed = true;
        if (!add(st, node, ind, op)) return Step::Clash;
      }
      if (changed) return Step::Applied;
    }

    // ∃-rule.
    for (std::size_t i = 0; i < as.size(); ++i) {
      if (as[i].done || pool_[as[i].cid].kind != ConceptKind::Exists) continue;
      as[i].done = true;
      std::uint32_t ind = as[i].ind;
      int role = pool_[as[i].cid].role;
      int filler = pool_[as[i].cid].operands[0];
      bool witnessed = false;
      for (const auto& e : st.edges) {
        if (e.from == ind && e.role == role && st.has(e.to, filler)) {
          witnessed = true;
          break;
        }
      }
      if (witnessed) continue;
      std::uint32_t y = fresh_individual(st);
      st.edges.push_back({ind, role, y});
      record(node, AboxStatement::role_assertion(Individual{ind}, pool_.role_name(role), Individual{y}));
      return add(st, node, y, filler) ? Step::Applied : Step::Clash;
    }

    // ∀-rule.
    for (std::size_t i = 0; i < as.size(); ++i) {
      if (pool_[as[i].cid].kind != ConceptKind::Forall) continue;
      std::uint32_t ind = as[i].ind;
      int role = pool_[as[i].cid].role;
      int filler = pool_[as[i].cid].operands[0];
      for (std::size_t e = 0; e < st.edges.size(); ++e) {
        const Edge edge = st.edges[e];
        if (edge.from != ind || edge.role != role || st.has(edge.to, filler)) continue;
        return add(st, node, edge.to, filler) ? Step::Applied : Step::Clash;
      }
    }
    return Step::None;
  }

  // Oldest disjunction none of whose disjuncts is present.
  std::optional<std::size_t> pick_disjunction(const BranchState& st) const {
    for (std::size_t i = 0; i < st.assertions.size(); ++i) {
      const auto& a = st.assertions[i];
      if (pool_[a.cid].kind != ConceptKind::Or) continue;
      bool satisfied = false;
      for (int d : pool_[a.cid].operands) {
        if (st.has(a.ind, d)) {
          satisfied = true;
          break;
        }
      }
      if (!satisfied) return i;
    }
    return std::nullopt;
  }

  const Terminology& t_;
  ExpansionMode mode_;
  TableauLimits limits_;
  ConceptPool pool_;
  std::vector<AboxNode> nodes_;
};

void require_known(const Terminology& t, const Concept& c) {
  for_each_name(c, [&](const ConceptName& n) {
    if (!t.knows(n)) throw Error(ErrorCode::UnknownName, "unknown concept " + n.str());
  });
  for_each_role(c, [&](const std::string& r) {
    if (!t.roles().contains(r)) throw Error(ErrorCode::UndeclaredRole, "unknown role " + r);
  });
}

}  // namespace

CompletionGraph build_completion_graph(const Terminology& t, const Concept& c, ExpansionMode mode,
                                       const TableauLimits& limits) {
  require_known(t, c);
  return Expander(t, mode, limits).run(c);
}

bool is_satisfiable(const Terminology& t, const Concept& c, const TableauLimits& limits) {
  return build_completion_graph(t, c, ExpansionMode::Satisfiability, limits).has_open_leaf();
}

bool is_subsumed(const Terminology& t, const Concept& sub, const Concept& super, const TableauLimits& limits) {
  return !is_satisfiable(t, Concept::conj(sub, Concept::negate(super)), limits);
}

bool is_subsumed(const Terminology& t, const IsaStatement& s, const TableauLimits& limits) {
  return is_subsumed(t, Concept::atom(s.sub), Concept::atom(s.super), limits);
}

CoherenceReport check_coherence(const Terminology& t, const TableauLimits& limits) {
  CoherenceReport report;
  for (const auto& name : t.original_names()) {
    if (!is_satisfiable(t, Concept::atom(name), limits)) report.unsatisfiable.push_back(name);
  }
  report.coherent = report.unsatisfiable.empty();
  return report;
}

}  // namespace isarepair
