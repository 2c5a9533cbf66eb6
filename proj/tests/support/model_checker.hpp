#pragma once

// Finite-interpretation evaluator used as an independent check on the
// tableau. Interpretations have at most 8 elements; concept extensions are
// bitmasks. Only primitive names and roles are interpreted freely; defined
// names take the value of their definition (acyclic, so this terminates).

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "isarepair/concept.hpp"
#include "isarepair/tableau.hpp"
#include "isarepair/terminology.hpp"

namespace oracle {

using Mask = std::uint8_t;

struct Interpretation {
  int size = 1;
  std::map<isarepair::ConceptName, Mask> primitive;  // absent names are empty
  std::map<std::string, std::vector<Mask>> role;       // role[r][i] = successors of i
};

class Evaluator {
 public:
  Evaluator(const isarepair::Terminology& t, const Interpretation& i) : t_(t), i_(i) {}

  Mask eval(const isarepair::Concept& c) {
    using isarepair::ConceptKind;
    const Mask all = static_cast<Mask>((1u << i_.size) - 1);
    switch (c.kind()) {
      case ConceptKind::Top: return all;
      case ConceptKind::Bottom: return 0;
      case ConceptKind::Atom: return name(c.name());
      case ConceptKind::Not: return static_cast<Mask>(all & ~eval(c.inner()));
      case ConceptKind::And: return eval(c.left()) & eval(c.right());
      case ConceptKind::Or: return eval(c.left()) | eval(c.right());
      case ConceptKind::Exists:
      case ConceptKind::Forall: {
        Mask filler = eval(c.filler());
        Mask out = 0;
        auto it = i_.role.find(c.role());
        for (int x = 0; x < i_.size; ++x) {
          Mask succ = it == i_.role.end() ? 0 : it->second[x];
          bool holds = c.kind() == ConceptKind::Exists ? (succ & filler) != 0 : (succ & ~filler) == 0;
          if (holds) out |= static_cast<Mask>(1u << x);
        }
        return out;
      }
    }
    return 0;
  }

  Mask name(const isarepair::ConceptName& n) {
    if (auto it = memo_.find(n); it != memo_.end()) return it->second;
    Mask m = 0;
    if (const auto* body = t_.definition(n)) {
      m = eval(*body);
    } else if (auto it = i_.primitive.find(n); it != i_.primitive.end()) {
      m = it->second;
    }
    memo_[n] = m;
    return m;
  }

 private:
  const isarepair::Terminology& t_;
  const Interpretation& i_;
  std::map<isarepair::ConceptName, Mask> memo_;
};

// Interpretation read off an open leaf ABox: primitive names hold where
// asserted positively, role edges as asserted.
inline std::optional<Interpretation> witness(const isarepair::CompletionGraph& g) {
  auto leaves = g.open_leaves();
  if (leaves.empty()) return std::nullopt;
  auto abox = g.effective_abox(leaves.front());
  Interpretation i;
  std::uint32_t top = 0;
  for (const auto& s : abox) {
    top = std::max({top, s.individual.index, s.target.index});
  }
  if (top >= 8) return std::nullopt;
  i.size = static_cast<int>(top) + 1;
  for (const auto& s : abox) {
    if (s.kind == isarepair::AboxStatement::Kind::RoleAssertion) {
      auto& succ = i.role[s.role];
      succ.resize(i.size, 0);
      succ[s.individual.index] |= static_cast<Mask>(1u << s.target.index);
    } else if (s.term.is_atom() && !g.terminology().is_defined(s.term.name())) {
      i.primitive[s.term.name()] |= static_cast<Mask>(1u << s.individual.index);
    }
  }
  for (auto& [r, succ] : i.role) succ.resize(i.size, 0);
  return i;
}

// Primitive names and roles that the concept depends on through unfolding.
inline void relevant_symbols(const isarepair::Terminology& t, const isarepair::Concept& c,
                             std::set<isarepair::ConceptName>& prims, std::set<std::string>& roles) {
  isarepair::for_each_role(c, [&](const std::string& r) { roles.insert(r); });
  isarepair::for_each_name(c, [&](const isarepair::ConceptName& n) {
    if (const auto* body = t.definition(n)) {
      relevant_symbols(t, *body, prims, roles);
    } else {
      prims.insert(n);
    }
  });
}

// Exhaustive search for an interpretation of size ≤ max_size where
// `c` is nonempty. Gives up (returns nullopt, sets `exhausted=false`) when
// the search space exceeds `budget` interpretations.
inline std::optional<Interpretation> find_model(const isarepair::Terminology& t, const isarepair::Concept& c,
                                                int max_size, std::uint64_t budget, bool& exhausted) {
  std::set<isarepair::ConceptName> prims;
  std::set<std::string> roles;
  relevant_symbols(t, c, prims, roles);
  std::vector<isarepair::ConceptName> pv(prims.begin(), prims.end());
  std::vector<std::string> rv(roles.begin(), roles.end());
  exhausted = true;

  for (int n = 1; n <= max_size; ++n) {
    const int prim_bits = n * static_cast<int>(pv.size());
    const int role_bits = n * n * static_cast<int>(rv.size());
    const int bits = prim_bits + role_bits;
    if (bits >= 63 || (std::uint64_t{1} << bits) > budget) {
      exhausted = false;
      return std::nullopt;
    }
    Interpretation i;
    i.size = n;
    std::vector<Mask*> prim_slots;
    for (const auto& p : pv) prim_slots.push_back(&i.primitive[p]);
    std::vector<std::vector<Mask>*> role_slots;
    for (const auto& r : rv) {
      i.role[r].assign(n, 0);
      role_slots.push_back(&i.role[r]);
    }
    const Mask low = static_cast<Mask>((1u << n) - 1);
    for (std::uint64_t code = 0; code < (std::uint64_t{1} << bits); ++code) {
      std::uint64_t rest = code;
      for (Mask* slot : prim_slots) {
        *slot = static_cast<Mask>(rest & low);
        rest >>= n;
      }
      for (auto* succ : role_slots) {
        for (int x = 0; x < n; ++x) {
          (*succ)[x] = static_cast<Mask>(rest & low);
          rest >>= n;
        }
      }
      if (Evaluator(t, i).eval(c) != 0) return i;
    }
  }
  return std::nullopt;
}

}  // namespace oracle
