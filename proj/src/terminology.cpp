#include "isarepair/terminology.hpp"

#include <algorithm>
#include <functional>

#include "isarepair/error.hpp"

namespace isarepair {

namespace {

// Returns a definitional cycle (names in dependency order) or empty.
std::vector<std::string> find_cycle(const std::vector<std::pair<ConceptName, Concept>>& defs,
                                    const std::map<ConceptName, std::size_t>& index) {
  enum class Mark { White, Grey, Black };
  std::vector<Mark> mark(defs.size(), Mark::White);
  std::vector<std::size_t> stack;
  std::vector<std::string> cycle;

  std::function<bool(std::size_t)> visit = [&](std::size_t i) {
    mark[i] = Mark::Grey;
    stack.push_back(i);
    bool found = false;
    std::vector<std::size_t> uses;
    for_each_name(defs[i].second, [&](const ConceptName& n) {
      if (auto it = index.find(n); it != index.end()) uses.push_back(it->second);
    });
    for (std::size_t j : uses) {
      if (found) break;
      if (mark[j] == Mark::Grey) {
        auto from = std::find(stack.begin(), stack.end(), j);
        for (auto it = from; it != stack.end(); ++it) cycle.push_back(defs[*it].first.str());
        found = true;
      } else if (mark[j] == Mark::White) {
        found = visit(j);
      }
    }
    stack.pop_back();
    mark[i] = Mark::Black;
    return found;
  };

  for (std::size_t i = 0; i < defs.size(); ++i) {
    if (mark[i] == Mark::White && visit(i)) return cycle;
  }
  return {};
}

std::string join(const std::vector<std::string>& parts, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

}  // namespace

Terminology Terminology::make(std::set<std::string> roles,
                              std::vector<std::pair<ConceptName, Concept>> definitions,
                              const std::set<std::string>& declared) {
  Terminology t;
  t.roles_ = std::move(roles);
  for (const auto& n : declared) t.names_.insert(ConceptName::original(n));

  for (std::size_t i = 0; i < definitions.size(); ++i) {
    const auto& [name, body] = definitions[i];
    if (!t.index_.emplace(name, i).second) {
      throw Error(ErrorCode::MultipleDefinition, "multiple definitions for " + name.str());
    }
    t.names_.insert(name);
    for_each_name(body, [&](const ConceptName& n) { t.names_.insert(n); });
    for_each_role(body, [&](const std::string& r) {
      if (!t.roles_.contains(r)) {
        throw Error(ErrorCode::UndeclaredRole, "role " + r + " used in definition of " + name.str() +
                                                   " is not declared");
      }
    });
  }
  t.definitions_ = std::move(definitions);

  if (auto cycle = find_cycle(t.definitions_, t.index_); !cycle.empty()) {
    throw Error(ErrorCode::CyclicDefinition, "cyclic definition: " + join(cycle, " -> "));
  }
  return t;
}

const Concept* Terminology::definition(const ConceptName& name) const {
  auto it = index_.find(name);
  return it == index_.end() ? nullptr : &definitions_[it->second].second;
}

std::vector<std::string> Terminology::original_names() const {
  std::vector<std::string> out;
  for (const auto& n : names_) {
    if (!n.is_bar()) out.push_back(n.text);
  }
  return out;
}

std::set<ConceptName> Terminology::primitive_names() const {
  std::set<ConceptName> out;
  for (const auto& n : names_) {
    if (!index_.contains(n)) out.insert(n);
  }
  return out;
}

bool operator==(const Terminology& a, const Terminology& b) {
  if (a.roles_ != b.roles_ || a.names_ != b.names_ || a.definitions_.size() != b.definitions_.size()) {
    return false;
  }
  for (const auto& [name, body] : a.definitions_) {
    const Concept* other = b.definition(name);
    if (!other || !(*other == body)) return false;
  }
  return true;
}

Terminology normalize_terminology(const std::vector<Axiom>& axioms, const std::set<std::string>& roles) {
  std::vector<std::pair<ConceptName, Concept>> defs;
  std::set<std::string> declared;
  std::set<ConceptName> seen;

  for (const auto& ax : axioms) {
    if (!seen.insert(ax.name).second) {
      throw Error(ErrorCode::MultipleDefinition, "multiple axioms for " + ax.name.str());
    }
    declared.insert(ax.name.text);
    if (ax.kind == Axiom::Kind::Definition) {
      defs.emplace_back(ax.name, ax.body);
    } else if (ax.body.kind() != ConceptKind::Top) {
      defs.emplace_back(ax.name, Concept::conj(ax.body, Concept::atom(ConceptName::bar_of(ax.name))));
    }
  }
  return Terminology::make(roles, std::move(defs), declared);
}

namespace {

// Rebuilds t with `name` mapped to `body` (nullopt removes the definition).
Terminology with_definition(const Terminology& t, const ConceptName& name, std::optional<Concept> body) {
  std::vector<std::pair<ConceptName, Concept>> defs;
  bool replaced = false;
  for (const auto& [n, b] : t.definitions()) {
    if (n == name) {
      replaced = true;
      if (body) defs.emplace_back(n, *body);
    } else {
      defs.emplace_back(n, b);
    }
  }
  if (!replaced && body) defs.emplace_back(name, *body);

  std::set<std::string> declared;
  for (const auto& n : t.names()) {
    if (!n.is_bar()) declared.insert(n.text);
  }
  return Terminology::make(t.roles(), std::move(defs), declared);
}

// Removes the topmost `target ⊓ rest` on the left-nested conjunction spine of
// `body`, returning `rest` in its place.
std::optional<Concept> remove_conjunct(const Concept& body, const Concept& target) {
  if (body.kind() != ConceptKind::And) return std::nullopt;
  if (body.left() == target) return body.right();
  if (auto r = remove_conjunct(body.right(), target)) return Concept::conj(body.left(), *r);
  return std::nullopt;
}

}  // namespace

IsaAddition add_isa_acyclic(const Terminology& t, const IsaStatement& s) {
  auto sub = ConceptName::original(s.sub);
  auto sup = ConceptName::original(s.super);
  if (!t.knows(sub)) throw Error(ErrorCode::UnknownName, "unknown concept " + s.sub);
  if (!t.knows(sup)) throw Error(ErrorCode::UnknownName, "unknown concept " + s.super);
  if (s.sub == s.super) throw Error(ErrorCode::SelfSubsumption, "self-subsumption " + s.str());

  const Concept* current = t.definition(sub);
  Concept rest = current ? *current : Concept::atom(ConceptName::bar_of(sub));
  try {
    return {with_definition(t, sub, Concept::conj(Concept::atom(sup), rest)), IsaEdit{s, current == nullptr}};
  } catch (const Error& e) {
    if (e.code() != ErrorCode::CyclicDefinition) throw;
    throw Error(ErrorCode::WouldCreateCycle, "adding " + s.str() + " creates a " + e.what());
  }
}

Terminology add_all_isa_acyclic(Terminology t, const std::vector<IsaStatement>& axioms) {
  for (const auto& ax : axioms) t = add_isa_acyclic(t, ax).terminology;
  return t;
}

Terminology IsaEdit::undo(const Terminology& t) const {
  auto sub = ConceptName::original(axiom.sub);
  const Concept* body = t.definition(sub);
  if (!body) throw Error(ErrorCode::UnknownName, "no definition to undo for " + axiom.sub);
  auto rest = remove_conjunct(*body, Concept::atom(axiom.super));
  if (!rest) throw Error(ErrorCode::UnknownName, axiom.str() + " is not part of the definition of " + axiom.sub);
  if (created_definition && *rest == Concept::atom(ConceptName::bar_of(sub))) {
    return with_definition(t, sub, std::nullopt);
  }
  return with_definition(t, sub, *rest);
}

std::optional<Concept> unfold_once(const Terminology& t, const ConceptName& name, bool negated) {
  const Concept* body = t.definition(name);
  if (!body) return std::nullopt;
  return negated ? nnf(Concept::negate(*body)) : *body;
}

}  // namespace isarepair
