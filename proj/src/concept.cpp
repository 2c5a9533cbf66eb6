#include "isarepair/concept.hpp"

#include <cassert>
#include <stdexcept>

namespace isarepair {

struct Concept::Node {
  ConceptKind kind;
  ConceptName name;
  std::string role;
  std::vector<Concept> children;
};

namespace {

const Concept& child(const std::vector<Concept>& children, std::size_t i, const char* what) {
  if (i >= children.size()) throw std::logic_error(std::string("concept has no ") + what);
  return children[i];
}

}  // namespace

Concept Concept::top() {
  static const Concept c{std::make_shared<const Node>(Node{ConceptKind::Top, {}, {}, {}})};
  return c;
}

Concept Concept::bottom() {
  static const Concept c{std::make_shared<const Node>(Node{ConceptKind::Bottom, {}, {}, {}})};
  return c;
}

Concept Concept::atom(ConceptName name) {
  return Concept{std::make_shared<const Node>(Node{ConceptKind::Atom, std::move(name), {}, {}})};
}

Concept Concept::negate(Concept inner) {
  return Concept{std::make_shared<const Node>(Node{ConceptKind::Not, {}, {}, {std::move(inner)}})};
}

Concept Concept::conj(Concept left, Concept right) {
  return Concept{std::make_shared<const Node>(
      Node{ConceptKind::And, {}, {}, {std::move(left), std::move(right)}})};
}

Concept Concept::disj(Concept left, Concept right) {
  return Concept{std::make_shared<const Node>(
      Node{ConceptKind::Or, {}, {}, {std::move(left), std::move(right)}})};
}

Concept Concept::some(std::string role, Concept filler) {
  return Concept{std::make_shared<const Node>(
      Node{ConceptKind::Exists, {}, std::move(role), {std::move(filler)}})};
}

Concept Concept::all(std::string role, Concept filler) {
  return Concept{std::make_shared<const Node>(
      Node{ConceptKind::Forall, {}, std::move(role), {std::move(filler)}})};
}

Concept Concept::conj_of(const std::vector<Concept>& parts) {
  if (parts.empty()) return top();
  Concept acc = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) acc = conj(acc, parts[i]);
  return acc;
}

Concept Concept::disj_of(const std::vector<Concept>& parts) {
  if (parts.empty()) return bottom();
  Concept acc = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) acc = disj(acc, parts[i]);
  return acc;
}

ConceptKind Concept::kind() const noexcept { return node_->kind; }

const ConceptName& Concept::name() const {
  if (kind() != ConceptKind::Atom) throw std::logic_error("concept is not an atom");
  return node_->name;
}

const std::string& Concept::role() const {
  if (kind() != ConceptKind::Exists && kind() != ConceptKind::Forall)
    throw std::logic_error("concept is not a quantifier");
  return node_->role;
}

const Concept& Concept::inner() const { return child(node_->children, 0, "inner"); }
const Concept& Concept::left() const { return child(node_->children, 0, "left operand"); }
const Concept& Concept::right() const { return child(node_->children, 1, "right operand"); }
const Concept& Concept::filler() const { return child(node_->children, 0, "filler"); }

bool Concept::is_negated_atom() const noexcept {
  return kind() == ConceptKind::Not && node_->children[0].kind() == ConceptKind::Atom;
}

std::size_t Concept::size() const {
  std::size_t n = 1;
  for (const auto& c : node_->children) n += c.size();
  return n;
}

namespace {

// Binding strength: or < and < unary/atomic.
int precedence(const Concept& c) {
  switch (c.kind()) {
    case ConceptKind::Or: return 1;
    case ConceptKind::And: return 2;
    default: return 3;
  }
}

void render(const Concept& c, std::string& out);

void render_operand(const Concept& c, int min_prec, std::string& out) {
  if (precedence(c) < min_prec) {
    out += '(';
    render(c, out);
    out += ')';
  } else {
    render(c, out);
  }
}

void render(const Concept& c, std::string& out) {
  switch (c.kind()) {
    case ConceptKind::Top: out += "top"; break;
    case ConceptKind::Bottom: out += "bot"; break;
    case ConceptKind::Atom: out += c.name().str(); break;
    case ConceptKind::Not:
      out += "not ";
      render_operand(c.inner(), 3, out);
      break;
    case ConceptKind::And:
    case ConceptKind::Or: {
      // Binary operators parse left-associatively, so a right operand of the
      // same precedence needs parentheses to keep the tree shape.
      int prec = precedence(c);
      render_operand(c.left(), prec, out);
      out += c.kind() == ConceptKind::And ? " and " : " or ";
      render_operand(c.right(), prec + 1, out);
      break;
    }
    case ConceptKind::Exists:
    case ConceptKind::Forall:
      out += c.kind() == ConceptKind::Exists ? "some " : "all ";
      out += c.role();
      out += " . ";
      render_operand(c.filler(), 3, out);
      break;
  }
}

}  // namespace

std::string Concept::str() const {
  std::string out;
  render(*this, out);
  return out;
}

bool operator==(const Concept& a, const Concept& b) {
  if (a.node_ == b.node_) return true;
  return (a <=> b) == 0;
}

std::strong_ordering operator<=>(const Concept& a, const Concept& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  if (auto c = x.kind <=> y.kind; c != 0) return c;
  if (auto c = x.name <=> y.name; c != 0) return c;
  if (auto c = x.role <=> y.role; c != 0) return c;
  if (auto c = x.children.size() <=> y.children.size(); c != 0) return c;
  for (std::size_t i = 0; i < x.children.size(); ++i) {
    if (auto c = x.children[i] <=> y.children[i]; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

namespace {

Concept nnf_impl(const Concept& c, bool negated) {
  switch (c.kind()) {
    case ConceptKind::Top: return negated ? Concept::bottom() : c;
    case ConceptKind::Bottom: return negated ? Concept::top() : c;
    case ConceptKind::Atom: return negated ? Concept::negate(c) : c;
    case ConceptKind::Not: return nnf_impl(c.inner(), !negated);
    case ConceptKind::And:
    case ConceptKind::Or: {
      Concept l = nnf_impl(c.left(), negated);
      Concept r = nnf_impl(c.right(), negated);
      bool make_and = (c.kind() == ConceptKind::And) != negated;
      return make_and ? Concept::conj(std::move(l), std::move(r))
                      : Concept::disj(std::move(l), std::move(r));
    }
    case ConceptKind::Exists:
    case ConceptKind::Forall: {
      Concept f = nnf_impl(c.filler(), negated);
      bool make_exists = (c.kind() == ConceptKind::Exists) != negated;
      return make_exists ? Concept::some(c.role(), std::move(f)) : Concept::all(c.role(), std::move(f));
    }
  }
  return c;
}

void collect(const Concept& c, ConceptKind op, std::vector<Concept>& out) {
  if (c.kind() == op) {
    collect(c.left(), op, out);
    collect(c.right(), op, out);
  } else {
    out.push_back(c);
  }
}

}  // namespace

Concept nnf(const Concept& c) { return nnf_impl(c, false); }

std::vector<Concept> conjuncts(const Concept& c) {
  std::vector<Concept> out;
  collect(c, ConceptKind::And, out);
  return out;
}

std::vector<Concept> disjuncts(const Concept& c) {
  std::vector<Concept> out;
  collect(c, ConceptKind::Or, out);
  return out;
}

void for_each_name(const Concept& c, const std::function<void(const ConceptName&)>& f) {
  switch (c.kind()) {
    case ConceptKind::Top:
    case ConceptKind::Bottom: return;
    case ConceptKind::Atom: f(c.name()); return;
    case ConceptKind::Not: for_each_name(c.inner(), f); return;
    case ConceptKind::And:
    case ConceptKind::Or:
      for_each_name(c.left(), f);
      for_each_name(c.right(), f);
      return;
    case ConceptKind::Exists:
    case ConceptKind::Forall: for_each_name(c.filler(), f); return;
  }
}

void for_each_role(const Concept& c, const std::function<void(const std::string&)>& f) {
  switch (c.kind()) {
    case ConceptKind::Top:
    case ConceptKind::Bottom:
    case ConceptKind::Atom: return;
    case ConceptKind::Not: for_each_role(c.inner(), f); return;
    case ConceptKind::And:
    case ConceptKind::Or:
      for_each_role(c.left(), f);
      for_each_role(c.right(), f);
      return;
    case ConceptKind::Exists:
    case ConceptKind::Forall:
      f(c.role());
      for_each_role(c.filler(), f);
      return;
  }
}

}  // namespace isarepair
