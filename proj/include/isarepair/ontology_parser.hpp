#pragma once

// Native ontology text format.
//
//   role <ident> ;
//   concept <ident> := <expr> ;     definition  C ≐ D
//   concept <ident> <= <expr> ;     primitive   C ⊑ D
//   <expr> ::= top | bot | <ident> | not <expr> | <expr> and <expr>
//            | <expr> or <expr> | some <ident> . <expr> | all <ident> . <expr>
//            | ( <expr> )
//
// Precedence is not/some/all > and > or; binary operators associate to the
// left. '#' starts a line comment. Bar names are written `~Name` and are the
// only place the '~' marker may appear.
//
// Missing-relation lists hold one `<ident> <= <ident>` per line.

#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "isarepair/terminology.hpp"

namespace isarepair {

struct SourceDiagnostic {
  int line = 1;
  int column = 1;
  std::string message;
};

struct ParsedOntology {
  std::vector<Axiom> axioms;
  std::set<std::string> roles;
};

// Throws SourceError carrying the first diagnostic.
ParsedOntology parse_ontology(std::string_view text);

// Parses a single concept expression against a role set (used for CLI
// queries).
Concept parse_concept(std::string_view text, const std::set<std::string>& roles);

std::vector<IsaStatement> parse_missing(std::string_view text);

std::string serialize_ontology(const Terminology& t);
std::string serialize_missing(const std::vector<IsaStatement>& missing);

// parse + normalize.
Terminology load_terminology(std::string_view text);

}  // namespace isarepair
