#include "isarepair/ontology_parser.hpp"

#include <algorithm>
#include <optional>

#include "isarepair/error.hpp"

namespace isarepair {

namespace {

enum class Tok {
  Ident,
  BarIdent,
  KwRole,
  KwConcept,
  KwTop,
  KwBot,
  KwNot,
  KwAnd,
  KwOr,
  KwSome,
  KwAll,
  Define,
  Subsumed,
  Semi,
  Dot,
  LParen,
  RParen,
  End,
};

struct Token {
  Tok kind;
  std::string text;
  int line;
  int column;
};

bool ident_start(unsigned char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c >= 0x80; }
bool ident_char(unsigned char c) { return ident_start(c) || (c >= '0' && c <= '9') || c == '_'; }

std::optional<Tok> keyword(std::string_view word) {
  static constexpr std::pair<std::string_view, Tok> table[] = {
      {"role", Tok::KwRole}, {"concept", Tok::KwConcept}, {"top", Tok::KwTop},
      {"bot", Tok::KwBot},   {"not", Tok::KwNot},         {"and", Tok::KwAnd},
      {"or", Tok::KwOr},     {"some", Tok::KwSome},       {"all", Tok::KwAll},
  };
  for (const auto& [w, t] : table) {
    if (w == word) return t;
  }
  return std::nullopt;
}

std::string describe(const Token& t) {
  switch (t.kind) {
    case Tok::End: return "end of input";
    case Tok::Ident:
    case Tok::BarIdent: return "identifier '" + t.text + "'";
    default: return "'" + t.text + "'";
  }
}

class Lexer {
 public:
  explicit Lexer(std::string_view src, int first_line = 1) : src_(src), line_(first_line) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space();
      if (pos_ >= src_.size()) {
        out.push_back({Tok::End, "", line_, col_});
        return out;
      }
      out.push_back(next());
    }
  }

 private:
  unsigned char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < src_.size() ? static_cast<unsigned char>(src_[pos_ + ahead]) : 0;
  }

  void advance() {
    unsigned char c = peek();
    ++pos_;
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else if ((c & 0xC0) != 0x80) {
      ++col_;  // count code points, not continuation bytes
    }
  }

  void skip_space() {
    while (pos_ < src_.size()) {
      unsigned char c = peek();
      if (c == '#') {
        while (pos_ < src_.size() && peek() != '\n') advance();
      } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        advance();
      } else {
        break;
      }
    }
  }

  [[noreturn]] void fail(ErrorCode code, int line, int col, std::string msg) const {
    throw SourceError(code, line, col, std::move(msg));
  }

  std::string read_ident() {
    std::string s;
    while (pos_ < src_.size() && ident_char(peek())) {
      s += static_cast<char>(peek());
      advance();
    }
    if (peek() == kBarMarker) {
      fail(ErrorCode::ReservedMarker, line_, col_, "reserved marker '~' inside identifier '" + s + "'");
    }
    return s;
  }

  Token next() {
    int line = line_;
    int col = col_;
    unsigned char c = peek();
    if (ident_start(c)) {
      std::string word = read_ident();
      if (auto kw = keyword(word)) return {*kw, word, line, col};
      return {Tok::Ident, word, line, col};
    }
    if (c == kBarMarker) {
      advance();
      if (!ident_start(peek())) fail(ErrorCode::ReservedMarker, line, col, "reserved marker '~' must prefix a name");
      std::string word = read_ident();
      if (keyword(word)) fail(ErrorCode::SyntaxError, line, col, "keyword '" + word + "' cannot be a name");
      return {Tok::BarIdent, word, line, col};
    }
    auto single = [&](Tok t) {
      std::string s(1, static_cast<char>(c));
      advance();
      return Token{t, s, line, col};
    };
    switch (c) {
      case ';': return single(Tok::Semi);
      case '.': return single(Tok::Dot);
      case '(': return single(Tok::LParen);
      case ')': return single(Tok::RParen);
      case ':':
        if (peek(1) == '=') {
          advance();
          advance();
          return {Tok::Define, ":=", line, col};
        }
        break;
      case '<':
        if (peek(1) == '=') {
          advance();
          advance();
          return {Tok::Subsumed, "<=", line, col};
        }
        break;
      default: break;
    }
    if (c >= '0' && c <= '9') fail(ErrorCode::SyntaxError, line, col, "identifiers must start with a letter");
    fail(ErrorCode::SyntaxError, line, col, std::string("unexpected character '") + static_cast<char>(c) + "'");
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_;
  int col_ = 1;
};

class Parser {
 public:
  Parser(std::vector<Token> tokens, std::set<std::string> roles)
      : toks_(std::move(tokens)), roles_(std::move(roles)) {}

  ParsedOntology document() {
    ParsedOntology out;
    while (cur().kind != Tok::End) {
      if (accept(Tok::KwRole)) {
        Token name = expect(Tok::Ident, "role name");
        expect(Tok::Semi, "';'");
        roles_.insert(name.text);
      } else if (accept(Tok::KwConcept)) {
        Token name = expect(Tok::Ident, "concept name");
        Axiom::Kind kind;
        if (accept(Tok::Define)) {
          kind = Axiom::Kind::Definition;
        } else if (accept(Tok::Subsumed)) {
          kind = Axiom::Kind::Primitive;
        } else {
          fail_here("expected ':=' or '<=' after concept name");
        }
        Concept body = expr();
        expect(Tok::Semi, "';'");
        out.axioms.push_back({kind, ConceptName::original(name.text), std::move(body)});
      } else {
        fail_here("expected 'role' or 'concept', found " + describe(cur()));
      }
    }
    out.roles = roles_;
    return out;
  }

  Concept lone_expr() {
    Concept c = expr();
    if (cur().kind != Tok::End) fail_here("unexpected " + describe(cur()) + " after expression");
    return c;
  }

 private:
  const Token& cur() const { return toks_[pos_]; }

  bool accept(Tok k) {
    if (cur().kind != k) return false;
    ++pos_;
    return true;
  }

  Token expect(Tok k, const std::string& what) {
    if (cur().kind != k) fail_here("expected " + what + ", found " + describe(cur()));
    return toks_[pos_++];
  }

  [[noreturn]] void fail_here(std::string msg) const {
    throw SourceError(ErrorCode::SyntaxError, cur().line, cur().column, std::move(msg));
  }

  Concept expr() {
    Concept c = conjunction();
    while (accept(Tok::KwOr)) c = Concept::disj(std::move(c), conjunction());
    return c;
  }

  Concept conjunction() {
    Concept c = unary();
    while (accept(Tok::KwAnd)) c = Concept::conj(std::move(c), unary());
    return c;
  }

  Concept unary() {
    const Token& t = cur();
    switch (t.kind) {
      case Tok::KwNot:
        ++pos_;
        return Concept::negate(unary());
      case Tok::KwSome:
      case Tok::KwAll: {
        Token quant = t;
        ++pos_;
        Token role = expect(Tok::Ident, "role name");
        if (!roles_.contains(role.text)) {
          throw SourceError(ErrorCode::UndeclaredRole, quant.line, quant.column,
                            "role '" + role.text + "' is not declared");
        }
        expect(Tok::Dot, "'.'");
        Concept filler = unary();
        return quant.kind == Tok::KwSome ? Concept::some(role.text, std::move(filler))
                                         : Concept::all(role.text, std::move(filler));
      }
      case Tok::KwTop: ++pos_; return Concept::top();
      case Tok::KwBot: ++pos_; return Concept::bottom();
      case Tok::Ident: ++pos_; return Concept::atom(t.text);
      case Tok::BarIdent: ++pos_; return Concept::atom(ConceptName{t.text, NameKind::Bar});
      case Tok::LParen: {
        ++pos_;
        Concept c = expr();
        expect(Tok::RParen, "')'");
        return c;
      }
      default: fail_here("expected a concept expression, found " + describe(t));
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::set<std::string> roles_;
};

}  // namespace

ParsedOntology parse_ontology(std::string_view text) {
  return Parser(Lexer(text).run(), {}).document();
}

Concept parse_concept(std::string_view text, const std::set<std::string>& roles) {
  return Parser(Lexer(text).run(), roles).lone_expr();
}

std::vector<IsaStatement> parse_missing(std::string_view text) {
  std::vector<IsaStatement> out;
  int line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    ++line_no;
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    auto toks = Lexer(text.substr(start, end - start), line_no).run();
    start = end + 1;
    if (toks.front().kind == Tok::End) continue;

    auto want = [&](std::size_t i, Tok k, const char* what) -> const Token& {
      if (toks[i].kind != k) {
        throw SourceError(ErrorCode::SyntaxError, toks[i].line, toks[i].column,
                          std::string("expected ") + what + ", found " + describe(toks[i]));
      }
      return toks[i];
    };
    const Token& sub = want(0, Tok::Ident, "concept name");
    want(1, Tok::Subsumed, "'<='");
    const Token& sup = want(2, Tok::Ident, "concept name");
    want(3, Tok::End, "end of line");
    if (sub.text == sup.text) {
      throw SourceError(ErrorCode::SelfSubsumption, sub.line, sub.column, "self-subsumption " + sub.text + " <= " + sup.text);
    }
    IsaStatement s{sub.text, sup.text};
    if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(std::move(s));
  }
  return out;
}

std::string serialize_ontology(const Terminology& t) {
  std::string out;
  for (const auto& r : t.roles()) out += "role " + r + ";\n";

  // Primitive names that occur in no definition would otherwise be lost.
  std::set<ConceptName> referenced;
  for (const auto& [name, body] : t.definitions()) {
    for_each_name(body, [&](const ConceptName& n) { referenced.insert(n); });
  }
  for (const auto& n : t.primitive_names()) {
    if (!n.is_bar() && !referenced.contains(n)) out += "concept " + n.text + " <= top;\n";
  }
  for (const auto& [name, body] : t.definitions()) {
    out += "concept " + name.text + " := " + body.str() + ";\n";
  }
  return out;
}

std::string serialize_missing(const std::vector<IsaStatement>& missing) {
  std::string out;
  for (const auto& m : missing) out += m.str() + "\n";
  return out;
}

Terminology load_terminology(std::string_view text) {
  auto parsed = parse_ontology(text);
  return normalize_terminology(parsed.axioms, parsed.roles);
}

}  // namespace isarepair
