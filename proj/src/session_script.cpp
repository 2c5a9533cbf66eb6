#include "isarepair/session_script.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "isarepair/error.hpp"
#include "isarepair/json_io.hpp"
#include "isarepair/ontology_parser.hpp"

namespace isarepair {

namespace {

std::string read_text(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot read " + p.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class Cursor {
 public:
  explicit Cursor(std::vector<std::string> toks) : toks_(std::move(toks)) {}

  bool done() const { return pos_ == toks_.size(); }

  std::string next(const char* what) {
    if (done()) throw Error(ErrorCode::SyntaxError, std::string("expected ") + what);
    return toks_[pos_++];
  }

  IsaStatement isa() {
    std::string a = next("concept name");
    std::string op = next("'<='");
    if (op != "<=") throw Error(ErrorCode::SyntaxError, "expected '<=', found '" + op + "'");
    return {a, next("concept name")};
  }

  void expect_word(const char* w) {
    std::string got = next(w);
    if (got != w) throw Error(ErrorCode::SyntaxError, std::string("expected '") + w + "', found '" + got + "'");
  }

  void finish() {
    if (!done()) throw Error(ErrorCode::SyntaxError, "unexpected '" + toks_[pos_] + "'");
  }

  bool peek_index() const {
    return !done() && !toks_[pos_].empty() &&
           std::all_of(toks_[pos_].begin(), toks_[pos_].end(), [](char c) { return c >= '0' && c <= '9'; });
  }

 private:
  std::vector<std::string> toks_;
  std::size_t pos_ = 0;
};

std::size_t entry_ref(Cursor& c, const RepairSession& s) {
  if (c.peek_index()) return std::stoul(c.next("entry"));
  IsaStatement rel = c.isa();
  for (std::size_t i = 0; i < s.entries().size(); ++i) {
    if (s.entries()[i].relation == rel) return i;
  }
  throw Error(ErrorCode::InvalidIndex, rel.str() + " is not a missing relation of this session");
}

}  // namespace

std::string format_status(const RepairSession& s) {
  std::ostringstream out;
  auto sum = s.summary();
  for (std::size_t i = 0; i < sum.entries.size(); ++i) {
    const auto& e = sum.entries[i];
    out << "[" << i << "] " << e.relation.str() << "  " << entry_status_name(e.status);
    if (e.generated) out << "  (" << e.action_count << " actions)";
    out << "\n";
  }
  out << "verdicts: " << sum.correct << " correct, " << sum.incorrect << " incorrect\n";
  out << "added:";
  if (sum.added.empty()) out << " none";
  for (const auto& a : sum.added) out << "\n  " << a.str();
  out << "\n";
  return out.str();
}

std::optional<RepairSession> run_session_script(std::string_view text, const std::filesystem::path& base_dir,
                                                std::ostream& out, AbductionLimits limits) {
  std::optional<Terminology> ontology;
  std::optional<RepairSession> session;
  auto need = [&]() -> RepairSession& {
    if (!session) throw Error(ErrorCode::PreconditionViolated, "no session yet; load 'ontology' and 'missing' first");
    return *session;
  };

  std::istringstream lines{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(lines, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream words(line);
    std::vector<std::string> toks;
    for (std::string w; words >> w;) toks.push_back(w);
    if (toks.empty()) continue;

    try {
      Cursor c(toks);
      std::string cmd = c.next("command");
      out << "> " << line.substr(line.find_first_not_of(" \t")) << "\n";
      if (cmd == "ontology") {
        ontology = load_terminology(read_text(base_dir / c.next("file")));
        c.finish();
      } else if (cmd == "missing") {
        if (!ontology) throw Error(ErrorCode::PreconditionViolated, "'missing' needs an ontology first");
        auto m = parse_missing(read_text(base_dir / c.next("file")));
        c.finish();
        session = RepairSession::create(*ontology, std::move(m), limits);
        out << "  " << session->entries().size() << " missing relations\n";
      } else if (cmd == "generate") {
        auto& s = need();
        std::size_t idx = entry_ref(c, s);
        Variant v = c.done() ? Variant::Basic : parse_variant(c.next("variant"));
        c.finish();
        s.generate_actions(idx, v);
        out << "  " << s.entry(idx).actions.size() << " actions\n";
        for (const auto& a : s.entry(idx).actions) out << "  " << a.str() << "\n";
      } else if (cmd == "validate") {
        auto& s = need();
        IsaStatement ax = c.isa();
        Verdict v = parse_verdict(c.next("verdict"));
        c.finish();
        s.validate(ax, v);
      } else if (cmd == "repair") {
        auto& s = need();
        std::size_t idx = entry_ref(c, s);
        IsaStatement ax = c.isa();
        c.expect_word("as");
        IsaStatement choice = c.isa();
        c.finish();
        s.repair_axiom(idx, ax, choice.sub, choice.super);
        out << "  " << entry_status_name(s.status(idx)) << "\n";
      } else if (cmd == "revoke") {
        auto& s = need();
        std::size_t idx = entry_ref(c, s);
        c.finish();
        s.revoke(idx);
      } else if (cmd == "actions") {
        auto& s = need();
        std::size_t idx = entry_ref(c, s);
        c.finish();
        for (const auto& a : s.entry(idx).actions) out << "  " << a.str() << "\n";
      } else if (cmd == "status") {
        c.finish();
        out << format_status(need());
      } else if (cmd == "save") {
        auto path = base_dir / c.next("file");
        c.finish();
        std::ofstream f(path);
        if (!f) throw Error(ErrorCode::IoError, "cannot write " + path.string());
        f << save_snapshot(need()).dump(2) << "\n";
      } else if (cmd == "load") {
        auto text_json = read_text(base_dir / c.next("file"));
        c.finish();
        session = load_snapshot(nlohmann::json::parse(text_json), limits);
      } else {
        throw Error(ErrorCode::SyntaxError, "unknown command '" + cmd + "'");
      }
    } catch (const SourceError&) {
      throw;
    } catch (const nlohmann::json::exception& e) {
      throw SourceError(ErrorCode::BadRequest, line_no, 1, e.what());
    } catch (const Error& e) {
      throw SourceError(e.code(), line_no, 1, e.what());
    }
  }
  return session;
}

}  // namespace isarepair
