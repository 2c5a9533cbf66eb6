// Command-line front end: check, repair, graph, session replay, serve.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "isarepair/abduction.hpp"
#include "isarepair/error.hpp"
#include "isarepair/json_io.hpp"
#include "isarepair/ontology_parser.hpp"
#include "isarepair/service.hpp"
#include "isarepair/session_script.hpp"

using namespace isarepair;

namespace {

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Defaults come from ISAREPAIR_MAX_NODES / ISAREPAIR_MAX_ACTIONS.
AbductionLimits env_limits() {
  AbductionLimits limits;
  auto read = [](const char* name, std::size_t& slot) {
    if (const char* v = std::getenv(name)) {
      try {
        slot = std::stoul(v);
      } catch (...) {
        throw Error(ErrorCode::BadRequest, std::string(name) + " must be a positive integer");
      }
    }
  };
  read("ISAREPAIR_MAX_NODES", limits.tableau.max_nodes);
  read("ISAREPAIR_MAX_ACTIONS", limits.max_candidates);
  return limits;
}

void print_actions(const std::vector<RepairingAction>& actions, const char* indent) {
  if (actions.empty()) std::cout << indent << "(none)\n";
  for (std::size_t i = 0; i < actions.size(); ++i) std::cout << indent << i + 1 << ". " << actions[i].str() << "\n";
}

int cmd_check(const std::string& path) {
  auto t = load_terminology(read_text(path));
  std::cout << "acyclic terminology: " << t.definitions().size() << " definitions, " << t.original_names().size()
            << " named concepts, " << t.roles().size() << " roles\n";
  auto report = check_coherence(t, env_limits().tableau);
  if (report.coherent) {
    std::cout << "coherent\n";
    return 0;
  }
  std::cout << "incoherent; unsatisfiable:\n";
  for (const auto& n : report.unsatisfiable) std::cout << "  " << n << "\n";
  return 1;
}

int cmd_repair(const std::string& onto, const std::string& missing, bool optimized, bool expand,
               std::optional<std::size_t> max_actions, const std::string& out_file) {
  auto t = load_terminology(read_text(onto));
  auto m = parse_missing(read_text(missing));
  AbductionOptions opts{optimized, expand, env_limits()};
  if (max_actions) opts.limits.max_candidates = *max_actions;
  auto report = run_abduction(t, m, opts);

  for (const auto& r : report.per_relation) {
    std::cout << r.relation.str() << "  [" << r.stats.graph_nodes << " nodes, " << r.stats.open_leaves
              << " open leaves" << (r.stats.truncated ? ", truncated" : "") << "]\n";
    print_actions(r.actions, "  ");
  }
  std::cout << "combined (" << report.combined.actions.size() << " solutions"
            << (report.combined.truncated ? ", truncated" : "") << "):\n";
  print_actions(report.combined.actions, "  ");
  for (const auto& alt : report.alternatives) {
    if (alt.alternatives.empty()) continue;
    std::cout << "alternatives for " << alt.action.str() << ":\n";
    print_actions(alt.alternatives, "  ");
  }
  if (!out_file.empty()) {
    std::ofstream f(out_file);
    if (!f) throw Error(ErrorCode::IoError, "cannot write " + out_file);
    f << to_json(report).dump(2) << "\n";
  }
  return report.combined.actions.empty() ? 1 : 0;
}

int cmd_graph(const std::string& onto, const std::string& expr) {
  auto t = load_terminology(read_text(onto));
  auto c = parse_concept(expr, t.roles());
  auto g = build_completion_graph(t, c, ExpansionMode::Full, env_limits().tableau);
  std::cout << g.dump();
  std::cout << g.nodes().size() << " nodes, " << g.leaves().size() << " leaves, " << g.open_leaves().size()
            << " open\n";
  return 0;
}

int cmd_replay(const std::string& script, bool as_json) {
  std::filesystem::path p(script);
  std::ostringstream transcript;
  auto session = run_session_script(read_text(script), p.parent_path(), transcript, env_limits());
  if (as_json) {
    nlohmann::json out = session ? status_json(*session) : nlohmann::json::object();
    if (session) out["ontology"] = serialize_ontology(session->current());
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << transcript.str();
    if (session) std::cout << "final status:\n" << format_status(*session);
  }
  return 0;
}

int cmd_serve(const std::string& host, int port, const std::string& data_dir) {
  SessionService service(ServiceConfig{data_dir, env_limits()});
  HttpServer server(service);
  std::cerr << "serving on http://" << host << ":" << port << "\n";
  return server.listen(host, port) ? 0 : exit_status(ErrorCode::IoError);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Repair missing is-a relations in ALC acyclic terminologies"};
  app.require_subcommand(1);

  std::string onto, missing, expr, script, out_file, host = "127.0.0.1", data_dir = ".";
  bool optimized = false, expand = false, as_json = false;
  std::optional<std::size_t> max_actions;
  int port = 8080;

  auto* check = app.add_subcommand("check", "Parse and normalize an ontology and report coherence");
  check->add_option("ontology", onto, "Ontology file")->required();

  auto* repair = app.add_subcommand("repair", "Generate repairing actions for missing is-a relations");
  repair->add_option("ontology", onto, "Ontology file")->required();
  repair->add_option("missing", missing, "Missing is-a relations file")->required();
  repair->add_flag("--optimized", optimized, "Use the per-node optimized variant");
  repair->add_flag("--expand-alternatives", expand, "Add Source/Target alternatives of combined solutions");
  repair->add_option("--max-actions", max_actions, "Candidate cap per relation and for the combination");
  repair->add_option("--out", out_file, "Write the JSON report here");

  auto* graph = app.add_subcommand("graph", "Dump the completion graph of a concept");
  graph->add_option("ontology", onto, "Ontology file")->required();
  graph->add_option("concept", expr, "Concept expression")->required();

  auto* session = app.add_subcommand("session", "Session scripts");
  session->require_subcommand(1);
  auto* replay = session->add_subcommand("replay", "Run a session script and print the final status");
  replay->add_option("script", script, "Script file")->required();
  replay->add_flag("--json", as_json, "Print the final status as JSON");

  auto* serve = app.add_subcommand("serve", "Start the HTTP service");
  serve->add_option("--port", port, "Port")->capture_default_str();
  serve->add_option("--host", host, "Bind address")->capture_default_str();
  serve->add_option("--data-dir", data_dir, "Directory for fixture files and snapshots")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*check) return cmd_check(onto);
    if (*repair) return cmd_repair(onto, missing, optimized, expand, max_actions, out_file);
    if (*graph) return cmd_graph(onto, expr);
    if (*replay) return cmd_replay(script, as_json);
    if (*serve) return cmd_serve(host, port, data_dir);
  } catch (const Error& e) {
    std::cerr << "error[" << error_code_name(e.code()) << "]: " << e.what() << "\n";
    return exit_status(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
