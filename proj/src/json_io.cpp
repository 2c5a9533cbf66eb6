#include "isarepair/json_io.hpp"

#include "isarepair/error.hpp"
#include "isarepair/ontology_parser.hpp"

namespace isarepair {

using nlohmann::json;

json to_json(const IsaStatement& s) { return {{"sub", s.sub}, {"super", s.super}}; }

IsaStatement isa_from_json(const json& j) {
  if (!j.is_object() || !j.contains("sub") || !j.contains("super") || !j["sub"].is_string() ||
      !j["super"].is_string()) {
    throw Error(ErrorCode::BadRequest, "expected an is-a object with string fields 'sub' and 'super'");
  }
  return {j["sub"].get<std::string>(), j["super"].get<std::string>()};
}

json to_json(const RepairingAction& a) {
  json axioms = json::array();
  for (const auto& s : a.axioms()) axioms.push_back(to_json(s));
  return axioms;
}

namespace {

json actions_json(const std::vector<RepairingAction>& v) {
  json out = json::array();
  for (const auto& a : v) out.push_back(to_json(a));
  return out;
}

}  // namespace

json to_json(const SourceTarget& st) { return {{"source", st.source}, {"target", st.target}}; }

json to_json(const SingleResult& r) {
  return {{"relation", to_json(r.relation)},
          {"actions", actions_json(r.actions)},
          {"candidates", actions_json(r.candidates)},
          {"discarded_cyclic", actions_json(r.discarded_cyclic)},
          {"discarded_incoherent", actions_json(r.discarded_incoherent)},
          {"discarded_not_entailing", actions_json(r.discarded_not_entailing)},
          {"stats",
           {{"graph_nodes", r.stats.graph_nodes},
            {"open_leaves", r.stats.open_leaves},
            {"candidates_explored", r.stats.candidates_explored},
            {"truncated", r.stats.truncated}}}};
}

json to_json(const AbductionReport& r) {
  json missing = json::array();
  for (const auto& m : r.missing) missing.push_back(to_json(m));
  json per = json::array();
  for (const auto& p : r.per_relation) per.push_back(to_json(p));
  json out = {{"schema_version", kSchemaVersion},
              {"missing", missing},
              {"per_relation", per},
              {"combined",
               {{"actions", actions_json(r.combined.actions)},
                {"discarded_cyclic", actions_json(r.combined.discarded_cyclic)},
                {"discarded_incoherent", actions_json(r.combined.discarded_incoherent)},
                {"discarded_not_entailing", actions_json(r.combined.discarded_not_entailing)},
                {"truncated", r.combined.truncated}}}};
  if (!r.alternatives.empty()) {
    json alts = json::array();
    for (const auto& a : r.alternatives) {
      alts.push_back({{"action", to_json(a.action)}, {"alternatives", actions_json(a.alternatives)}});
    }
    out["alternatives"] = alts;
  }
  return out;
}

json entry_json(const RepairSession& s, std::size_t idx) {
  const auto& e = s.entry(idx);
  json actions = json::array();
  for (const auto& a : e.actions) {
    json axioms = json::array();
    for (const auto& ax : a.axioms()) {
      json item = to_json(ax);
      item["verdict"] = verdict_name(s.verdict(ax));
      item["repaired"] = s.axiom_repaired(ax);
      axioms.push_back(item);
    }
    actions.push_back({{"axioms", axioms}});
  }
  return {{"index", idx},
          {"relation", to_json(e.relation)},
          {"status", entry_status_name(s.status(idx))},
          {"generated", e.generated},
          {"actions", actions}};
}

json status_json(const RepairSession& s) {
  auto sum = s.summary();
  json entries = json::array();
  for (std::size_t i = 0; i < sum.entries.size(); ++i) {
    const auto& e = sum.entries[i];
    entries.push_back({{"index", i},
                       {"relation", to_json(e.relation)},
                       {"status", entry_status_name(e.status)},
                       {"generated", e.generated},
                       {"action_count", e.action_count}});
  }
  json added = json::array();
  for (const auto& a : sum.added) added.push_back(to_json(a));
  return {{"entries", entries},
          {"verdicts", {{"correct", sum.correct}, {"incorrect", sum.incorrect}}},
          {"added", added},
          {"revision", sum.revision}};
}

json hierarchy_json(const Hierarchy& h) {
  json edges = json::array();
  for (const auto& e : h.edges) edges.push_back({{"sub", e.sub}, {"super", e.super}, {"tag", edge_tag_name(e.tag)}});
  return {{"names", h.names}, {"edges", edges}};
}

json save_snapshot(const RepairSession& s) {
  json entries = json::array();
  for (const auto& e : s.entries()) {
    entries.push_back({{"relation", to_json(e.relation)}, {"generated", e.generated}, {"actions", actions_json(e.actions)}});
  }
  json verdicts = json::array();
  for (const auto& [ax, v] : s.verdicts()) {
    json item = to_json(ax);
    item["verdict"] = verdict_name(v);
    verdicts.push_back(item);
  }
  json edits = json::array();
  for (const auto& e : s.edits()) {
    edits.push_back({{"entry", e.entry ? json(*e.entry) : json(nullptr)},
                     {"origin", to_json(e.origin)},
                     {"applied", to_json(e.applied)}});
  }
  return {{"schema_version", kSchemaVersion},
          {"ontology", serialize_ontology(s.base())},
          {"entries", entries},
          {"verdicts", verdicts},
          {"edits", edits},
          {"revision", s.revision()}};
}

RepairSession load_snapshot(const json& j, AbductionLimits limits) {
  try {
    if (j.at("schema_version").get<int>() != kSchemaVersion) {
      throw Error(ErrorCode::BadRequest, "unsupported snapshot schema version");
    }
    Terminology base = load_terminology(j.at("ontology").get<std::string>());
    std::vector<MissingEntry> entries;
    for (const auto& e : j.at("entries")) {
      MissingEntry m{isa_from_json(e.at("relation")), e.at("generated").get<bool>(), {}};
      for (const auto& a : e.at("actions")) {
        std::vector<IsaStatement> axioms;
        for (const auto& ax : a) axioms.push_back(isa_from_json(ax));
        m.actions.emplace_back(std::move(axioms));
      }
      entries.push_back(std::move(m));
    }
    std::map<IsaStatement, Verdict> verdicts;
    for (const auto& v : j.at("verdicts")) verdicts[isa_from_json(v)] = parse_verdict(v.at("verdict").get<std::string>());
    std::vector<EditRecord> edits;
    for (const auto& e : j.at("edits")) {
      std::optional<std::size_t> entry;
      if (!e.at("entry").is_null()) entry = e.at("entry").get<std::size_t>();
      edits.push_back({entry, isa_from_json(e.at("origin")), isa_from_json(e.at("applied"))});
    }
    return RepairSession::restore(std::move(base), std::move(entries), std::move(verdicts), std::move(edits),
                                  j.at("revision").get<std::uint64_t>(), limits);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::BadRequest, std::string("malformed snapshot: ") + e.what());
  }
}

}  // namespace isarepair
