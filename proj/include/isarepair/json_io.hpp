#pragma once

// JSON documents shared by the CLI reports, session snapshots and the HTTP
// service. Field names here are the public API.

#include <json.hpp>

#include "isarepair/abduction.hpp"
#include "isarepair/session.hpp"

namespace isarepair {

inline constexpr int kSchemaVersion = 1;

nlohmann::json to_json(const IsaStatement& s);
IsaStatement isa_from_json(const nlohmann::json& j);  // {"sub","super"}; BadRequest otherwise

nlohmann::json to_json(const RepairingAction& a);
nlohmann::json to_json(const SourceTarget& st);
nlohmann::json to_json(const SingleResult& r);
nlohmann::json to_json(const AbductionReport& r);

// Entry view with per-axiom verdict and repair flags.
nlohmann::json entry_json(const RepairSession& s, std::size_t idx);
nlohmann::json status_json(const RepairSession& s);
nlohmann::json hierarchy_json(const Hierarchy& h);

nlohmann::json save_snapshot(const RepairSession& s);
RepairSession load_snapshot(const nlohmann::json& j, AbductionLimits limits = {});

}  // namespace isarepair
