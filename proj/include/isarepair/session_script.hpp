#pragma once

// Line-oriented session scripts, one command per line ('#' comments):
//
//   ontology <file>                     load the ontology (relative to the script)
//   missing <file>                      load missing relations and open the session
//   generate <entry> [basic|optimized]
//   validate <A> <= <B> correct|incorrect
//   repair <entry> <A> <= <B> as <S> <= <T>
//   revoke <entry>
//   actions <entry>                     print the entry's actions
//   status                              print the status table
//   save <file> / load <file>           session snapshots
//
// <entry> is a 0-based index or the relation itself, `<A> <= <B>`.

#include <filesystem>
#include <optional>
#include <ostream>
#include <string_view>

#include "isarepair/session.hpp"

namespace isarepair {

// Runs the script, writing a transcript to `out`. Errors carry the script
// line as a SourceError.
std::optional<RepairSession> run_session_script(std::string_view text, const std::filesystem::path& base_dir,
                                                std::ostream& out, AbductionLimits limits = {});

// Human-readable status table.
std::string format_status(const RepairSession& s);

}  // namespace isarepair
