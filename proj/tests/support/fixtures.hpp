#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "isarepair/ontology_parser.hpp"

namespace fixtures {

inline std::string read_file(const std::string& name) {
  std::ifstream in(std::string(ISAREPAIR_DATA_DIR) + "/" + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline isarepair::Terminology pizza() { return isarepair::load_terminology(read_file("pizza.onto")); }

inline std::vector<isarepair::IsaStatement> pizza_missing() {
  return isarepair::parse_missing(read_file("pizza.missing"));
}

}  // namespace fixtures
