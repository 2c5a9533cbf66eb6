#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace isarepair {

// Error taxonomy shared by the library, the CLI (exit codes) and the HTTP
// service (machine-readable codes).
enum class ErrorCode {
  SyntaxError,
  UndeclaredRole,
  ReservedMarker,
  SelfSubsumption,
  MultipleDefinition,
  CyclicDefinition,
  WouldCreateCycle,
  UnknownName,
  ResourceLimit,
  AlreadyEntailed,
  PreconditionViolated,
  LeafNotOpen,
  ConflictingVerdict,
  AxiomNotInAction,
  ChoiceOutsideSets,
  NothingToRevoke,
  InvalidIndex,
  UnknownSession,
  StaleRevision,
  BadRequest,
  IoError,
};

std::string_view error_code_name(ErrorCode code);

// Process exit status used by the CLI for a given error.
int exit_status(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string message)
      : std::runtime_error(std::move(message)), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Parse failure with a 1-based source position.
class SourceError : public Error {
 public:
  SourceError(ErrorCode code, int line, int column, std::string message)
      : Error(code, std::to_string(line) + ":" + std::to_string(column) + ": " + message),
        line_(line),
        column_(column),
        detail_(std::move(message)) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  int line_;
  int column_;
  std::string detail_;
};

}  // namespace isarepair
