#include "isarepair/error.hpp"

namespace isarepair {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::SyntaxError: return "syntax_error";
    case ErrorCode::UndeclaredRole: return "undeclared_role";
    case ErrorCode::ReservedMarker: return "reserved_marker";
    case ErrorCode::SelfSubsumption: return "self_subsumption";
    case ErrorCode::MultipleDefinition: return "multiple_definition";
    case ErrorCode::CyclicDefinition: return "cyclic_definition";
    case ErrorCode::WouldCreateCycle: return "would_create_cycle";
    case ErrorCode::UnknownName: return "unknown_name";
    case ErrorCode::ResourceLimit: return "resource_limit";
    case ErrorCode::AlreadyEntailed: return "already_entailed";
    case ErrorCode::PreconditionViolated: return "precondition_violated";
    case ErrorCode::LeafNotOpen: return "leaf_not_open";
    case ErrorCode::ConflictingVerdict: return "conflicting_verdict";
    case ErrorCode::AxiomNotInAction: return "axiom_not_in_action";
    case ErrorCode::ChoiceOutsideSets: return "choice_outside_sets";
    case ErrorCode::NothingToRevoke: return "nothing_to_revoke";
    case ErrorCode::InvalidIndex: return "invalid_index";
    case ErrorCode::UnknownSession: return "unknown_session";
    case ErrorCode::StaleRevision: return "stale_revision";
    case ErrorCode::BadRequest: return "bad_request";
    case ErrorCode::IoError: return "io_error";
  }
  return "unknown";
}

int exit_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::SyntaxError:
    case ErrorCode::UndeclaredRole:
    case ErrorCode::ReservedMarker:
    case ErrorCode::SelfSubsumption:
    case ErrorCode::MultipleDefinition:
    case ErrorCode::CyclicDefinition: return 2;
    case ErrorCode::UnknownName:
    case ErrorCode::WouldCreateCycle: return 3;
    case ErrorCode::AlreadyEntailed:
    case ErrorCode::PreconditionViolated: return 4;
    case ErrorCode::ResourceLimit: return 5;
    case ErrorCode::IoError: return 6;
    case ErrorCode::LeafNotOpen:
    case ErrorCode::ConflictingVerdict:
    case ErrorCode::AxiomNotInAction:
    case ErrorCode::ChoiceOutsideSets:
    case ErrorCode::NothingToRevoke:
    case ErrorCode::InvalidIndex:
    case ErrorCode::UnknownSession:
    case ErrorCode::StaleRevision: return 7;
    case ErrorCode::BadRequest: return 8;
  }
  return 1;
}

}  // namespace isarepair
