#include "citeflow/error.hpp"

namespace citeflow {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::UnknownVenue: return "UnknownVenue";
    case ErrorCode::UnknownPublication: return "UnknownPublication";
    case ErrorCode::UnknownSubjectCategory: return "UnknownSubjectCategory";
    case ErrorCode::UnknownArea: return "UnknownArea";
    case ErrorCode::DuplicateEdge: return "DuplicateEdge";
    case ErrorCode::SelfCitation: return "SelfCitation";
    case ErrorCode::EmptyCandidateSet: return "EmptyCandidateSet";
    case ErrorCode::DuplicateCandidate: return "DuplicateCandidate";
    case ErrorCode::DuplicateId: return "DuplicateId";
    case ErrorCode::InconsistentArea: return "InconsistentArea";
    case ErrorCode::YearOutOfRange: return "YearOutOfRange";
    case ErrorCode::EmptyRegistry: return "EmptyRegistry";
    case ErrorCode::InvalidWindow: return "InvalidWindow";
    case ErrorCode::EmptyTieSet: return "EmptyTieSet";
    case ErrorCode::NoCitationsInWindow: return "NoCitationsInWindow";
    case ErrorCode::NotCohortPublication: return "NotCohortPublication";
    case ErrorCode::EmptySubjectCategory: return "EmptySubjectCategory";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::TooFewPoints: return "TooFewPoints";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::InvalidAssignment: return "InvalidAssignment";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

bool is_validation_error(ErrorCode code) noexcept {
  return code != ErrorCode::ParseError && code != ErrorCode::IoError;
}

namespace {

std::string compose(ErrorCode code, const std::string& subject, const std::string& detail) {
  std::string msg(to_string(code));
  msg += "(\"";
  msg += subject;
  msg += "\")";
  if (!detail.empty()) {
    msg += ": ";
    msg += detail;
  }
  return msg;
}

}  // namespace

Error::Error(ErrorCode code, std::string subject, const std::string& detail)
    : std::runtime_error(compose(code, subject, detail)), code_(code), subject_(std::move(subject)) {}

}  // namespace citeflow
