#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace citeflow {

enum class ErrorCode {
  // referential / structural corpus errors
  UnknownVenue,
  UnknownPublication,
  UnknownSubjectCategory,
  UnknownArea,
  DuplicateEdge,
  SelfCitation,
  EmptyCandidateSet,
  DuplicateCandidate,
  DuplicateId,
  InconsistentArea,
  YearOutOfRange,
  EmptyRegistry,
  InvalidWindow,
  // analysis errors
  EmptyTieSet,
  NoCitationsInWindow,
  NotCohortPublication,
  EmptySubjectCategory,
  LengthMismatch,
  TooFewPoints,
  InvalidConfig,
  InvalidAssignment,
  // I/O
  ParseError,
  IoError,
};

std::string_view to_string(ErrorCode code) noexcept;

/// True for errors that mean "the input data is inconsistent" as opposed to
/// "the input could not be read".
bool is_validation_error(ErrorCode code) noexcept;

/// Library-wide exception. `subject()` names the offending record (a pub id,
/// an edge "citing->cited", or "file:line" for parse errors).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string subject, const std::string& detail = {});

  ErrorCode code() const noexcept { return code_; }
  const std::string& subject() const noexcept { return subject_; }

 private:
  ErrorCode code_;
  std::string subject_;
};

}  // namespace citeflow
