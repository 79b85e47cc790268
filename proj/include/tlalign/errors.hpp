#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tlalign {

enum class ErrorCode {
  SyntaxError,
  UnknownPredicate,
  ArityMismatch,
  UnboundVariable,
  TemporalOperatorInCondition,
  EmptyActionList,
  DuplicateKey,
  ProbOutOfRange,
  TimeOutOfRange,
  GroundingExplosion,
  MissingProbability,
  UnknownWitnessLabel,
  NonDeterministicDatabase,
  UnsupportedOperatorInIntervalMode,
  TooManyFacts,
  DTauNotBelowDMax,
  EmptyDataset,
  NonFiniteLoss,
  DimensionMismatch,
  TooFewEpisodes,
  InvalidConfig,
  MalformedInput,
  IoError,
};

const char* error_code_name(ErrorCode code);

/// Exception carrying a machine-checkable code; parse errors also carry the
/// byte offset of the offending token (-1 when not applicable).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, std::ptrdiff_t offset = -1)
      : std::runtime_error(message), code_(code), offset_(offset) {}

  ErrorCode code() const { return code_; }
  std::ptrdiff_t offset() const { return offset_; }

 private:
  ErrorCode code_;
  std::ptrdiff_t offset_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message,
                              std::ptrdiff_t offset = -1) {
  throw Error(code, message, offset);
}

}  // namespace tlalign
