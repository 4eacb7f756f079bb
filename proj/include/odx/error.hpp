#pragma once

#include <stdexcept>
#include <string>

namespace odx {

enum class ErrorKind {
  kInvalidArgument,
  kParse,
  kIo,
  kDuplicateEdge,
  kNegativeWeight,
  kIndexOutOfRange,
  kUnknownVertex,
  kLabelDomainMismatch,
  kEmptySide,
  kInadmissiblePolicy,
  kNonUniformWeights,
  kEmptyTrajectory,
  kScoreOutOfRange,
  kGroundTruthOutsideCandidates,
  kInvariantViolation,
};

const char* to_string(ErrorKind kind) noexcept;

// True for the kinds a CLI reports as "the input was well-formed but invalid".
bool is_validation_error(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace odx
