#include "odx/error.hpp"

namespace odx {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::kInvalidArgument: return "InvalidArgument";
    case ErrorKind::kParse: return "ParseError";
    case ErrorKind::kIo: return "IoError";
    case ErrorKind::kDuplicateEdge: return "DuplicateEdge";
    case ErrorKind::kNegativeWeight: return "NegativeWeight";
    case ErrorKind::kIndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::kUnknownVertex: return "UnknownVertex";
    case ErrorKind::kLabelDomainMismatch: return "LabelDomainMismatch";
    case ErrorKind::kEmptySide: return "EmptySide";
    case ErrorKind::kInadmissiblePolicy: return "InadmissiblePolicy";
    case ErrorKind::kNonUniformWeights: return "NonUniformWeights";
    case ErrorKind::kEmptyTrajectory: return "EmptyTrajectory";
    case ErrorKind::kScoreOutOfRange: return "ScoreOutOfRange";
    case ErrorKind::kGroundTruthOutsideCandidates: return "GroundTruthOutsideCandidates";
    case ErrorKind::kInvariantViolation: return "InvariantViolation";
  }
  return "Unknown";
}

bool is_validation_error(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::kParse:
    case ErrorKind::kIo:
    case ErrorKind::kInvalidArgument:
    case ErrorKind::kInvariantViolation:
      return false;
    default:
      return true;
  }
}

}  // namespace odx
