#include "pf/error.hpp"

namespace pf {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::EmptySequence: return "EmptySequence";
    case ErrorCode::NotAForest: return "NotAForest";
    case ErrorCode::NotATree: return "NotATree";
    case ErrorCode::DegenerateSigma: return "DegenerateSigma";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::InvalidShiftIndex: return "InvalidShiftIndex";
    case ErrorCode::NotFirstPassage: return "NotFirstPassage";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::EmptySample: return "EmptySample";
    case ErrorCode::InvalidMetric: return "InvalidMetric";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace pf
