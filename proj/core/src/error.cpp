#include "iconix/error.hpp"

namespace iconix {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::NotFound: return "NotFound";
    case ErrorCode::StageOrderViolation: return "StageOrderViolation";
    case ErrorCode::BackendUnavailable: return "BackendUnavailable";
    case ErrorCode::BackendTimeout: return "BackendTimeout";
    case ErrorCode::MalformedResponse: return "MalformedResponse";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::EmptyPool: return "EmptyPool";
    case ErrorCode::InvalidK: return "InvalidK";
    case ErrorCode::AlignmentMismatch: return "AlignmentMismatch";
    case ErrorCode::SubjectMismatch: return "SubjectMismatch";
    case ErrorCode::SelectionOutOfBucket: return "SelectionOutOfBucket";
    case ErrorCode::InsufficientFrames: return "InsufficientFrames";
    case ErrorCode::NonMonotonicPicks: return "NonMonotonicPicks";
    case ErrorCode::IncompleteVariant: return "IncompleteVariant";
    case ErrorCode::CorruptStore: return "CorruptStore";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

}  // namespace iconix
