#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace iconix {

enum class ErrorCode {
  InvalidConfig,
  NotFound,
  StageOrderViolation,
  BackendUnavailable,
  BackendTimeout,
  MalformedResponse,
  DimensionMismatch,
  EmptyPool,
  InvalidK,
  AlignmentMismatch,
  SubjectMismatch,
  SelectionOutOfBucket,
  InsufficientFrames,
  NonMonotonicPicks,
  IncompleteVariant,
  CorruptStore,
  Io,
};

std::string_view to_string(ErrorCode code);

// True for the three kinds a backend call can surface.
inline bool is_backend_error(ErrorCode code) {
  return code == ErrorCode::BackendUnavailable || code == ErrorCode::BackendTimeout ||
         code == ErrorCode::MalformedResponse;
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace iconix
