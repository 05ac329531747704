#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hodge {

/// Machine-readable failure categories. The CLI maps these to stable
/// string codes in reports.
enum class ErrorCode {
  DimensionMismatch,
  NotContained,
  NotNilpotent,
  NotCommuting,
  NotPreserved,
  IndexOutsideLattice,
  InvalidArgument,
  PreconditionFailed,
  WeightMismatch,
  Parse,
  InvariantViolation,
  Internal,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DimensionMismatch: return "dimension-mismatch";
    case ErrorCode::NotContained: return "not-contained";
    case ErrorCode::NotNilpotent: return "not-nilpotent";
    case ErrorCode::NotCommuting: return "not-commuting";
    case ErrorCode::NotPreserved: return "not-preserved";
    case ErrorCode::IndexOutsideLattice: return "index-outside-lattice";
    case ErrorCode::InvalidArgument: return "invalid-argument";
    case ErrorCode::PreconditionFailed: return "precondition-failed";
    case ErrorCode::WeightMismatch: return "weight-mismatch";
    case ErrorCode::Parse: return "parse-error";
    case ErrorCode::InvariantViolation: return "invariant-violation";
    case ErrorCode::Internal: return "internal";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

inline void require(bool condition, ErrorCode code, const std::string& what) {
  if (!condition) fail(code, what);
}

}  // namespace hodge
