#pragma once

#include <stdexcept>
#include <string>

namespace oicrel {

enum class ErrorCode {
  ZeroInDivisor,
  ShapeMismatch,
  InvalidConfig,
  EnumerationTooLarge,
  NonUniformReadiness,
  NonIdenticalWakeup,
  NoCandidate,
  NegativeTime,
  NonConvergence,
  Unrepairable,
  EmptySet,
  ParseError,
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::ZeroInDivisor: return "ZeroInDivisor";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::EnumerationTooLarge: return "EnumerationTooLarge";
    case ErrorCode::NonUniformReadiness: return "NonUniformReadiness";
    case ErrorCode::NonIdenticalWakeup: return "NonIdenticalWakeup";
    case ErrorCode::NoCandidate: return "NoCandidate";
    case ErrorCode::NegativeTime: return "NegativeTime";
    case ErrorCode::NonConvergence: return "NonConvergence";
    case ErrorCode::Unrepairable: return "Unrepairable";
    case ErrorCode::EmptySet: return "EmptySet";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above so
/// front ends can map it onto an exit status without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace oicrel
