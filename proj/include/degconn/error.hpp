#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace degconn {

enum class ErrorKind {
  EmptySequence,
  NegativeDegree,
  ZeroDegree,
  OddSum,
  NotGraphical,
  Parse,
  InvalidArgument,
  PartialMatching,
  InvalidSwitch,
  AttemptsExhausted,
  TooLarge,
  NotExtendable,
  TrialsTooFew,
  InfeasibleFamily,
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::EmptySequence: return "EmptySequence";
    case ErrorKind::NegativeDegree: return "NegativeDegree";
    case ErrorKind::ZeroDegree: return "ZeroDegree";
    case ErrorKind::OddSum: return "OddSum";
    case ErrorKind::NotGraphical: return "NotGraphical";
    case ErrorKind::Parse: return "Parse";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::PartialMatching: return "PartialMatching";
    case ErrorKind::InvalidSwitch: return "InvalidSwitch";
    case ErrorKind::AttemptsExhausted: return "AttemptsExhausted";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::NotExtendable: return "NotExtendable";
    case ErrorKind::TrialsTooFew: return "TrialsTooFew";
    case ErrorKind::InfeasibleFamily: return "InfeasibleFamily";
  }
  return "Unknown";
}

// CLI exit codes: 0 success, 1 usage, 2 infeasible input, 3 sampler
// exhaustion, 4 oracle size guard.
inline int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::EmptySequence:
    case ErrorKind::NegativeDegree:
    case ErrorKind::ZeroDegree:
    case ErrorKind::OddSum:
    case ErrorKind::NotGraphical:
    case ErrorKind::InfeasibleFamily:
    case ErrorKind::NotExtendable:
      return 2;
    case ErrorKind::AttemptsExhausted:
      return 3;
    case ErrorKind::TooLarge:
      return 4;
    default:
      return 1;
  }
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace degconn
