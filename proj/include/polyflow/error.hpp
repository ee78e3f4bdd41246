#pragma once

#include <stdexcept>
#include <string>

namespace polyflow {

enum class ErrorCode {
  InvalidArgument,
  NonFinite,
  SchemaError,
  IoError,
  DegreeTooSmall,
  DegreeTooLarge,
  DuplicateRoot,
  IndexOutOfRange,
  SingularEvolution,
  MaxStepsExceeded,
  NotAtZero,
  IncompleteTrace,
  DiscriminantViolation,
  ModulusOutOfRange,
  RadicandNegative,
  NoTurningPoint,
  NoConvergence,
  InconsistentInit,
  StepFailure,
  UnknownSuite,
};

inline const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::SchemaError: return "SchemaError";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::DegreeTooSmall: return "DegreeTooSmall";
    case ErrorCode::DegreeTooLarge: return "DegreeTooLarge";
    case ErrorCode::DuplicateRoot: return "DuplicateRoot";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::SingularEvolution: return "SingularEvolution";
    case ErrorCode::MaxStepsExceeded: return "MaxStepsExceeded";
    case ErrorCode::NotAtZero: return "NotAtZero";
    case ErrorCode::IncompleteTrace: return "IncompleteTrace";
    case ErrorCode::DiscriminantViolation: return "DiscriminantViolation";
    case ErrorCode::ModulusOutOfRange: return "ModulusOutOfRange";
    case ErrorCode::RadicandNegative: return "RadicandNegative";
    case ErrorCode::NoTurningPoint: return "NoTurningPoint";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::InconsistentInit: return "InconsistentInit";
    case ErrorCode::StepFailure: return "StepFailure";
    case ErrorCode::UnknownSuite: return "UnknownSuite";
  }
  return "UnknownError";
}

/// Single exception type for the whole library; carries a machine-readable code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void raise(ErrorCode code, const std::string& msg) { throw Error(code, msg); }

/// True for inputs that parsed and validated but fall outside the algorithms' domain
/// (as opposed to malformed input or internal failure). CLI maps these to exit code 2.
inline bool out_of_scope(ErrorCode c) {
  switch (c) {
    case ErrorCode::SingularEvolution:
    case ErrorCode::DuplicateRoot:
    case ErrorCode::DiscriminantViolation:
    case ErrorCode::InconsistentInit:
    case ErrorCode::RadicandNegative:
    case ErrorCode::ModulusOutOfRange:
    case ErrorCode::NoConvergence:
    case ErrorCode::MaxStepsExceeded:
    case ErrorCode::DegreeTooLarge:
    case ErrorCode::NoTurningPoint:
    case ErrorCode::NotAtZero:
      return true;
    default:
      return false;
  }
}

}  // namespace polyflow
