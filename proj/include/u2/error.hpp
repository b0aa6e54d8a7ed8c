#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace u2 {

enum class ErrorCode {
  DivisionByZero,
  FieldMismatch,
  NoSquareRoot,
  ReducibleModulus,
  DimensionMismatch,
  NotASubspace,
  NotAbelian,
  UnsupportedField,
  NotAnIdeal,
  AlgebraMismatch,
  PreconditionFailed,
  BadParameters,
  GenerationBudgetExceeded,
  BudgetExceeded,
  LadderExhausted,
  SyntaxError,
  IndexOutOfRange,
  AxiomViolation,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::FieldMismatch: return "FieldMismatch";
    case ErrorCode::NoSquareRoot: return "NoSquareRoot";
    case ErrorCode::ReducibleModulus: return "ReducibleModulus";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotASubspace: return "NotASubspace";
    case ErrorCode::NotAbelian: return "NotAbelian";
    case ErrorCode::UnsupportedField: return "UnsupportedField";
    case ErrorCode::NotAnIdeal: return "NotAnIdeal";
    case ErrorCode::AlgebraMismatch: return "AlgebraMismatch";
    case ErrorCode::PreconditionFailed: return "PreconditionFailed";
    case ErrorCode::BadParameters: return "BadParameters";
    case ErrorCode::GenerationBudgetExceeded: return "GenerationBudgetExceeded";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::LadderExhausted: return "LadderExhausted";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::AxiomViolation: return "AxiomViolation";
  }
  return "Unknown";
}

}  // namespace u2
