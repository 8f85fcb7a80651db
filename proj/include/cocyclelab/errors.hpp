#pragma once

#include <stdexcept>
#include <string>

namespace cocyclelab {

enum class ErrorCode {
  NonAdmissibleAlphabet,
  NotIrreducible,
  BracketUndefined,
  BudgetExceeded,
  WordNotInTable,
  NotSL2,
  DegenerateMatrix,
  DegenerateSingularGap,
  NotBunched,
  NotOnStableSet,
  NotOnUnstableSet,
  NotOneStep,
  EmptySearchSet,
  IdentityResidualExceeded,
  ConeUndefined,
  ConeStepViolated,
  NoReturn,
  ParseError,
  InvalidSpec,
  Internal,
};

inline const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::NonAdmissibleAlphabet: return "NonAdmissibleAlphabet";
    case ErrorCode::NotIrreducible: return "NotIrreducible";
    case ErrorCode::BracketUndefined: return "BracketUndefined";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::WordNotInTable: return "WordNotInTable";
    case ErrorCode::NotSL2: return "NotSL2";
    case ErrorCode::DegenerateMatrix: return "DegenerateMatrix";
    case ErrorCode::DegenerateSingularGap: return "DegenerateSingularGap";
    case ErrorCode::NotBunched: return "NotBunched";
    case ErrorCode::NotOnStableSet: return "NotOnStableSet";
    case ErrorCode::NotOnUnstableSet: return "NotOnUnstableSet";
    case ErrorCode::NotOneStep: return "NotOneStep";
    case ErrorCode::EmptySearchSet: return "EmptySearchSet";
    case ErrorCode::IdentityResidualExceeded: return "IdentityResidualExceeded";
    case ErrorCode::ConeUndefined: return "ConeUndefined";
    case ErrorCode::ConeStepViolated: return "ConeStepViolated";
    case ErrorCode::NoReturn: return "NoReturn";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InvalidSpec: return "InvalidSpec";
    case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what),
        code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace cocyclelab
