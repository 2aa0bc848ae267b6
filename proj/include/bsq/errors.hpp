#pragma once

#include <stdexcept>
#include <string>

namespace bsq {

enum class ErrorCode {
  ThetaOutOfRange,
  Infeasible,
  GridMismatch,
  ModeMismatch,
  ZeroField,
  CavitationViolation,
  RegimeMismatch,
  SolverDiverged,
  NonFinite,
  HypothesisViolation,
  ConfigInvalid,
  PreconditionViolation,
};

const char* to_string(ErrorCode c);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

inline const char* to_string(ErrorCode c) {
  switch (c) {
    case ErrorCode::ThetaOutOfRange: return "ThetaOutOfRange";
    case ErrorCode::Infeasible: return "Infeasible";
    case ErrorCode::GridMismatch: return "GridMismatch";
    case ErrorCode::ModeMismatch: return "ModeMismatch";
    case ErrorCode::ZeroField: return "ZeroField";
    case ErrorCode::CavitationViolation: return "CavitationViolation";
    case ErrorCode::RegimeMismatch: return "RegimeMismatch";
    case ErrorCode::SolverDiverged: return "SolverDiverged";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::HypothesisViolation: return "HypothesisViolation";
    case ErrorCode::ConfigInvalid: return "ConfigInvalid";
    case ErrorCode::PreconditionViolation: return "PreconditionViolation";
  }
  return "Unknown";
}

}  // namespace bsq
