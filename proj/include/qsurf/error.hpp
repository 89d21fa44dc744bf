#pragma once

#include <stdexcept>
#include <string>

namespace qsurf {

enum class Errc {
  NotInvolution,
  NotPermutation,
  Disconnected,
  UnknownHoleFace,
  NonOrientableInconsistency,
  InvalidQuadrangulation,
  InvariantViolation,
  LambdaOutOfRange,
  DegenerateTreeCase,
  BudgetExceeded,
  EmptyFamily,
  CapExceeded,
  WorkBudgetExceeded,
  NotSimpleLoop,
  ParseError,
  InsufficientData,
  RejectionBudgetExceeded,
  MCMCDiagnosticsFailed,
  ConfigError,
};

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::NotInvolution: return "NotInvolution";
    case Errc::NotPermutation: return "NotPermutation";
    case Errc::Disconnected: return "Disconnected";
    case Errc::UnknownHoleFace: return "UnknownHoleFace";
    case Errc::NonOrientableInconsistency: return "NonOrientableInconsistency";
    case Errc::InvalidQuadrangulation: return "InvalidQuadrangulation";
    case Errc::InvariantViolation: return "InvariantViolation";
    case Errc::LambdaOutOfRange: return "LambdaOutOfRange";
    case Errc::DegenerateTreeCase: return "DegenerateTreeCase";
    case Errc::BudgetExceeded: return "BudgetExceeded";
    case Errc::EmptyFamily: return "EmptyFamily";
    case Errc::CapExceeded: return "CapExceeded";
    case Errc::WorkBudgetExceeded: return "WorkBudgetExceeded";
    case Errc::NotSimpleLoop: return "NotSimpleLoop";
    case Errc::ParseError: return "ParseError";
    case Errc::InsufficientData: return "InsufficientData";
    case Errc::RejectionBudgetExceeded: return "RejectionBudgetExceeded";
    case Errc::MCMCDiagnosticsFailed: return "MCMCDiagnosticsFailed";
    case Errc::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

struct Error : std::runtime_error {
  Errc code;
  Error(Errc c, const std::string& what)
      : std::runtime_error(std::string(errc_name(c)) + ": " + what), code(c) {}
};

}  // namespace qsurf
