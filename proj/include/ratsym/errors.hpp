#pragma once

#include <stdexcept>
#include <string>

namespace ratsym {

enum class ErrorKind {
  SingularMinor,        // leading principal minor numerically singular
  PoleOnSupport,        // evaluation point too close to a support node
  CoincidentArguments,  // rational kernel term 1/(a-b) with a ~ b
  CaseMismatch,         // spec shape outside the formula's regime
  CapExceeded,          // requested degree beyond the constructed system
  BudgetExceeded,       // brute-force term count above the budget
  ZeroPartition,        // normalization sum vanishes (degenerate measure)
  DegenerateExtension,  // modifier point collides with an existing parameter
  InvalidArgument,      // malformed measure/spec data
  ParseError,           // unreadable or ill-formed input file
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message, int index = -1)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message),
        kind_(kind),
        index_(index) {}

  ErrorKind kind() const { return kind_; }

  /// Context-dependent index, e.g. the size of the offending minor. -1 if unused.
  int index() const { return index_; }

 private:
  ErrorKind kind_;
  int index_;
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::SingularMinor: return "SingularMinor";
    case ErrorKind::PoleOnSupport: return "PoleOnSupport";
    case ErrorKind::CoincidentArguments: return "CoincidentArguments";
    case ErrorKind::CaseMismatch: return "CaseMismatch";
    case ErrorKind::CapExceeded: return "CapExceeded";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::ZeroPartition: return "ZeroPartition";
    case ErrorKind::DegenerateExtension: return "DegenerateExtension";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "UnknownError";
}

}  // namespace ratsym
