#pragma once

#include <stdexcept>
#include <string>

namespace copolar {

enum class ErrorKind {
  NonFinite,
  Degenerate,
  OutsideCone,
  EmptyFootprint,
  DegenerateSupport,
  Singular,
  RankDeficient,
  NoiseBudgetExceeded,
  NotOnBoundary,
  Unsupported,
  InvalidArgument,
  ParseError,
  UnknownAudit,
};

const char* to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library carries a kind so callers (the CLI in
/// particular) can map it to an exit status without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::NonFinite: return "NonFinite";
    case ErrorKind::Degenerate: return "Degenerate";
    case ErrorKind::OutsideCone: return "OutsideCone";
    case ErrorKind::EmptyFootprint: return "EmptyFootprint";
    case ErrorKind::DegenerateSupport: return "DegenerateSupport";
    case ErrorKind::Singular: return "Singular";
    case ErrorKind::RankDeficient: return "RankDeficient";
    case ErrorKind::NoiseBudgetExceeded: return "NoiseBudgetExceeded";
    case ErrorKind::NotOnBoundary: return "NotOnBoundary";
    case ErrorKind::Unsupported: return "Unsupported";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::UnknownAudit: return "UnknownAudit";
  }
  return "Unknown";
}

}  // namespace copolar
