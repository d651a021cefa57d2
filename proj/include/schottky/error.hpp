#pragma once

#include <stdexcept>
#include <string>

namespace schottky {

enum class ErrorCode {
  ParseError,
  InvalidParameter,
  RankMismatch,
  ParabolicOrElliptic,
  CoincidentFixedPoints,
  DegenerateMarking,
  NotClassicalSchottky,
  CertificateRequired,
  EmptyWord,
  MultiplierOnUnitCircle,
  DivergenceSuspected,
  NotNormalized,
  NotRealGroup,
  PathCrossesCircle,
  PoleInDomain,
  RankDeficientSeeds,
  IntegralityViolation,
  PoleAtZ0,
  NonInvertibleLeadingTerm,
};

const char* error_name(ErrorCode code);

// Input errors map to CLI exit status 2, everything else to 1.
bool is_input_error(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& what);

}  // namespace schottky
