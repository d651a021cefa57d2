#include "schottky/error.hpp"

namespace schottky {

const char* error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InvalidParameter: return "InvalidParameter";
    case ErrorCode::RankMismatch: return "RankMismatch";
    case ErrorCode::ParabolicOrElliptic: return "ParabolicOrElliptic";
    case ErrorCode::CoincidentFixedPoints: return "CoincidentFixedPoints";
    case ErrorCode::DegenerateMarking: return "DegenerateMarking";
    case ErrorCode::NotClassicalSchottky: return "NotClassicalSchottky";
    case ErrorCode::CertificateRequired: return "CertificateRequired";
    case ErrorCode::EmptyWord: return "EmptyWord";
    case ErrorCode::MultiplierOnUnitCircle: return "MultiplierOnUnitCircle";
    case ErrorCode::DivergenceSuspected: return "DivergenceSuspected";
    case ErrorCode::NotNormalized: return "NotNormalized";
    case ErrorCode::NotRealGroup: return "NotRealGroup";
    case ErrorCode::PathCrossesCircle: return "PathCrossesCircle";
    case ErrorCode::PoleInDomain: return "PoleInDomain";
    case ErrorCode::RankDeficientSeeds: return "RankDeficientSeeds";
    case ErrorCode::IntegralityViolation: return "IntegralityViolation";
    case ErrorCode::PoleAtZ0: return "PoleAtZ0";
    case ErrorCode::NonInvertibleLeadingTerm: return "NonInvertibleLeadingTerm";
  }
  return "Unknown";
}

bool is_input_error(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError:
    case ErrorCode::InvalidParameter:
    case ErrorCode::RankMismatch:
    case ErrorCode::ParabolicOrElliptic:
    case ErrorCode::CoincidentFixedPoints:
    case ErrorCode::DegenerateMarking:
    case ErrorCode::PoleAtZ0:
      return true;
    default:
      return false;
  }
}

void fail(ErrorCode code, const std::string& what) {
  throw Error(code, std::string(error_name(code)) + ": " + what);
}

}  // namespace schottky
