#include "bp/error.hpp"

namespace bp {

std::string_view error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::InvalidOperand: return "InvalidOperand";
    case ErrorCode::NotInvertible: return "NotInvertible";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::HenselFailure: return "HenselFailure";
    case ErrorCode::NotAField: return "NotAField";
    case ErrorCode::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorCode::NotKummer: return "NotKummer";
    case ErrorCode::NotMonogenicAtQ: return "NotMonogenicAtQ";
    case ErrorCode::IncompleteFactorization: return "IncompleteFactorization";
    case ErrorCode::InsufficientClassData: return "InsufficientClassData";
    case ErrorCode::LeopoldtRankWarning: return "LeopoldtRankWarning";
    case ErrorCode::NotASublattice: return "NotASublattice";
    case ErrorCode::SchemaError: return "SchemaError";
  }
  return "Unknown";
}

}  // namespace bp
