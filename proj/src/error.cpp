#include "embedrank/error.hpp"

namespace embedrank {

std::string_view error_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NonPrimeModulus: return "NonPrimeModulus";
    case ErrorCode::ReduciblePolynomial: return "ReduciblePolynomial";
    case ErrorCode::NoDefaultIrreducible: return "NoDefaultIrreducible";
    case ErrorCode::ZeroInverse: return "ZeroInverse";
    case ErrorCode::SpecMismatch: return "SpecMismatch";
    case ErrorCode::BadIndex: return "BadIndex";
    case ErrorCode::BadDimension: return "BadDimension";
    case ErrorCode::NoField: return "NoField";
    case ErrorCode::NonUniformBlockSize: return "NonUniformBlockSize";
    case ErrorCode::CapExceeded: return "CapExceeded";
    case ErrorCode::WrongParameters: return "WrongParameters";
    case ErrorCode::NotACodeword: return "NotACodeword";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::BadOrder: return "BadOrder";
    case ErrorCode::NotBent: return "NotBent";
    case ErrorCode::NotGoodBlock: return "NotGoodBlock";
    case ErrorCode::InfeasibleInstance: return "InfeasibleInstance";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace embedrank
