#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace embedrank {

enum class ErrorCode {
  NonPrimeModulus,
  ReduciblePolynomial,
  NoDefaultIrreducible,
  ZeroInverse,
  SpecMismatch,
  BadIndex,
  BadDimension,
  NoField,
  NonUniformBlockSize,
  CapExceeded,
  WrongParameters,
  NotACodeword,
  TooLarge,
  BadOrder,
  NotBent,
  NotGoodBlock,
  InfeasibleInstance,
  ParseError,
  IoError,
};

std::string_view error_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace embedrank
