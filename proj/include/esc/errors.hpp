#pragma once

#include <stdexcept>
#include <string>

namespace esc {

enum class ErrorCode {
  ZeroDenominator,
  DivisionByZero,
  ContextMismatch,
  DegeneratePoint,
  SpecializedPole,
  UnsupportedType,
  BoundExceeded,
  SingularMatrix,
  SlopeOutOfRange,
  LimitDoesNotExist,
  InconsistentLevels,
  InsufficientPrecision,
  InvalidArgument,
};

const char* error_name(ErrorCode c);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode c, const std::string& what)
      : std::runtime_error(std::string(error_name(c)) + ": " + what), code_(c) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace esc
