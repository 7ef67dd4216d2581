#ifndef CARNOT_ERRORS_HPP
#define CARNOT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace carnot {

enum class ErrorCode {
  DimensionMismatch,
  AntisymmetryViolation,
  JacobiViolation,
  GradingViolation,
  NotStratified,
  NonInvertible,
  NotASubalgebra,
  NotHomogeneous,
  TrivialQuotient,
  OrderExhausted,
  RankDeficient,
  Inconsistent,
  LiftNotInvariant,
  Mismatch,
  NotInvariant,
  TheoremViolation,
  LiftFailed,
  ParseError,
  BadInput,
};

const char* error_code_name(ErrorCode code);

/// All structured failures carry a code plus a human-readable location string,
/// e.g. JacobiViolation with "(i=1,j=2,k=3,l=5)".
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + detail),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace carnot

#endif
