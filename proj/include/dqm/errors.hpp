#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dqm {

enum class ErrorCode {
  InvalidArgument,
  SingularB,
  QIsOne,
  QMismatch,
  BlockTooLarge,
  BetaZero,
  BadTruncation,
  GridTooSmall,
  GridMismatch,
  IntervalTooSmall,
  OutOfDomain,
  IntegrationFailure,
  InconclusiveFit,
  WrongRegime,
  NotNormalized,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Base exception for every failure raised by the library. The code is
/// stable and is what callers (and the CLI) dispatch on.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Raised by the eigenvalue ODE integrator when the adaptive stepper gives
/// up; carries the last abscissa at which the solution was still trusted.
class IntegrationFailure : public Error {
 public:
  IntegrationFailure(double last_reliable_lambda, const std::string& message);

  double last_reliable_lambda() const noexcept { return last_lambda_; }

 private:
  double last_lambda_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message);

}  // namespace dqm
