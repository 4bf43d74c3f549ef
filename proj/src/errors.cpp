#include "dqm/errors.hpp"

namespace dqm {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::SingularB: return "SingularB";
    case ErrorCode::QIsOne: return "QIsOne";
    case ErrorCode::QMismatch: return "QMismatch";
    case ErrorCode::BlockTooLarge: return "BlockTooLarge";
    case ErrorCode::BetaZero: return "BetaZero";
    case ErrorCode::BadTruncation: return "BadTruncation";
    case ErrorCode::GridTooSmall: return "GridTooSmall";
    case ErrorCode::GridMismatch: return "GridMismatch";
    case ErrorCode::IntervalTooSmall: return "IntervalTooSmall";
    case ErrorCode::OutOfDomain: return "OutOfDomain";
    case ErrorCode::IntegrationFailure: return "IntegrationFailure";
    case ErrorCode::InconclusiveFit: return "InconclusiveFit";
    case ErrorCode::WrongRegime: return "WrongRegime";
    case ErrorCode::NotNormalized: return "NotNormalized";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

IntegrationFailure::IntegrationFailure(double last_reliable_lambda, const std::string& message)
    : Error(ErrorCode::IntegrationFailure, message), last_lambda_(last_reliable_lambda) {}

void fail(ErrorCode code, const std::string& message) { throw Error(code, message); }

}  // namespace dqm
