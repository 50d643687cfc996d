#include "obo/error.hpp"

namespace obo {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::NonStochasticRow: return "NonStochasticRow";
    case ErrorCode::NoSelfConfidence: return "NoSelfConfidence";
    case ErrorCode::NegativeWeight: return "NegativeWeight";
    case ErrorCode::OpinionOutOfRange: return "OpinionOutOfRange";
    case ErrorCode::NonpositiveCost: return "NonpositiveCost";
    case ErrorCode::NegativeBudget: return "NegativeBudget";
    case ErrorCode::ThresholdOutOfRange: return "ThresholdOutOfRange";
    case ErrorCode::SingularSystem: return "SingularSystem";
    case ErrorCode::NonConvergence: return "NonConvergence";
    case ErrorCode::InfeasibleThreshold: return "InfeasibleThreshold";
    case ErrorCode::TargetOutOfRange: return "TargetOutOfRange";
    case ErrorCode::NumericalFailure: return "NumericalFailure";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::ModeUnavailable: return "ModeUnavailable";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

namespace {

std::string summarize(const std::vector<Violation>& violations) {
  std::string msg = "invalid instance:";
  for (const auto& v : violations) {
    msg += "\n  ";
    msg += to_string(v.code);
    if (!v.agent.empty()) msg += " [" + v.agent + "]";
    msg += ": " + v.message;
  }
  return msg;
}

}  // namespace

ValidationError::ValidationError(std::vector<Violation> violations)
    : Error(violations.empty() ? ErrorCode::InvalidArgument : violations.front().code,
            summarize(violations)),
      violations_(std::move(violations)) {}

bool is_solver_failure(ErrorCode code) {
  switch (code) {
    case ErrorCode::SingularSystem:
    case ErrorCode::NonConvergence:
    case ErrorCode::NumericalFailure:
    case ErrorCode::TooLarge:
    case ErrorCode::ModeUnavailable:
      return true;
    default:
      return false;
  }
}

}  // namespace obo
