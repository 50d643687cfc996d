#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace obo {

enum class ErrorCode {
  ParseError,
  NonStochasticRow,
  NoSelfConfidence,
  NegativeWeight,
  OpinionOutOfRange,
  NonpositiveCost,
  NegativeBudget,
  ThresholdOutOfRange,
  SingularSystem,
  NonConvergence,
  InfeasibleThreshold,
  TargetOutOfRange,
  NumericalFailure,
  TooLarge,
  ModeUnavailable,
  InvalidArgument,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// One failed instance invariant. `agent` is empty for instance-wide problems.
struct Violation {
  ErrorCode code;
  std::string agent;
  std::string message;
};

class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<Violation> violations);
  const std::vector<Violation>& violations() const noexcept { return violations_; }

 private:
  std::vector<Violation> violations_;
};

// Solver-side failures (as opposed to bad input). The CLI maps these to exit code 2.
bool is_solver_failure(ErrorCode code);

}  // namespace obo
