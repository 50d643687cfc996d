#pragma once
// Cheapest way to lift one ergodic class's consensus to a target.
//
// Agents are ranked by influence per dollar, pi_j / c_j. Everyone ahead of
// the critical agent is paid up to opinion 1, the critical agent gets the
// fractional top-up that lands the consensus exactly on the target, and the
// rest get nothing.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace obo {

struct ClassBudgetResult {
  // Indexed like the class members.
  std::vector<double> payments;
  // Position (within the class) of the critical agent; empty when nothing
  // had to be paid.
  std::optional<std::size_t> critical_item;
  double total = 0.0;
  bool feasible = true;
};

// Class-local member positions sorted by pi/c descending, ties by position.
std::vector<std::size_t> influence_per_cost_order(std::span<const double> pi, std::span<const double> costs);

ClassBudgetResult min_budget_for_class(std::span<const double> pi, std::span<const double> opinions,
                                       std::span<const double> costs, double threshold);

// Minimum spend to reach each target consensus. Targets must lie between the
// unpaid consensus and 1 (TargetOutOfRange otherwise).
std::vector<double> class_cost_curve(std::span<const double> pi, std::span<const double> opinions,
                                     std::span<const double> costs, std::span<const double> targets);

}  // namespace obo
