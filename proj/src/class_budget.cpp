#include "obo/class_budget.hpp"

#include <algorithm>
#include <numeric>

#include "obo/error.hpp"
#include "obo/kernels.hpp"

namespace obo {

std::vector<std::size_t> influence_per_cost_order(std::span<const double> pi, std::span<const double> costs) {
  std::vector<std::size_t> order(pi.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  // pi_a / c_a > pi_b / c_b  <=>  pi_a c_b > pi_b c_a  (costs > 0)
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return pi[a] * costs[b] > pi[b] * costs[a];
  });
  return order;
}

ClassBudgetResult min_budget_for_class(std::span<const double> pi, std::span<const double> opinions,
                                       std::span<const double> costs, double threshold) {
  const std::size_t n = pi.size();
  if (opinions.size() != n || costs.size() != n)
    throw Error(ErrorCode::InvalidArgument, "class budget: size mismatch");
  if (threshold > 1.0)
    throw Error(ErrorCode::InfeasibleThreshold, "class budget: threshold above 1 is unreachable");

  ClassBudgetResult result;
  result.payments.assign(n, 0.0);
  double need = threshold - kernels::dot(pi, opinions);
  if (need <= 0.0) return result;

  for (std::size_t j : influence_per_cost_order(pi, costs)) {
    const double gain = pi[j] * (1.0 - opinions[j]);
    if (gain <= 0.0) continue;
    if (gain >= need) {
      result.payments[j] = costs[j] * need / pi[j];
      result.critical_item = j;
      need = 0.0;
      break;
    }
    result.payments[j] = costs[j] * (1.0 - opinions[j]);
    need -= gain;
  }
  // Only rounding can leave a residue here, since sum(pi) = 1 >= threshold.
  result.feasible = need <= 1e-12;
  result.total = std::accumulate(result.payments.begin(), result.payments.end(), 0.0);
  return result;
}

std::vector<double> class_cost_curve(std::span<const double> pi, std::span<const double> opinions,
                                     std::span<const double> costs, std::span<const double> targets) {
  const double base = kernels::dot(pi, opinions);
  std::vector<double> out;
  out.reserve(targets.size());
  for (double t : targets) {
    if (t < base - 1e-12 || t > 1.0 + 1e-12)
      throw Error(ErrorCode::TargetOutOfRange, "class cost curve: target " + std::to_string(t) +
                                                   " outside [" + std::to_string(base) + ", 1]");
    out.push_back(min_budget_for_class(pi, opinions, costs, std::min(t, 1.0)).total);
  }
  return out;
}

}  // namespace obo
