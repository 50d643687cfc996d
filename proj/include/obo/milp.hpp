#pragma once
// Budgeted supporter maximization when transient agents are present.
//
// With u_j = p_j / c_j the opinion increment bought for recurrent agent j,
// agent i's asymptotic opinion is affine in u:
//   g_i(u) = base_i + sum_j h_{k(j)}(i) pi(j) u_j.
// The supporter indicator z_i is linearized with the global lower bound
// L = min_i base_i:
//   (x* - L) z_i - sum_j h_{k(j)}(i) pi(j) u_j <= base_i - L,
// which forces g_i >= x* when z_i = 1 and is slack when z_i = 0.

#include <cstddef>
#include <span>
#include <vector>

#include "obo/chain_analysis.hpp"
#include "obo/linalg.hpp"
#include "obo/model.hpp"

namespace obo {

struct MilpInstance {
  double threshold = 0.0;
  double budget = 0.0;
  double lower_bound = 0.0;
  // Recurrent agents, ascending. Transient payments are fixed at zero.
  std::vector<std::size_t> payable;
  // Per agent.
  std::vector<double> true_opinions;
  std::vector<double> costs;
  std::vector<double> base;
  // n x payable.size(): opinion gained by agent i per unit increment of payable j.
  Matrix influence;

  std::size_t size() const noexcept { return base.size(); }
  // L >= x*: everyone already supports, nothing to optimize.
  bool degenerate() const noexcept { return lower_bound >= threshold - kTolerance; }
};

enum class Optimality { Proven, Heuristic };

// What to do with budget left over once the supporter set is fixed.
enum class PlanPolish {
  // Spend it to maximize the sum of asymptotic opinions, keeping every supporter.
  MaxOpinion,
  // Report the cheapest plan for the supporter set.
  MinSpend,
};

struct MilpOptions {
  std::size_t node_limit = 200000;
  PlanPolish polish = PlanPolish::MaxOpinion;
};

struct MilpSolution {
  PaymentPlan plan;
  std::size_t supporter_count = 0;
  Optimality optimality = Optimality::Proven;
  std::size_t node_count = 0;
  // Cheapest spend found that achieves supporter_count.
  double min_spend = 0.0;
};

MilpInstance build_milp(const Instance& instance, const ChainAnalysis& analysis);
MilpInstance build_milp(const Instance& instance, const ChainAnalysis& analysis, double budget);

// Asymptotic opinions for increments u over milp.payable.
std::vector<double> asymptotic_from_increments(const MilpInstance& milp, std::span<const double> u);
PaymentPlan plan_from_increments(const MilpInstance& milp, std::span<const double> u);

MilpSolution solve_milp(const MilpInstance& milp, const MilpOptions& options = {});

// Enumerates supporter sets from largest to smallest and accepts the first
// whose minimum-spend LP fits the budget. Throws TooLarge above 15 agents.
MilpSolution brute_force_oracle(const Instance& instance, const ChainAnalysis& analysis, double budget);

struct SweepPoint {
  double budget = 0.0;
  MilpSolution solution;
};

struct SweepCurve {
  std::vector<SweepPoint> points;
};

// Budgets must be sorted ascending.
SweepCurve budget_sweep(const Instance& instance, std::span<const double> budgets,
                        const MilpOptions& options = {});

}  // namespace obo
