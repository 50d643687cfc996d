#pragma once
// End-to-end solve: confidence matrix -> decomposition -> chain analysis ->
// knapsack (no transient agents) or branch and bound.

#include <optional>
#include <string_view>

#include "obo/chain_analysis.hpp"
#include "obo/class_budget.hpp"
#include "obo/knapsack.hpp"
#include "obo/milp.hpp"
#include "obo/model.hpp"

namespace obo {

enum class SolveMode { Auto, Knapsack, Milp };

std::string_view to_string(SolveMode mode);

struct SolveOptions {
  SolveMode mode = SolveMode::Auto;
  // Knapsack mode only: use the FPTAS with this epsilon instead of the exact DP.
  std::optional<double> epsilon;
  MilpOptions milp;
};

struct SolveResult {
  MilpSolution solution;
  SolveMode mode = SolveMode::Milp;
};

// Per-class price tags for knapsack mode, in class order.
std::vector<ClassBudgetResult> class_price_tags(const Instance& instance, const ChainAnalysis& analysis);

// Knapsack mode requires a decomposition without transient agents
// (ModeUnavailable otherwise).
SolveResult solve(const Instance& instance, const ChainAnalysis& analysis, double budget,
                  const SolveOptions& options = {});
SolveResult solve(const Instance& instance, double budget, const SolveOptions& options = {});

}  // namespace obo
