#include "obo/solve.hpp"

#include "obo/error.hpp"

namespace obo {

std::string_view to_string(SolveMode mode) {
  switch (mode) {
    case SolveMode::Auto: return "auto";
    case SolveMode::Knapsack: return "knapsack";
    case SolveMode::Milp: return "milp";
  }
  return "unknown";
}

std::vector<ClassBudgetResult> class_price_tags(const Instance& instance, const ChainAnalysis& analysis) {
  std::vector<ClassBudgetResult> tags;
  std::vector<double> opinions, costs;
  for (std::size_t k = 0; k < analysis.num_classes(); ++k) {
    opinions.clear();
    costs.clear();
    for (std::size_t j : analysis.decomposition.classes[k]) {
      opinions.push_back(instance.true_opinions[j]);
      costs.push_back(instance.costs[j]);
    }
    tags.push_back(min_budget_for_class(analysis.pi[k], opinions, costs, instance.threshold));
  }
  return tags;
}

namespace {

SolveResult solve_knapsack(const Instance& instance, const ChainAnalysis& analysis, double budget,
                           const SolveOptions& options) {
  const auto tags = class_price_tags(instance, analysis);
  std::vector<KnapsackItem> items;
  for (std::size_t k = 0; k < tags.size(); ++k)
    items.push_back({k, static_cast<std::int64_t>(analysis.decomposition.classes[k].size()), tags[k].total});
  const KnapsackSolution pick =
      options.epsilon ? knapsack_fptas(items, budget, *options.epsilon) : knapsack_exact(items, budget);

  std::vector<double> payments(instance.size(), 0.0);
  for (std::size_t pos : pick.selected) {
    const std::size_t k = items[pos].class_index;
    const auto& members = analysis.decomposition.classes[k];
    for (std::size_t p = 0; p < members.size(); ++p) payments[members[p]] = tags[k].payments[p];
  }

  SolveResult out;
  out.mode = SolveMode::Knapsack;
  out.solution.plan = evaluate_plan(instance, analysis, std::move(payments));
  out.solution.supporter_count = out.solution.plan.supporters.size();
  out.solution.optimality = options.epsilon ? Optimality::Heuristic : Optimality::Proven;
  out.solution.min_spend = out.solution.plan.total_spend;
  return out;
}

}  // namespace

SolveResult solve(const Instance& instance, const ChainAnalysis& analysis, double budget,
                  const SolveOptions& options) {
  if (!(budget >= 0.0)) throw Error(ErrorCode::NegativeBudget, "budget must be >= 0");
  SolveMode mode = options.mode;
  if (mode == SolveMode::Auto)
    mode = analysis.decomposition.has_transients() ? SolveMode::Milp : SolveMode::Knapsack;
  if (mode == SolveMode::Knapsack) {
    if (analysis.decomposition.has_transients())
      throw Error(ErrorCode::ModeUnavailable,
                  "knapsack mode needs an instance without transient agents; use --mode milp");
    return solve_knapsack(instance, analysis, budget, options);
  }
  SolveResult out;
  out.mode = SolveMode::Milp;
  out.solution = solve_milp(build_milp(instance, analysis, budget), options.milp);
  return out;
}

SolveResult solve(const Instance& instance, double budget, const SolveOptions& options) {
  const ConfidenceMatrix a(instance);
  return solve(instance, analyze(a, instance.true_opinions), budget, options);
}

}  // namespace obo
