#include "obo/milp.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <optional>

#include "obo/error.hpp"
#include "obo/lp.hpp"

namespace obo {

MilpInstance build_milp(const Instance& instance, const ChainAnalysis& analysis) {
  return build_milp(instance, analysis, instance.budget);
}

MilpInstance build_milp(const Instance& instance, const ChainAnalysis& analysis, double budget) {
  const auto& d = analysis.decomposition;
  const std::size_t n = instance.size();
  MilpInstance milp;
  milp.threshold = instance.threshold;
  milp.budget = budget;
  milp.true_opinions = instance.true_opinions;
  milp.costs = instance.costs;
  milp.base = asymptotic_opinions(analysis, instance.true_opinions);
  milp.lower_bound = n ? *std::min_element(milp.base.begin(), milp.base.end()) : 0.0;

  std::vector<std::size_t> position(n, 0);
  for (std::size_t k = 0; k < d.classes.size(); ++k)
    for (std::size_t p = 0; p < d.classes[k].size(); ++p) position[d.classes[k][p]] = p;
  for (std::size_t j = 0; j < n; ++j)
    if (d.is_recurrent(j)) milp.payable.push_back(j);

  milp.influence = Matrix(n, milp.payable.size());
  for (std::size_t c = 0; c < milp.payable.size(); ++c) {
    const std::size_t j = milp.payable[c];
    const std::size_t k = d.class_of[j];
    const double pi = analysis.pi[k][position[j]];
    for (std::size_t i = 0; i < n; ++i) milp.influence(i, c) = analysis.hitting[k][i] * pi;
  }
  return milp;
}

std::vector<double> asymptotic_from_increments(const MilpInstance& milp, std::span<const double> u) {
  std::vector<double> x = milp.base;
  const auto gain = multiply(milp.influence, u);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] += gain[i];
  return x;
}

PaymentPlan plan_from_increments(const MilpInstance& milp, std::span<const double> u) {
  const std::size_t n = milp.size();
  PaymentPlan plan;
  plan.payments.assign(n, 0.0);
  for (std::size_t c = 0; c < milp.payable.size(); ++c) {
    const std::size_t j = milp.payable[c];
    plan.payments[j] = milp.costs[j] * u[c];
  }
  plan.expressed_opinions.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    plan.expressed_opinions[i] = milp.true_opinions[i] + plan.payments[i] / milp.costs[i];
  plan.asymptotic_opinions = asymptotic_from_increments(milp, u);
  plan.supporters = supporters_of(plan.asymptotic_opinions, milp.threshold);
  plan.total_spend = std::accumulate(plan.payments.begin(), plan.payments.end(), 0.0);
  return plan;
}

namespace {

double spend_of(const MilpInstance& milp, std::span<const double> u) {
  double s = 0.0;
  for (std::size_t c = 0; c < u.size(); ++c) s += milp.costs[milp.payable[c]] * u[c];
  return s;
}

// Shared payment block: variables u over milp.payable with caps and the
// budget row. Extra variables are appended after the payments.
LinearProgram payment_lp(const MilpInstance& milp, std::size_t extra_vars) {
  const std::size_t np = milp.payable.size();
  LinearProgram lp(np + extra_vars);
  std::vector<double> budget_row(np + extra_vars, 0.0);
  for (std::size_t c = 0; c < np; ++c) {
    const std::size_t j = milp.payable[c];
    lp.set_bounds(c, 0.0, std::max(0.0, 1.0 - milp.true_opinions[j]));
    budget_row[c] = milp.costs[j];
  }
  lp.add_constraint(std::move(budget_row), Sense::LessEqual, milp.budget);
  return lp;
}

// The full linearized model: payments then one z per agent.
LinearProgram supporter_lp(const MilpInstance& milp) {
  const std::size_t np = milp.payable.size();
  const std::size_t n = milp.size();
  LinearProgram lp = payment_lp(milp, n);
  const double gap = milp.threshold - milp.lower_bound;
  for (std::size_t i = 0; i < n; ++i) {
    lp.set_bounds(np + i, 0.0, 1.0);
    std::vector<double> row(np + n, 0.0);
    for (std::size_t c = 0; c < np; ++c) row[c] = -milp.influence(i, c);
    row[np + i] = gap;
    lp.add_constraint(std::move(row), Sense::LessEqual, milp.base[i] - milp.lower_bound);
  }
  return lp;
}

struct BnbOutcome {
  std::vector<double> best_u;
  double best_value = -kInfinity;
  std::size_t nodes = 0;
  bool exhausted = true;
};

// Depth-first branch and bound over binary columns [first_binary, num_vars).
// Every LP point carries feasible payments, so `evaluate` scores the plan a
// node implies (nullopt if it does not qualify) and `prunable` decides
// whether a relaxation bound can still beat the incumbent.
BnbOutcome branch_and_bound(const LinearProgram& root, std::size_t first_binary, std::size_t node_limit,
                            const std::function<std::optional<double>(std::span<const double>)>& evaluate,
                            const std::function<bool(double bound, double incumbent)>& prunable,
                            BnbOutcome seed) {
  struct Node {
    std::vector<std::pair<std::size_t, double>> fixed;
  };
  BnbOutcome out = std::move(seed);
  out.nodes = 0;
  out.exhausted = true;
  std::vector<Node> stack{Node{}};
  const std::size_t np = first_binary;

  while (!stack.empty()) {
    if (out.nodes >= node_limit) {
      out.exhausted = false;
      break;
    }
    Node node = std::move(stack.back());
    stack.pop_back();
    ++out.nodes;

    LinearProgram lp = root;
    for (const auto& [var, value] : node.fixed) lp.set_bounds(var, value, value);
    const LpResult res = solve_lp(lp);
    if (res.status != LpStatus::Optimal) continue;

    const std::span<const double> u(res.x.data(), np);
    if (const auto value = evaluate(u); value && *value > out.best_value + 1e-12) {
      out.best_value = *value;
      out.best_u.assign(u.begin(), u.end());
    }
    if (prunable(res.objective, out.best_value)) continue;

    std::size_t branch = lp.num_vars();
    double closest = 1.0;
    for (std::size_t v = first_binary; v < lp.num_vars(); ++v) {
      const double frac = std::fabs(res.x[v] - std::round(res.x[v]));
      if (frac <= 1e-6) continue;
      const double dist = std::fabs(res.x[v] - 0.5);
      if (dist < closest) {
        closest = dist;
        branch = v;
      }
    }
    if (branch == lp.num_vars()) continue;

    Node down = node, up = std::move(node);
    down.fixed.emplace_back(branch, 0.0);
    up.fixed.emplace_back(branch, 1.0);
    stack.push_back(std::move(down));
    stack.push_back(std::move(up));
  }
  return out;
}

// Maximizes the sum of asymptotic opinions while keeping `keep` supporters.
std::optional<std::vector<double>> spend_remainder(const MilpInstance& milp,
                                                   std::span<const std::size_t> keep) {
  const std::size_t np = milp.payable.size();
  LinearProgram lp = payment_lp(milp, 0);
  for (std::size_t c = 0; c < np; ++c) {
    double total = 0.0;
    for (std::size_t i = 0; i < milp.size(); ++i) total += milp.influence(i, c);
    lp.set_objective(c, total);
  }
  for (std::size_t i : keep) {
    std::vector<double> row(np);
    for (std::size_t c = 0; c < np; ++c) row[c] = milp.influence(i, c);
    lp.add_constraint(std::move(row), Sense::GreaterEqual, milp.threshold - milp.base[i]);
  }
  const LpResult res = solve_lp(lp);
  if (res.status != LpStatus::Optimal) return std::nullopt;
  return res.x;
}

std::size_t count_supporters(const MilpInstance& milp, std::span<const double> u) {
  return supporters_of(asymptotic_from_increments(milp, u), milp.threshold).size();
}

}  // namespace

MilpSolution solve_milp(const MilpInstance& milp, const MilpOptions& options) {
  const std::size_t np = milp.payable.size();
  const std::vector<double> zero(np, 0.0);

  if (milp.degenerate()) {
    MilpSolution sol;
    sol.plan = plan_from_increments(milp, zero);
    sol.supporter_count = sol.plan.supporters.size();
    return sol;
  }

  // Phase 1: most supporters.
  LinearProgram count_lp = supporter_lp(milp);
  for (std::size_t i = 0; i < milp.size(); ++i) count_lp.set_objective(np + i, 1.0);
  BnbOutcome seed;
  seed.best_u = zero;
  seed.best_value = static_cast<double>(count_supporters(milp, zero));
  const BnbOutcome most = branch_and_bound(
      count_lp, np, options.node_limit,
      [&](std::span<const double> u) -> std::optional<double> {
        return static_cast<double>(count_supporters(milp, u));
      },
      [](double bound, double incumbent) { return std::floor(bound + 1e-6) <= incumbent; },
      std::move(seed));
  const double target = most.best_value;

  // Phase 2: cheapest plan reaching that many supporters.
  LinearProgram spend_lp = supporter_lp(milp);
  for (std::size_t c = 0; c < np; ++c) spend_lp.set_objective(c, -milp.costs[milp.payable[c]]);
  {
    std::vector<double> row(np + milp.size(), 0.0);
    for (std::size_t i = 0; i < milp.size(); ++i) row[np + i] = 1.0;
    spend_lp.add_constraint(std::move(row), Sense::GreaterEqual, target);
  }
  BnbOutcome cheapest_seed;
  cheapest_seed.best_u = most.best_u;
  cheapest_seed.best_value = -spend_of(milp, most.best_u);
  const std::size_t limit_left = options.node_limit > most.nodes ? options.node_limit - most.nodes : 1;
  const BnbOutcome cheapest = branch_and_bound(
      spend_lp, np, limit_left,
      [&](std::span<const double> u) -> std::optional<double> {
        if (static_cast<double>(count_supporters(milp, u)) < target) return std::nullopt;
        return -spend_of(milp, u);
      },
      [](double bound, double incumbent) { return bound <= incumbent + 1e-9; },
      std::move(cheapest_seed));

  MilpSolution sol;
  sol.node_count = most.nodes + cheapest.nodes;
  sol.optimality = most.exhausted && cheapest.exhausted ? Optimality::Proven : Optimality::Heuristic;
  sol.min_spend = spend_of(milp, cheapest.best_u);
  sol.plan = plan_from_increments(milp, cheapest.best_u);

  if (options.polish == PlanPolish::MaxOpinion) {
    if (auto u = spend_remainder(milp, sol.plan.supporters)) {
      PaymentPlan polished = plan_from_increments(milp, *u);
      if (polished.supporters.size() >= sol.plan.supporters.size() &&
          polished.total_spend <= milp.budget + 1e-6)
        sol.plan = std::move(polished);
    }
  }
  sol.supporter_count = sol.plan.supporters.size();
  return sol;
}

MilpSolution brute_force_oracle(const Instance& instance, const ChainAnalysis& analysis, double budget) {
  const std::size_t n = instance.size();
  if (n > 15) throw Error(ErrorCode::TooLarge, "brute force oracle supports at most 15 agents");
  const MilpInstance milp = build_milp(instance, analysis, budget);
  const std::size_t np = milp.payable.size();

  MilpSolution sol;
  // Sizes n..1 in decreasing order; subsets of one size in lexicographic order.
  for (std::size_t size = n; size >= 1; --size) {
    std::vector<std::size_t> pick(size);
    std::iota(pick.begin(), pick.end(), std::size_t{0});
    for (;;) {
      LinearProgram lp = payment_lp(milp, 0);
      for (std::size_t c = 0; c < np; ++c) lp.set_objective(c, -milp.costs[milp.payable[c]]);
      for (std::size_t i : pick) {
        std::vector<double> row(np);
        for (std::size_t c = 0; c < np; ++c) row[c] = milp.influence(i, c);
        lp.add_constraint(std::move(row), Sense::GreaterEqual, milp.threshold - milp.base[i]);
      }
      ++sol.node_count;
      const LpResult res = solve_lp(lp);
      if (res.status == LpStatus::Optimal) {
        sol.plan = plan_from_increments(milp, res.x);
        sol.min_spend = sol.plan.total_spend;
        sol.supporter_count = sol.plan.supporters.size();
        return sol;
      }
      // Next combination.
      std::size_t pos = size;
      while (pos > 0 && pick[pos - 1] == n - size + pos - 1) --pos;
      if (pos == 0) break;
      ++pick[pos - 1];
      for (std::size_t q = pos; q < size; ++q) pick[q] = pick[q - 1] + 1;
    }
  }
  sol.plan = plan_from_increments(milp, std::vector<double>(np, 0.0));
  sol.supporter_count = sol.plan.supporters.size();
  return sol;
}

SweepCurve budget_sweep(const Instance& instance, std::span<const double> budgets, const MilpOptions& options) {
  if (!std::is_sorted(budgets.begin(), budgets.end()))
    throw Error(ErrorCode::InvalidArgument, "sweep: budgets must be sorted ascending");
  for (double b : budgets)
    if (!(b >= 0.0)) throw Error(ErrorCode::NegativeBudget, "sweep: budgets must be >= 0");
  const ConfidenceMatrix a(instance);
  const ChainAnalysis analysis = analyze(a, instance.true_opinions);
  SweepCurve curve;
  for (double b : budgets) curve.points.push_back({b, solve_milp(build_milp(instance, analysis, b), options)});
  return curve;
}

}  // namespace obo
