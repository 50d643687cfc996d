#include <doctest.h>

#include <cmath>
#include <random>

#include "obo/error.hpp"
#include "obo/milp.hpp"
#include "obo/solve.hpp"
#include "support.hpp"

using namespace obo;

namespace {

struct Example {
  Instance inst = test::worked_example();
  ConfidenceMatrix a{inst};
  ChainAnalysis an = analyze(a, inst.true_opinions);
};

std::vector<std::string> names(const Instance& inst, const std::vector<std::size_t>& idx) {
  std::vector<std::string> out;
  for (std::size_t i : idx) out.push_back(inst.agents[i]);
  return out;
}

}  // namespace

TEST_CASE("lower bound of the worked example") {
  const Example ex;
  const MilpInstance milp = build_milp(ex.inst, ex.an);
  // min over agents of sum_k h_k(i) O_k; the second class's consensus is smallest.
  CHECK(std::fabs(milp.lower_bound - 9.6 / 39) <= 1e-12);
  CHECK(milp.payable.size() == 7);
  CHECK(!milp.degenerate());
  CHECK(milp.influence.rows() == 12);
}

TEST_CASE("worked example budgets") {
  const Example ex;
  const auto a = ex.inst.index_of("a"), j = ex.inst.index_of("j");
  struct Row {
    double budget;
    double pa, pj;
    std::vector<std::string> supporters;
  };
  const std::vector<Row> rows{
      {99, 0, 99, {"i", "j", "k", "l"}},
      {114, 0, 114, {"h", "i", "j", "k", "l"}},
      {117, 0, 117, {"g", "h", "i", "j", "k", "l"}},
      {169, 0, 169, {"e", "g", "h", "i", "j", "k", "l"}},
      {293, 113, 180, {"e", "f", "g", "h", "i", "j", "k", "l"}},
      {309, 210, 99, {"a", "b", "c", "d", "e", "f", "g", "h", "i", "j", "k", "l"}},
  };
  for (const auto& row : rows) {
    CAPTURE(row.budget);
    const MilpSolution sol = solve_milp(build_milp(ex.inst, ex.an, row.budget));
    CHECK(sol.optimality == Optimality::Proven);
    CHECK(names(ex.inst, sol.plan.supporters) == row.supporters);
    CHECK(sol.supporter_count == row.supporters.size());
    CHECK(std::fabs(sol.plan.payments[a] - row.pa) <= 0.01);
    CHECK(std::fabs(sol.plan.payments[j] - row.pj) <= 0.01);
    for (std::size_t i = 0; i < ex.inst.size(); ++i)
      if (i != a && i != j) CHECK(sol.plan.payments[i] == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(sol.plan.total_spend <= row.budget + 1e-6);
    CHECK(sol.min_spend <= sol.plan.total_spend + 1e-9);
  }
}

TEST_CASE("min-spend polish reports the cheapest certificate") {
  const Example ex;
  MilpOptions opt;
  opt.polish = PlanPolish::MinSpend;
  const MilpSolution sol = solve_milp(build_milp(ex.inst, ex.an, 114), opt);
  CHECK(sol.supporter_count == 5);
  // Agent h needs 7/24 O1 + 17/24 O2 >= 1/2, i.e. p_j = 200 (39 O2 - 9.6) / 20.
  const double o2 = (0.5 - 7.0 / 24 * 19.3 / 47) * 24.0 / 17.0;
  CHECK(sol.plan.payments[ex.inst.index_of("j")] == doctest::Approx(200.0 * (39.0 * o2 - 9.6) / 20.0).epsilon(1e-9));
  CHECK(sol.plan.total_spend == doctest::Approx(sol.min_spend));
}

TEST_CASE("zero budget: nobody supports") {
  const Example ex;
  const MilpSolution sol = solve_milp(build_milp(ex.inst, ex.an, 0.0));
  CHECK(sol.supporter_count == 0);
  CHECK(sol.plan.total_spend == 0.0);
}

TEST_CASE("a threshold below the lower bound is trivial") {
  Example ex;
  ex.inst.threshold = 0.2;
  const MilpInstance milp = build_milp(ex.inst, ex.an, 50.0);
  CHECK(milp.degenerate());
  const MilpSolution sol = solve_milp(milp);
  CHECK(sol.supporter_count == 12);
  CHECK(sol.plan.total_spend == 0.0);
  CHECK(sol.node_count == 0);
}

TEST_CASE("brute force oracle on the worked example") {
  const Example ex;
  const auto s169 = brute_force_oracle(ex.inst, ex.an, 169);
  CHECK(s169.supporter_count == 7);
  CHECK(s169.plan.payments[ex.inst.index_of("j")] <= 169.0 + 1e-9);
  const auto s293 = brute_force_oracle(ex.inst, ex.an, 293);
  CHECK(s293.supporter_count == 8);
  const auto huge = brute_force_oracle(ex.inst, ex.an, 1e6);
  CHECK(huge.supporter_count == 12);

  Instance big = ex.inst;
  for (int extra = 0; extra < 4; ++extra) {
    big.agents.push_back("z" + std::to_string(extra));
    big.edges.push_back({big.agents.size() - 1, big.agents.size() - 1, 1.0});
    big.true_opinions.push_back(0.5);
    big.costs.push_back(1.0);
  }
  const ConfidenceMatrix ba(big);
  try {
    brute_force_oracle(big, analyze(ba, big.true_opinions), 10);
    FAIL("expected TooLarge");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::TooLarge);
  }
}

TEST_CASE("sweep over the table budgets") {
  const Example ex;
  const std::vector<double> budgets{0, 99, 114, 117, 169, 293, 309, 309};
  const SweepCurve curve = budget_sweep(ex.inst, budgets);
  std::vector<std::size_t> counts;
  for (const auto& p : curve.points) counts.push_back(p.solution.supporter_count);
  CHECK(counts == std::vector<std::size_t>{0, 4, 5, 6, 7, 8, 12, 12});
  CHECK(curve.points[6].solution.plan.payments == curve.points[7].solution.plan.payments);

  const std::vector<double> unsorted{10, 5};
  CHECK_THROWS_AS(budget_sweep(ex.inst, unsorted), Error);
}

TEST_CASE("node limit downgrades to a heuristic answer") {
  const Example ex;
  MilpOptions opt;
  opt.node_limit = 1;
  const MilpSolution sol = solve_milp(build_milp(ex.inst, ex.an, 293), opt);
  CHECK(sol.optimality == Optimality::Heuristic);
  CHECK(sol.plan.total_spend <= 293 + 1e-6);
}

TEST_CASE("random instances: branch and bound agrees with the oracle") {
  std::mt19937_64 rng(61);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int rep = 0; rep < 60; ++rep) {
    const Instance inst = test::random_instance(rng, test::random_shape(rng, 1, 9));
    const ConfidenceMatrix a(inst);
    const ChainAnalysis an = analyze(a, inst.true_opinions);
    const double budget = std::round(unit(rng) * 1500.0);
    const MilpInstance milp = build_milp(inst, an, budget);
    const MilpSolution sol = solve_milp(milp);
    const MilpSolution oracle = brute_force_oracle(inst, an, budget);
    CAPTURE(rep);
    CHECK(sol.optimality == Optimality::Proven);
    CHECK(sol.supporter_count == oracle.supporter_count);

    // The reported count is what the plan actually produces.
    const PaymentPlan replay = evaluate_plan(inst, an, sol.plan.payments);
    CHECK(replay.supporters == sol.plan.supporters);
    CHECK(sol.plan.total_spend <= budget + 1e-6);
    for (std::size_t i = 0; i < inst.size(); ++i) {
      CHECK(sol.plan.expressed_opinions[i] <= 1.0 + 1e-9);
      if (!an.decomposition.is_recurrent(i)) CHECK(sol.plan.payments[i] == 0.0);
    }

    // Money moved to a transient agent buys nothing.
    if (an.decomposition.has_transients()) {
      std::vector<double> moved = sol.plan.payments;
      moved[an.decomposition.transient.front()] += 1.0;
      CHECK(evaluate_plan(inst, an, moved).supporters.size() <= sol.supporter_count);
    }
  }
}

TEST_CASE("without transients the MILP and the knapsack agree") {
  std::mt19937_64 rng(67);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int rep = 0; rep < 40; ++rep) {
    const Instance inst = test::random_instance(rng, test::random_shape(rng, 1, 10, false));
    const double budget = std::round(unit(rng) * 1500.0);
    SolveOptions ks;
    ks.mode = SolveMode::Knapsack;
    SolveOptions mi;
    mi.mode = SolveMode::Milp;
    const auto k = solve(inst, budget, ks);
    const auto m = solve(inst, budget, mi);
    CAPTURE(rep);
    CHECK(k.mode == SolveMode::Knapsack);
    CHECK(k.solution.supporter_count == m.solution.supporter_count);
    CHECK(k.solution.plan.total_spend <= budget + 1e-6);
    CHECK(solve(inst, budget).mode == SolveMode::Knapsack);
  }
}

TEST_CASE("knapsack mode refuses instances with transients") {
  const Example ex;
  SolveOptions opt;
  opt.mode = SolveMode::Knapsack;
  try {
    solve(ex.inst, 100.0, opt);
    FAIL("expected ModeUnavailable");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ModeUnavailable);
  }
  CHECK(solve(ex.inst, 100.0).mode == SolveMode::Milp);
}

TEST_CASE("supporter counts never drop as the budget grows") {
  std::mt19937_64 rng(71);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int rep = 0; rep < 30; ++rep) {
    const Instance inst = test::random_instance(rng, test::random_shape(rng, 2, 8));
    std::vector<double> budgets{std::round(unit(rng) * 800), std::round(unit(rng) * 800)};
    std::sort(budgets.begin(), budgets.end());
    const SweepCurve c = budget_sweep(inst, budgets);
    CHECK(c.points[0].solution.supporter_count <= c.points[1].solution.supporter_count);
  }
}
