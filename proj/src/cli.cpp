#include "obo/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "obo/chain_analysis.hpp"
#include "obo/decompose.hpp"
#include "obo/error.hpp"
#include "obo/io.hpp"
#include "obo/kernels.hpp"
#include "obo/milp.hpp"
#include "obo/solve.hpp"

namespace obo::cli {
namespace {

using io::Json;

struct Settings {
  std::string instance_path;
  std::string out_path;
  std::string format;
  std::string mode = "auto";
  std::string polish = "max-opinion";
  std::string plan_path;
  std::string budgets;
  std::optional<double> budget;
  std::optional<double> epsilon;
  std::size_t class_number = 1;
  double tol = 1e-12;
  std::size_t max_steps = 100000;
  bool iterate = false;
};

std::string fmt_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", io::round_sig(v));
  return buf;
}

Json names(const Instance& inst, const std::vector<std::size_t>& idx) {
  Json arr = Json::array();
  for (std::size_t i : idx) arr.push_back(inst.agents[i]);
  return arr;
}

Json per_agent(const Instance& inst, const std::vector<double>& values) {
  Json obj = Json::object();
  for (std::size_t i = 0; i < inst.size(); ++i) obj[inst.agents[i]] = io::round_sig(values[i]);
  return obj;
}

std::vector<double> parse_budgets(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size()) throw Error(ErrorCode::InvalidArgument, "--budgets: bad number '" + item + "'");
    out.push_back(v);
  }
  if (out.empty()) throw Error(ErrorCode::InvalidArgument, "--budgets: empty list");
  return out;
}

MilpOptions milp_options(const Settings& s) {
  MilpOptions opt;
  if (const char* env = std::getenv("OBO_NODE_LIMIT")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0' || v == 0)
      throw Error(ErrorCode::InvalidArgument, "OBO_NODE_LIMIT must be a positive integer");
    opt.node_limit = static_cast<std::size_t>(v);
  }
  opt.polish = s.polish == "min-spend" ? PlanPolish::MinSpend : PlanPolish::MaxOpinion;
  return opt;
}

SolveOptions solve_options(const Settings& s) {
  SolveOptions opt;
  opt.mode = s.mode == "knapsack" ? SolveMode::Knapsack : s.mode == "milp" ? SolveMode::Milp : SolveMode::Auto;
  opt.epsilon = s.epsilon;
  opt.milp = milp_options(s);
  return opt;
}

Json solution_json(const Instance& inst, double budget, const SolveResult& r) {
  const auto& sol = r.solution;
  Json doc = io::plan_to_json(inst, sol.plan);
  Json out;
  out["budget"] = io::round_sig(budget);
  out["mode"] = std::string(to_string(r.mode));
  out["supporter_count"] = sol.supporter_count;
  out["optimality"] = sol.optimality == Optimality::Proven ? "proven" : "heuristic";
  out["node_count"] = sol.node_count;
  out["min_spend"] = io::round_sig(sol.min_spend);
  for (auto& [key, value] : doc.items()) out[key] = value;
  return out;
}

std::string csv_header() { return "budget,supporters,total_spend\n"; }
std::string csv_row(double budget, const MilpSolution& sol) {
  return fmt_real(budget) + "," + std::to_string(sol.supporter_count) + "," + fmt_real(sol.plan.total_spend) + "\n";
}

std::string cmd_validate(const Instance& inst) {
  const ConfidenceMatrix a(inst);
  const Decomposition d = decompose(a);
  Json doc;
  doc["valid"] = true;
  doc["agents"] = inst.size();
  doc["edges"] = inst.edges.size();
  doc["transient"] = d.transient.size();
  doc["classes"] = d.classes.size();
  return doc.dump(2) + "\n";
}

std::string cmd_decompose(const Instance& inst) {
  const Decomposition d = decompose(ConfidenceMatrix(inst));
  Json doc;
  doc["transient"] = names(inst, d.transient);
  Json classes = Json::array();
  for (const auto& c : d.classes) classes.push_back(names(inst, c));
  doc["classes"] = std::move(classes);
  return doc.dump(2) + "\n";
}

std::string cmd_analyze(const Instance& inst) {
  const ConfidenceMatrix a(inst);
  const ChainAnalysis an = analyze(a, inst.true_opinions);
  Json doc;
  Json classes = Json::array();
  for (std::size_t k = 0; k < an.num_classes(); ++k) {
    Json c;
    c["members"] = names(inst, an.decomposition.classes[k]);
    Json pi = Json::object();
    for (std::size_t p = 0; p < an.pi[k].size(); ++p)
      pi[inst.agents[an.decomposition.classes[k][p]]] = io::round_sig(an.pi[k][p]);
    c["pi"] = std::move(pi);
    c["consensus"] = io::round_sig(an.consensus[k]);
    classes.push_back(std::move(c));
  }
  doc["classes"] = std::move(classes);
  doc["transient"] = names(inst, an.decomposition.transient);
  Json hitting = Json::object();
  for (std::size_t i = 0; i < inst.size(); ++i) {
    Json row = Json::array();
    for (std::size_t k = 0; k < an.num_classes(); ++k) row.push_back(io::round_sig(an.hitting[k][i]));
    hitting[inst.agents[i]] = std::move(row);
  }
  doc["hitting"] = std::move(hitting);
  doc["asymptotic"] = per_agent(inst, an.asymptotic);
  doc["lower_bound"] = io::round_sig(*std::min_element(an.asymptotic.begin(), an.asymptotic.end()));
  doc["supporters"] = names(inst, supporters_of(an.asymptotic, inst.threshold));
  return doc.dump(2) + "\n";
}

std::string cmd_min_class_budget(const Instance& inst, const Settings& s) {
  const ConfidenceMatrix a(inst);
  const ChainAnalysis an = analyze(a, inst.true_opinions);
  if (s.class_number < 1 || s.class_number > an.num_classes())
    throw Error(ErrorCode::InvalidArgument, "--class must lie in [1, " + std::to_string(an.num_classes()) + "]");
  const std::size_t k = s.class_number - 1;
  const auto tags = class_price_tags(inst, an);
  const auto& r = tags[k];
  const auto& members = an.decomposition.classes[k];
  Json doc;
  doc["class"] = s.class_number;
  doc["members"] = names(inst, members);
  Json pay = Json::object();
  for (std::size_t p = 0; p < members.size(); ++p) pay[inst.agents[members[p]]] = io::round_sig(r.payments[p]);
  doc["payments"] = std::move(pay);
  doc["critical_item"] = r.critical_item ? Json(inst.agents[members[*r.critical_item]]) : Json(nullptr);
  doc["total"] = io::round_sig(r.total);
  doc["feasible"] = r.feasible;
  return doc.dump(2) + "\n";
}

std::string cmd_solve(const Instance& inst, const Settings& s) {
  const double budget = s.budget.value_or(inst.budget);
  if (!(budget >= 0.0)) throw Error(ErrorCode::NegativeBudget, "--budget must be nonnegative");
  const SolveResult r = solve(inst, budget, solve_options(s));
  if (s.format == "csv") return csv_header() + csv_row(budget, r.solution);
  return solution_json(inst, budget, r).dump(2) + "\n";
}

std::string cmd_sweep(const Instance& inst, const Settings& s) {
  std::vector<double> budgets = parse_budgets(s.budgets);
  const SweepCurve curve = budget_sweep(inst, budgets, milp_options(s));
  if (s.format == "json") {
    Json points = Json::array();
    for (const auto& p : curve.points) {
      SolveResult r;
      r.solution = p.solution;
      r.mode = SolveMode::Milp;
      points.push_back(solution_json(inst, p.budget, r));
    }
    Json doc;
    doc["points"] = std::move(points);
    return doc.dump(2) + "\n";
  }
  std::string text = csv_header();
  for (const auto& p : curve.points) text += csv_row(p.budget, p.solution);
  return text;
}

std::string cmd_simulate(const Instance& inst, const Settings& s) {
  if (s.plan_path.empty()) throw Error(ErrorCode::InvalidArgument, "simulate: --plan is required");
  const std::vector<double> payments = io::load_plan_payments(inst, s.plan_path);
  const ConfidenceMatrix a(inst);
  const ChainAnalysis an = analyze(a, inst.true_opinions);
  const PaymentPlan plan = evaluate_plan(inst, an, payments);
  for (double x : plan.expressed_opinions)
    if (x > 1.0 + kTolerance)
      throw Error(ErrorCode::InvalidArgument, "simulate: plan pushes an opinion above 1");

  Json doc;
  doc["total_spend"] = io::round_sig(plan.total_spend);
  doc["expressed"] = per_agent(inst, plan.expressed_opinions);
  if (s.iterate) {
    const IterationResult it = iterate_dynamics(a, plan.expressed_opinions, s.max_steps, s.tol);
    doc["method"] = "iteration";
    doc["steps"] = it.steps;
    doc["asymptotic"] = per_agent(inst, it.opinions);
    doc["supporters"] = names(inst, supporters_of(it.opinions, inst.threshold));
  } else {
    doc["method"] = "closed_form";
    doc["asymptotic"] = per_agent(inst, plan.asymptotic_opinions);
    doc["supporters"] = names(inst, plan.supporters);
  }
  return doc.dump(2) + "\n";
}

void emit(const std::string& text, const Settings& s, std::ostream& out) {
  if (s.out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(s.out_path, std::ios::binary);
  if (!f) throw Error(ErrorCode::InvalidArgument, "cannot write " + s.out_path);
  f << text;
}

void report(const Error& e, std::ostream& err) {
  Json doc;
  doc["error"] = std::string(to_string(e.code()));
  doc["message"] = e.what();
  if (const auto* v = dynamic_cast<const ValidationError*>(&e)) {
    Json list = Json::array();
    for (const auto& item : v->violations())
      list.push_back({{"code", std::string(to_string(item.code))}, {"agent", item.agent}, {"message", item.message}});
    doc["violations"] = std::move(list);
  }
  err << doc.dump(2) << "\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Optimal budget allocation for opinion dynamics", "obo"};
  app.require_subcommand(1);
  Settings s;

  auto common = [&](CLI::App* sub, bool with_format) {
    sub->add_option("instance", s.instance_path, "Instance JSON file")->required();
    sub->add_option("--out", s.out_path, "Write output to this file instead of stdout");
    if (with_format) sub->add_option("--format", s.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  };
  auto budget_opts = [&](CLI::App* sub) {
    sub->add_option("--mode", s.mode, "Solver selection")->check(CLI::IsMember({"auto", "knapsack", "milp"}));
    sub->add_option("--polish", s.polish, "Use of leftover budget")
        ->check(CLI::IsMember({"max-opinion", "min-spend"}));
  };

  auto* validate_cmd = app.add_subcommand("validate", "Check an instance file");
  common(validate_cmd, false);
  auto* decompose_cmd = app.add_subcommand("decompose", "Transient agents and ergodic classes");
  common(decompose_cmd, false);
  auto* analyze_cmd = app.add_subcommand("analyze", "Stationary vectors, hitting probabilities, asymptotic opinions");
  common(analyze_cmd, false);
  auto* class_cmd = app.add_subcommand("min-class-budget", "Cheapest payments lifting one class to the threshold");
  common(class_cmd, false);
  class_cmd->add_option("--class", s.class_number, "Ergodic class number (1-based)")->required();
  auto* solve_cmd = app.add_subcommand("solve", "Optimal payment plan for a budget");
  common(solve_cmd, true);
  budget_opts(solve_cmd);
  solve_cmd->add_option("--budget", s.budget, "Budget in dollars (default: the instance's)");
  solve_cmd->add_option("--epsilon", s.epsilon, "Knapsack FPTAS accuracy")->check(CLI::Range(0.0, 1.0));
  auto* sweep_cmd = app.add_subcommand("sweep", "Supporters versus budget");
  common(sweep_cmd, true);
  budget_opts(sweep_cmd);
  sweep_cmd->add_option("--budgets", s.budgets, "Comma-separated ascending budgets")->required();
  auto* simulate_cmd = app.add_subcommand("simulate", "Asymptotic opinions under a payment plan");
  common(simulate_cmd, false);
  simulate_cmd->add_option("--plan", s.plan_path, "Plan JSON (a 'payments' object)")->required();
  simulate_cmd->add_flag("--iterate", s.iterate, "Run the dynamics instead of the closed form");
  simulate_cmd->add_option("--tol", s.tol, "Iteration tolerance (max-norm)")->check(CLI::PositiveNumber);
  simulate_cmd->add_option("--max-steps", s.max_steps, "Iteration cap")->check(CLI::Range(std::size_t{1}, SIZE_MAX));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return 1;
  }

  try {
    const Instance inst = io::load_instance(s.instance_path);
    std::string text;
    if (*validate_cmd) text = cmd_validate(inst);
    else if (*decompose_cmd) text = cmd_decompose(inst);
    else if (*analyze_cmd) text = cmd_analyze(inst);
    else if (*class_cmd) text = cmd_min_class_budget(inst, s);
    else if (*solve_cmd) {
      if (s.epsilon && s.mode == "milp")
        throw Error(ErrorCode::InvalidArgument, "--epsilon applies to knapsack mode only");
      text = cmd_solve(inst, s);
    } else if (*sweep_cmd) {
      if (s.mode == "knapsack") throw Error(ErrorCode::InvalidArgument, "sweep always uses the MILP solver");
      if (s.format.empty()) s.format = "csv";
      text = cmd_sweep(inst, s);
    } else if (*simulate_cmd) text = cmd_simulate(inst, s);
    emit(text, s, out);
    return 0;
  } catch (const Error& e) {
    report(e, err);
    return is_solver_failure(e.code()) ? 2 : 1;
  }
}

}  // namespace obo::cli
