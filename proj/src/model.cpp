#include "obo/model.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_map>
#include <utility>

#include "obo/error.hpp"

namespace obo {

std::size_t Instance::index_of(const std::string& agent) const {
  const auto it = std::find(agents.begin(), agents.end(), agent);
  if (it == agents.end()) throw Error(ErrorCode::InvalidArgument, "unknown agent '" + agent + "'");
  return static_cast<std::size_t>(it - agents.begin());
}

Instance validate(const RawInstance& raw) {
  std::vector<Violation> structural;
  const std::size_t n = raw.agents.size();
  if (n == 0) structural.push_back({ErrorCode::ParseError, "", "agent list is empty"});

  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < n; ++i) {
    if (!index.emplace(raw.agents[i], i).second)
      structural.push_back({ErrorCode::ParseError, raw.agents[i], "duplicate agent id"});
  }
  if (raw.opinions.size() != n)
    structural.push_back({ErrorCode::ParseError, "",
                          "expected " + std::to_string(n) + " opinions, got " +
                              std::to_string(raw.opinions.size())});
  if (raw.costs.size() != n)
    structural.push_back({ErrorCode::ParseError, "",
                          "expected " + std::to_string(n) + " costs, got " +
                              std::to_string(raw.costs.size())});

  std::map<std::pair<std::size_t, std::size_t>, double> weights;
  for (const auto& e : raw.edges) {
    const auto from = index.find(e.from);
    const auto to = index.find(e.to);
    if (from == index.end() || to == index.end()) {
      structural.push_back({ErrorCode::ParseError, from == index.end() ? e.from : e.to,
                            "edge references unknown agent"});
      continue;
    }
    if (!weights.emplace(std::pair{from->second, to->second}, e.weight).second)
      structural.push_back({ErrorCode::ParseError, e.from, "duplicate edge " + e.from + " -> " + e.to});
  }
  if (!structural.empty()) throw ValidationError(std::move(structural));

  std::vector<Violation> problems;
  std::vector<double> row_sum(n, 0.0);
  std::vector<bool> self(n, false);
  for (const auto& [key, w] : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      problems.push_back({ErrorCode::NegativeWeight, raw.agents[key.first],
                          "weight to '" + raw.agents[key.second] + "' must be finite and >= 0"});
      continue;
    }
    row_sum[key.first] += w;
    if (key.first == key.second && w > 0.0) self[key.first] = true;
  }
  for (std::size_t i = 0; i < n; ++i) {
    const auto& id = raw.agents[i];
    if (!(row_sum[i] > 0.0))
      problems.push_back({ErrorCode::NonStochasticRow, id, "no positive outgoing weight"});
    if (!self[i]) problems.push_back({ErrorCode::NoSelfConfidence, id, "self-confidence weight must be > 0"});
    if (!(raw.opinions[i] >= 0.0 && raw.opinions[i] <= 1.0))
      problems.push_back({ErrorCode::OpinionOutOfRange, id, "opinion must lie in [0, 1]"});
    const double cost = raw.cost_unit == CostUnit::PerTenth ? raw.costs[i] * 10.0 : raw.costs[i];
    if (!(cost > 0.0) || !std::isfinite(cost))
      problems.push_back({ErrorCode::NonpositiveCost, id, "cost must be finite and > 0"});
  }
  if (!(raw.budget >= 0.0) || !std::isfinite(raw.budget))
    problems.push_back({ErrorCode::NegativeBudget, "", "budget must be finite and >= 0"});
  if (!(raw.threshold > 0.0 && raw.threshold <= 1.0))
    problems.push_back({ErrorCode::ThresholdOutOfRange, "", "threshold must lie in (0, 1]"});
  if (!problems.empty()) throw ValidationError(std::move(problems));

  Instance inst;
  inst.agents = raw.agents;
  inst.edges.reserve(weights.size());
  for (const auto& [key, w] : weights) inst.edges.push_back({key.first, key.second, w});
  inst.true_opinions = raw.opinions;
  inst.costs = raw.costs;
  if (raw.cost_unit == CostUnit::PerTenth)
    for (double& c : inst.costs) c *= 10.0;
  inst.threshold = raw.threshold;
  inst.budget = raw.budget;
  return inst;
}

ConfidenceMatrix::ConfidenceMatrix(const Instance& instance) : a_(instance.size(), instance.size()) {
  std::vector<double> row_sum(instance.size(), 0.0);
  for (const auto& e : instance.edges) row_sum[e.from] += e.weight;
  for (const auto& e : instance.edges) a_(e.from, e.to) = e.weight / row_sum[e.from];
}

ConfidenceMatrix ConfidenceMatrix::from_stochastic(Matrix a) {
  if (a.rows() != a.cols()) throw Error(ErrorCode::InvalidArgument, "confidence matrix must be square");
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double s = 0.0;
    for (double v : a.row(i)) {
      if (v < 0.0) throw Error(ErrorCode::NonStochasticRow, "negative entry in row " + std::to_string(i));
      s += v;
    }
    if (std::fabs(s - 1.0) > 1e-12)
      throw Error(ErrorCode::NonStochasticRow, "row " + std::to_string(i) + " does not sum to 1");
    if (!(a(i, i) > 0.0))
      throw Error(ErrorCode::NoSelfConfidence, "zero diagonal in row " + std::to_string(i));
  }
  ConfidenceMatrix m;
  m.a_ = std::move(a);
  return m;
}

std::vector<double> expressed_opinions(const Instance& instance, const std::vector<double>& payments) {
  std::vector<double> x(instance.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    x[i] = instance.true_opinions[i] + payments[i] / instance.costs[i];
  return x;
}

}  // namespace obo
