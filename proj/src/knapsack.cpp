#include "obo/knapsack.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "obo/error.hpp"

namespace obo {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kWeightSlack = 1e-9;

// Min-weight DP over `values`; returns the chosen item positions.
std::vector<std::size_t> solve_by_value(std::span<const std::int64_t> values,
                                        std::span<const double> weights, double budget) {
  const std::size_t m = values.size();
  std::int64_t total = 0;
  for (auto v : values) total += v;
  const auto cap = static_cast<std::size_t>(total);

  // Suffix DP: best[v] = least weight reaching value exactly v using items
  // i..m-1. Processing items back to front lets "take item i" win weight
  // ties, which yields the lexicographically smallest selection.
  std::vector<double> best(cap + 1, kInf), next(cap + 1);
  best[0] = 0.0;
  std::vector<std::vector<std::uint8_t>> take(m, std::vector<std::uint8_t>(cap + 1, 0));
  for (std::size_t i = m; i-- > 0;) {
    next = best;
    const auto vi = static_cast<std::size_t>(values[i]);
    for (std::size_t v = vi; v <= cap; ++v) {
      if (best[v - vi] == kInf) continue;
      const double w = best[v - vi] + weights[i];
      if (w <= next[v] + 1e-12 * std::max(1.0, std::fabs(w))) {
        next[v] = std::min(next[v], w);
        take[i][v] = 1;
      }
    }
    best.swap(next);
  }

  std::size_t target = 0;
  for (std::size_t v = cap + 1; v-- > 0;)
    if (best[v] <= budget + kWeightSlack) {
      target = v;
      break;
    }

  std::vector<std::size_t> chosen;
  std::size_t v = target;
  for (std::size_t i = 0; i < m && v > 0; ++i) {
    if (take[i][v]) {
      chosen.push_back(i);
      v -= static_cast<std::size_t>(values[i]);
    }
  }
  return chosen;
}

KnapsackSolution finish(std::span<const KnapsackItem> items, std::vector<std::size_t> chosen) {
  KnapsackSolution s;
  for (std::size_t i : chosen) {
    s.total_value += items[i].value;
    s.total_weight += items[i].weight;
  }
  s.selected = std::move(chosen);
  return s;
}

void check(std::span<const KnapsackItem> items) {
  for (const auto& it : items)
    if (it.value < 1 || !(it.weight >= 0.0))
      throw Error(ErrorCode::InvalidArgument, "knapsack: items need value >= 1 and weight >= 0");
}

}  // namespace

KnapsackSolution knapsack_exact(std::span<const KnapsackItem> items, double budget) {
  check(items);
  std::vector<std::int64_t> values;
  std::vector<double> weights;
  for (const auto& it : items) {
    values.push_back(it.value);
    weights.push_back(it.weight);
  }
  return finish(items, solve_by_value(values, weights, budget));
}

KnapsackSolution knapsack_fptas(std::span<const KnapsackItem> items, double budget, double epsilon) {
  check(items);
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw Error(ErrorCode::InvalidArgument, "knapsack: epsilon must lie in (0, 1)");

  // Items that cannot fit alone are dropped before scaling.
  std::vector<std::size_t> fits;
  std::int64_t vmax = 0;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (items[i].weight <= budget + kWeightSlack) {
      fits.push_back(i);
      vmax = std::max(vmax, items[i].value);
    }
  }
  if (fits.empty()) return {};

  const double scale = epsilon * static_cast<double>(vmax) / static_cast<double>(fits.size());
  std::vector<std::int64_t> values;
  std::vector<double> weights;
  for (std::size_t i : fits) {
    const auto scaled = scale > 1.0 ? static_cast<std::int64_t>(std::floor(items[i].value / scale))
                                    : items[i].value;
    values.push_back(scaled);
    weights.push_back(items[i].weight);
  }
  // Zero scaled value would never be taken; they contribute at most
  // epsilon * OPT in total, which the bound already allows.
  std::vector<std::int64_t> kept_values;
  std::vector<double> kept_weights;
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < fits.size(); ++i) {
    if (values[i] == 0) continue;
    kept.push_back(fits[i]);
    kept_values.push_back(values[i]);
    kept_weights.push_back(weights[i]);
  }
  std::vector<std::size_t> chosen;
  for (std::size_t pos : solve_by_value(kept_values, kept_weights, budget)) chosen.push_back(kept[pos]);
  return finish(items, std::move(chosen));
}

}  // namespace obo
