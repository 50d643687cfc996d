#pragma once
// 0-1 knapsack over ergodic classes: value = class size, weight = the
// class's price tag in dollars.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace obo {

struct KnapsackItem {
  std::size_t class_index = 0;
  std::int64_t value = 1;
  double weight = 0.0;
};

struct KnapsackSolution {
  // Positions into the item list, ascending.
  std::vector<std::size_t> selected;
  std::int64_t total_value = 0;
  double total_weight = 0.0;
};

// Exact DP indexed by value, storing the minimum weight per value. Among
// optimal selections the lighter one wins, then the lexicographically
// smallest.
KnapsackSolution knapsack_exact(std::span<const KnapsackItem> items, double budget);

// Value-truncation FPTAS: total_value >= (1 - epsilon) * OPT.
KnapsackSolution knapsack_fptas(std::span<const KnapsackItem> items, double budget, double epsilon);

}  // namespace obo
