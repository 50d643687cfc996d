#pragma once
// Problem instances, the confidence matrix, and payment plans.
//
// Weight w(i, j) is the confidence agent i places in agent j. Costs are
// dollars per full unit of opinion change, so paying p to agent i moves its
// expressed opinion to x_hat(i) + p / c(i).

#include <cstddef>
#include <string>
#include <vector>

#include "obo/linalg.hpp"

namespace obo {

inline constexpr double kTolerance = 1e-9;

struct WeightedEdge {
  std::size_t from = 0;
  std::size_t to = 0;
  double weight = 0.0;

  bool operator==(const WeightedEdge&) const = default;
};

enum class CostUnit { PerUnit, PerTenth };

// Fields as read from a file, before any semantic checks.
struct RawInstance {
  struct Edge {
    std::string from;
    std::string to;
    double weight = 0.0;
  };
  std::vector<std::string> agents;
  std::vector<Edge> edges;
  std::vector<double> opinions;
  std::vector<double> costs;
  CostUnit cost_unit = CostUnit::PerUnit;
  double threshold = 0.0;
  double budget = 0.0;
};

struct Instance {
  std::vector<std::string> agents;
  // Sorted by (from, to), no duplicates.
  std::vector<WeightedEdge> edges;
  std::vector<double> true_opinions;
  // Dollars per full unit of opinion.
  std::vector<double> costs;
  double threshold = 0.0;
  double budget = 0.0;

  std::size_t size() const noexcept { return agents.size(); }
  std::size_t index_of(const std::string& agent) const;

  bool operator==(const Instance&) const = default;
};

// Returns the validated instance or throws ValidationError listing every
// violated invariant (ParseError for structural problems such as unknown or
// duplicate agent ids).
Instance validate(const RawInstance& raw);

// Row-stochastic A with A(i, j) = w(i, j) / sum_j w(i, j).
class ConfidenceMatrix {
 public:
  explicit ConfidenceMatrix(const Instance& instance);
  // Wraps an already row-stochastic matrix; rows are checked to 1e-12.
  static ConfidenceMatrix from_stochastic(Matrix a);

  std::size_t size() const noexcept { return a_.rows(); }
  double operator()(std::size_t i, std::size_t j) const { return a_(i, j); }
  const Matrix& matrix() const noexcept { return a_; }

 private:
  ConfidenceMatrix() = default;
  Matrix a_;
};

inline ConfidenceMatrix confidence_matrix(const Instance& instance) {
  return ConfidenceMatrix(instance);
}

struct PaymentPlan {
  std::vector<double> payments;
  std::vector<double> expressed_opinions;
  std::vector<double> asymptotic_opinions;
  // Agent indices in ascending order.
  std::vector<std::size_t> supporters;
  double total_spend = 0.0;
};

// Expressed opinions x(0) = x_hat(0) + p / c.
std::vector<double> expressed_opinions(const Instance& instance, const std::vector<double>& payments);

}  // namespace obo
