#pragma once
// Stationary distributions, hitting probabilities and the asymptotic
// opinions they determine.
//
// Inside ergodic class k every agent converges to the consensus
//   O_k = sum_{j in E_k} pi_k(j) x_j(0),
// and a transient agent i converges to sum_k h_k(i) O_k, where h_k(i) is the
// probability that the chain started at i is absorbed into E_k.

#include <cstddef>
#include <span>
#include <vector>

#include "obo/decompose.hpp"
#include "obo/linalg.hpp"
#include "obo/model.hpp"

namespace obo {

struct ChainAnalysis {
  Decomposition decomposition;
  // pi[k] is indexed like decomposition.classes[k].
  std::vector<std::vector<double>> pi;
  // hitting[k] has one entry per agent.
  std::vector<std::vector<double>> hitting;
  // For the opinions the analysis was built with.
  std::vector<double> consensus;
  std::vector<double> asymptotic;

  std::size_t num_classes() const noexcept { return pi.size(); }
  double hit(std::size_t agent, std::size_t k) const { return hitting[k][agent]; }
};

// Solves pi' E = pi' with sum(pi) = 1 (one balance equation replaced by the
// normalization). Throws SingularSystem when E is not irreducible.
std::vector<double> stationary_distribution(const Matrix& e);

// Absorption probabilities into class k for every agent. Only the transient
// block is solved; recurrent agents get their 0/1 values directly.
std::vector<double> hitting_probabilities(const ConfidenceMatrix& a, const Decomposition& d,
                                          std::size_t k);

double consensus_opinion(std::span<const double> pi, std::span<const double> class_opinions);

// pi and h for every class plus consensus/asymptotic values for `opinions`.
ChainAnalysis analyze(const ConfidenceMatrix& a, std::span<const double> opinions);
ChainAnalysis analyze(const ConfidenceMatrix& a, const Decomposition& d,
                      std::span<const double> opinions);

std::vector<double> class_consensus(const ChainAnalysis& analysis, std::span<const double> opinions);
std::vector<double> asymptotic_opinions(const ChainAnalysis& analysis, std::span<const double> opinions);

struct IterationResult {
  std::vector<double> opinions;
  std::size_t steps = 0;
};

// Applies x <- A x until the max-norm change drops below tol. Throws
// NonConvergence after max_steps.
IterationResult iterate_dynamics(const ConfidenceMatrix& a, std::span<const double> opinions,
                                 std::size_t max_steps, double tol);

// Supporters of an opinion vector: x_i >= threshold - kTolerance.
std::vector<std::size_t> supporters_of(std::span<const double> asymptotic, double threshold);

// Expressed/asymptotic opinions and supporters that a payment vector produces.
PaymentPlan evaluate_plan(const Instance& instance, const ChainAnalysis& analysis,
                          std::vector<double> payments);

}  // namespace obo
