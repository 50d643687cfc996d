#include "obo/chain_analysis.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "obo/error.hpp"
#include "obo/kernels.hpp"

namespace obo {

std::vector<double> stationary_distribution(const Matrix& e) {
  const std::size_t n = e.rows();
  if (n == 0 || e.cols() != n) throw Error(ErrorCode::InvalidArgument, "stationary: bad matrix shape");
  if (n == 1) return {1.0};

  // Rows of the system are the balance equations (E' - I) pi = 0; the last
  // one is redundant and becomes sum(pi) = 1.
  Matrix sys(n, n);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) sys(i, j) = e(j, i);
    sys(i, i) -= 1.0;
  }
  for (std::size_t j = 0; j < n; ++j) sys(n - 1, j) = 1.0;
  std::vector<double> rhs(n, 0.0);
  rhs[n - 1] = 1.0;

  std::vector<double> pi = solve_linear(std::move(sys), rhs);
  for (double p : pi)
    if (!(p > 1e-14))
      throw Error(ErrorCode::SingularSystem, "stationary: class is not irreducible");
  return pi;
}

std::vector<double> hitting_probabilities(const ConfidenceMatrix& a, const Decomposition& d,
                                          std::size_t k) {
  if (k >= d.classes.size()) throw Error(ErrorCode::InvalidArgument, "class index out of range");
  const std::size_t n = a.size();
  std::vector<double> h(n, 0.0);
  for (std::size_t j : d.classes[k]) h[j] = 1.0;

  const auto& tr = d.transient;
  const std::size_t nt = tr.size();
  if (nt == 0) return h;

  // (I - Q) h_F = r, with r_i the one-step mass from i into E_k.
  Matrix sys(nt, nt);
  std::vector<double> rhs(nt, 0.0);
  for (std::size_t r = 0; r < nt; ++r) {
    const std::size_t i = tr[r];
    for (std::size_t c = 0; c < nt; ++c) sys(r, c) = (r == c ? 1.0 : 0.0) - a(i, tr[c]);
    for (std::size_t j : d.classes[k]) rhs[r] += a(i, j);
  }
  const std::vector<double> hf = solve_linear(std::move(sys), rhs);
  for (std::size_t r = 0; r < nt; ++r) h[tr[r]] = std::clamp(hf[r], 0.0, 1.0);
  return h;
}

double consensus_opinion(std::span<const double> pi, std::span<const double> class_opinions) {
  if (pi.size() != class_opinions.size())
    throw Error(ErrorCode::InvalidArgument, "consensus: size mismatch");
  return kernels::dot(pi, class_opinions);
}

ChainAnalysis analyze(const ConfidenceMatrix& a, std::span<const double> opinions) {
  return analyze(a, decompose(a), opinions);
}

ChainAnalysis analyze(const ConfidenceMatrix& a, const Decomposition& d,
                      std::span<const double> opinions) {
  ChainAnalysis out;
  out.decomposition = d;
  for (std::size_t k = 0; k < d.classes.size(); ++k) {
    out.pi.push_back(stationary_distribution(submatrix(a, d, k)));
    out.hitting.push_back(hitting_probabilities(a, d, k));
  }
  out.consensus = class_consensus(out, opinions);
  out.asymptotic = asymptotic_opinions(out, opinions);
  return out;
}

std::vector<double> class_consensus(const ChainAnalysis& analysis, std::span<const double> opinions) {
  const auto& classes = analysis.decomposition.classes;
  std::vector<double> consensus(classes.size());
  std::vector<double> local;
  for (std::size_t k = 0; k < classes.size(); ++k) {
    local.clear();
    for (std::size_t j : classes[k]) local.push_back(opinions[j]);
    consensus[k] = consensus_opinion(analysis.pi[k], local);
  }
  return consensus;
}

std::vector<double> asymptotic_opinions(const ChainAnalysis& analysis, std::span<const double> opinions) {
  const auto& d = analysis.decomposition;
  const std::vector<double> consensus = class_consensus(analysis, opinions);
  std::vector<double> x(d.size(), 0.0);
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (d.is_recurrent(i)) {
      x[i] = consensus[d.class_of[i]];
      continue;
    }
    for (std::size_t k = 0; k < consensus.size(); ++k) x[i] += analysis.hitting[k][i] * consensus[k];
  }
  return x;
}

IterationResult iterate_dynamics(const ConfidenceMatrix& a, std::span<const double> opinions,
                                 std::size_t max_steps, double tol) {
  if (!(tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "iterate_dynamics: tol must be > 0");
  const std::size_t n = a.size();
  if (opinions.size() != n) throw Error(ErrorCode::InvalidArgument, "iterate_dynamics: size mismatch");
  const auto& k = kernels::active();
  std::vector<double> x(opinions.begin(), opinions.end()), next(n);
  double change = 0.0;
  for (std::size_t step = 1; step <= max_steps; ++step) {
    k.gemv(a.matrix().data().data(), x.data(), next.data(), n, n);
    change = k.max_abs_diff(x.data(), next.data(), n);
    x.swap(next);
    if (change < tol) return {std::move(x), step};
  }
  throw Error(ErrorCode::NonConvergence, "iterate_dynamics: change " + std::to_string(change) +
                                             " after " + std::to_string(max_steps) + " steps");
}

std::vector<std::size_t> supporters_of(std::span<const double> asymptotic, double threshold) {
  std::vector<std::size_t> s;
  for (std::size_t i = 0; i < asymptotic.size(); ++i)
    if (asymptotic[i] >= threshold - kTolerance) s.push_back(i);
  return s;
}

PaymentPlan evaluate_plan(const Instance& instance, const ChainAnalysis& analysis,
                          std::vector<double> payments) {
  if (payments.size() != instance.size())
    throw Error(ErrorCode::InvalidArgument, "plan: payment vector size mismatch");
  PaymentPlan plan;
  plan.expressed_opinions = expressed_opinions(instance, payments);
  plan.asymptotic_opinions = asymptotic_opinions(analysis, plan.expressed_opinions);
  plan.supporters = supporters_of(plan.asymptotic_opinions, instance.threshold);
  plan.total_spend = std::accumulate(payments.begin(), payments.end(), 0.0);
  plan.payments = std::move(payments);
  return plan;
}

}  // namespace obo
