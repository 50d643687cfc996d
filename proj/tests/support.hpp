#pragma once
// Shared test helpers: the worked-example fixture, random instance
// generators, and implementation-independent oracles.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "obo/io.hpp"
#include "obo/model.hpp"

#ifndef OBO_DATA_DIR
#error "OBO_DATA_DIR must point at the fixture directory"
#endif

namespace obo::test {

inline std::string data_path(const std::string& name) { return std::string(OBO_DATA_DIR) + "/" + name; }

inline Instance worked_example() { return io::load_instance(data_path("worked_example.json")); }

struct Shape {
  std::size_t n = 6;
  std::size_t classes = 1;
  std::size_t transients = 0;
};

// Random valid instance with a prescribed class/transient structure. Agent
// indices are shuffled so classes are not contiguous. Every transient agent
// gets one edge to a recurrent agent or to an earlier transient, so no group
// of transients is closed.
inline Instance random_instance(std::mt19937_64& rng, Shape shape, double edge_prob = 0.4) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> weight(0.05, 1.0);
  const std::size_t n = shape.n;
  const std::size_t nr = n - shape.transients;
  const std::size_t m = std::max<std::size_t>(1, std::min(shape.classes, nr));

  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::shuffle(perm.begin(), perm.end(), rng);

  // Split the first nr shuffled agents into m nonempty classes.
  std::vector<std::vector<std::size_t>> classes(m);
  for (std::size_t r = 0; r < nr; ++r) {
    const std::size_t k = r < m ? r : std::uniform_int_distribution<std::size_t>(0, m - 1)(rng);
    classes[k].push_back(perm[r]);
  }
  std::vector<std::size_t> recurrent(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(nr));
  std::vector<std::size_t> transients(perm.begin() + static_cast<std::ptrdiff_t>(nr), perm.end());

  std::vector<std::vector<double>> w(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) w[i][i] = weight(rng);
  for (const auto& cls : classes) {
    if (cls.size() > 1)
      for (std::size_t p = 0; p < cls.size(); ++p) w[cls[p]][cls[(p + 1) % cls.size()]] = weight(rng);
    for (std::size_t a : cls)
      for (std::size_t b : cls)
        if (a != b && unit(rng) < edge_prob) w[a][b] = weight(rng);
  }
  for (std::size_t t = 0; t < transients.size(); ++t) {
    const std::size_t i = transients[t];
    const std::size_t pool = recurrent.size() + t;
    const std::size_t pick = std::uniform_int_distribution<std::size_t>(0, pool - 1)(rng);
    const std::size_t target = pick < recurrent.size() ? recurrent[pick] : transients[pick - recurrent.size()];
    w[i][target] = weight(rng);
    for (std::size_t j = 0; j < n; ++j)
      if (j != i && unit(rng) < edge_prob * 0.6) w[i][j] = weight(rng);
  }

  RawInstance raw;
  for (std::size_t i = 0; i < n; ++i) raw.agents.push_back("a" + std::to_string(i));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (w[i][j] > 0.0) raw.edges.push_back({raw.agents[i], raw.agents[j], w[i][j]});
  for (std::size_t i = 0; i < n; ++i) {
    raw.opinions.push_back(std::round(unit(rng) * 100.0) / 100.0);
    raw.costs.push_back(10.0 + std::round(unit(rng) * 990.0));
  }
  raw.threshold = 0.3 + 0.6 * unit(rng);
  raw.budget = std::round(unit(rng) * 1000.0);
  return validate(raw);
}

// Random shape with at most max_n agents.
inline Shape random_shape(std::mt19937_64& rng, std::size_t min_n, std::size_t max_n, bool transients = true) {
  Shape s;
  s.n = std::uniform_int_distribution<std::size_t>(min_n, max_n)(rng);
  s.transients = transients ? std::uniform_int_distribution<std::size_t>(0, s.n - 1)(rng) : 0;
  const std::size_t nr = s.n - s.transients;
  s.classes = std::uniform_int_distribution<std::size_t>(1, std::max<std::size_t>(1, std::min<std::size_t>(nr, 4)))(rng);
  return s;
}

// x <- A x until the max-norm change is below tol; independent of the kernels.
inline std::vector<double> power_iterate(const std::vector<std::vector<double>>& a, std::vector<double> x,
                                         double tol, std::size_t max_steps) {
  const std::size_t n = x.size();
  std::vector<double> next(n);
  for (std::size_t step = 0; step < max_steps; ++step) {
    double change = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < n; ++j) s += a[i][j] * x[j];
      next[i] = s;
      change = std::max(change, std::fabs(next[i] - x[i]));
    }
    x.swap(next);
    if (change < tol) break;
  }
  return x;
}

inline std::vector<std::vector<double>> dense_confidence(const Instance& inst) {
  const std::size_t n = inst.size();
  std::vector<std::vector<double>> a(n, std::vector<double>(n, 0.0));
  std::vector<double> sum(n, 0.0);
  for (const auto& e : inst.edges) sum[e.from] += e.weight;
  for (const auto& e : inst.edges) a[e.from][e.to] = e.weight / sum[e.from];
  return a;
}

// Minimum spend of a single-class lift by vertex enumeration: an optimal
// point pays some agents fully, at most one agent fractionally, the rest 0.
inline double class_budget_by_vertices(const std::vector<double>& pi, const std::vector<double>& x,
                                       const std::vector<double>& c, double target) {
  const std::size_t n = pi.size();
  double base = 0.0;
  for (std::size_t j = 0; j < n; ++j) base += pi[j] * x[j];
  if (base >= target) return 0.0;
  double best = INFINITY;
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    double reached = base, spend = 0.0;
    for (std::size_t j = 0; j < n; ++j)
      if (mask >> j & 1) {
        reached += pi[j] * (1.0 - x[j]);
        spend += c[j] * (1.0 - x[j]);
      }
    if (reached >= target - 1e-13) best = std::min(best, spend);
    for (std::size_t s = 0; s < n; ++s) {
      if (mask >> s & 1) continue;
      const double need = target - reached;
      if (need <= 0.0 || need > pi[s] * (1.0 - x[s]) + 1e-15) continue;
      best = std::min(best, spend + c[s] * need / pi[s]);
    }
  }
  return best;
}

}  // namespace obo::test
