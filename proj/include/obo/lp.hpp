#pragma once
// Dense bounded-variable primal simplex.
//
// Solves   maximize c'x  s.t.  each row  a'x {<=,=,>=} b,  l <= x <= u
// with a two-phase method on a full tableau. Pivoting uses Dantzig's rule
// and switches to Bland's rule after a fixed number of pivots, so runs are
// deterministic and cannot cycle.

#include <cstddef>
#include <limits>
#include <vector>

namespace obo {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

enum class Sense { LessEqual, Equal, GreaterEqual };

struct LinearConstraint {
  std::vector<double> coeffs;
  Sense sense = Sense::LessEqual;
  double rhs = 0.0;
};

class LinearProgram {
 public:
  explicit LinearProgram(std::size_t num_vars);

  std::size_t num_vars() const noexcept { return objective_.size(); }
  std::size_t num_rows() const noexcept { return rows_.size(); }

  void set_objective(std::size_t var, double coeff) { objective_.at(var) = coeff; }
  void set_bounds(std::size_t var, double lower, double upper);
  std::size_t add_constraint(std::vector<double> coeffs, Sense sense, double rhs);

  const std::vector<double>& objective() const noexcept { return objective_; }
  const std::vector<LinearConstraint>& rows() const noexcept { return rows_; }
  const std::vector<double>& lower() const noexcept { return lower_; }
  const std::vector<double>& upper() const noexcept { return upper_; }
  double lower(std::size_t var) const { return lower_.at(var); }
  double upper(std::size_t var) const { return upper_.at(var); }

 private:
  std::vector<double> objective_;
  std::vector<LinearConstraint> rows_;
  std::vector<double> lower_;
  std::vector<double> upper_;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  std::vector<double> x;
  double objective = 0.0;
  std::size_t pivots = 0;
};

struct SimplexOptions {
  double feasibility_tol = 1e-7;
  double optimality_tol = 1e-9;
  double pivot_tol = 1e-9;
  // Dantzig pivots before switching to Bland's rule.
  std::size_t bland_after = 200;
  // 0 picks a limit from the problem size.
  std::size_t max_pivots = 0;
};

// Throws Error{NumericalFailure} when the pivot limit is hit.
LpResult solve_lp(const LinearProgram& lp, const SimplexOptions& options = {});

}  // namespace obo
