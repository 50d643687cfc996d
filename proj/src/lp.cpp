#include "obo/lp.hpp"

#include <algorithm>
#include <cmath>

#include "obo/error.hpp"
#include "obo/kernels.hpp"
#include "obo/linalg.hpp"

namespace obo {

LinearProgram::LinearProgram(std::size_t num_vars)
    : objective_(num_vars, 0.0), lower_(num_vars, 0.0), upper_(num_vars, kInfinity) {}

void LinearProgram::set_bounds(std::size_t var, double lower, double upper) {
  lower_.at(var) = lower;
  upper_.at(var) = upper;
}

std::size_t LinearProgram::add_constraint(std::vector<double> coeffs, Sense sense, double rhs) {
  if (coeffs.size() != num_vars()) throw Error(ErrorCode::InvalidArgument, "lp: row has wrong width");
  rows_.push_back({std::move(coeffs), sense, rhs});
  return rows_.size() - 1;
}

namespace {

// Columns: structural [0, nv), slack [nv, nv + m), artificial [nv + m, nv + 2m).
class Tableau {
 public:
  Tableau(const LinearProgram& lp, const SimplexOptions& opt)
      : opt_(opt), nv_(lp.num_vars()), m_(lp.num_rows()), ncols_(nv_ + 2 * m_),
        t_(m_, ncols_), basis_(m_), x_(ncols_, 0.0), lo_(ncols_, 0.0), hi_(ncols_, 0.0),
        is_basic_(ncols_, false) {
    for (std::size_t j = 0; j < nv_; ++j) {
      lo_[j] = lp.lower(j);
      hi_[j] = lp.upper(j);
      x_[j] = std::isfinite(lo_[j]) ? lo_[j] : (std::isfinite(hi_[j]) ? hi_[j] : 0.0);
    }
    for (std::size_t i = 0; i < m_; ++i) {
      const auto& row = lp.rows()[i];
      const std::size_t s = nv_ + i;
      switch (row.sense) {
        case Sense::LessEqual: lo_[s] = 0.0; hi_[s] = kInfinity; break;
        case Sense::GreaterEqual: lo_[s] = -kInfinity; hi_[s] = 0.0; break;
        case Sense::Equal: lo_[s] = 0.0; hi_[s] = 0.0; break;
      }
      double residual = row.rhs;
      for (std::size_t j = 0; j < nv_; ++j) residual -= row.coeffs[j] * x_[j];
      const double sign = residual >= 0.0 ? 1.0 : -1.0;
      for (std::size_t j = 0; j < nv_; ++j) t_(i, j) = sign * row.coeffs[j];
      t_(i, s) = sign;
      const std::size_t a = nv_ + m_ + i;
      t_(i, a) = 1.0;
      lo_[a] = 0.0;
      hi_[a] = kInfinity;
      x_[a] = std::fabs(residual);
      basis_[i] = a;
      is_basic_[a] = true;
    }
    limit_ = opt_.max_pivots ? opt_.max_pivots : 50 * (m_ + ncols_) + 1000;
  }

  LpStatus run_phase(const std::vector<double>& cost) {
    std::vector<double> d(ncols_);
    for (;;) {
      reduced_costs(cost, d);
      const bool bland = pivots_ >= opt_.bland_after;
      std::size_t enter = ncols_;
      double best = 0.0;
      int dir = 0;
      for (std::size_t j = 0; j < ncols_; ++j) {
        if (is_basic_[j] || hi_[j] - lo_[j] <= 0.0) continue;
        int cand = 0;
        if (d[j] < -opt_.optimality_tol && x_[j] < hi_[j]) cand = +1;
        else if (d[j] > opt_.optimality_tol && x_[j] > lo_[j]) cand = -1;
        if (cand == 0) continue;
        if (bland) {
          enter = j;
          dir = cand;
          break;
        }
        if (std::fabs(d[j]) > best) {
          best = std::fabs(d[j]);
          enter = j;
          dir = cand;
        }
      }
      if (enter == ncols_) return LpStatus::Optimal;
      if (pivots_ >= limit_)
        throw Error(ErrorCode::NumericalFailure, "simplex: pivot limit reached");
      if (!step(enter, dir, bland)) return LpStatus::Unbounded;
      ++pivots_;
    }
  }

  // Drives zero-valued artificials out of the basis where a pivot exists,
  // then fixes every artificial at zero.
  void end_phase_one() {
    for (std::size_t r = 0; r < m_; ++r) {
      if (!is_artificial(basis_[r])) continue;
      std::size_t col = ncols_;
      double big = opt_.pivot_tol;
      for (std::size_t j = 0; j < nv_ + m_; ++j) {
        if (is_basic_[j]) continue;
        if (std::fabs(t_(r, j)) > big) {
          big = std::fabs(t_(r, j));
          col = j;
        }
      }
      if (col != ncols_) pivot(r, col);
    }
    for (std::size_t a = nv_ + m_; a < ncols_; ++a) {
      hi_[a] = 0.0;
      if (!is_basic_[a]) x_[a] = 0.0;
    }
  }

  double artificial_sum() const {
    double s = 0.0;
    for (std::size_t a = nv_ + m_; a < ncols_; ++a) s += x_[a];
    return s;
  }

  std::vector<double> structural() const {
    std::vector<double> out(x_.begin(), x_.begin() + static_cast<std::ptrdiff_t>(nv_));
    for (std::size_t j = 0; j < nv_; ++j) out[j] = std::clamp(out[j], lo_[j], hi_[j]);
    return out;
  }

  std::size_t ncols() const { return ncols_; }
  std::size_t nv() const { return nv_; }
  std::size_t m() const { return m_; }
  std::size_t pivots() const { return pivots_; }

 private:
  bool is_artificial(std::size_t j) const { return j >= nv_ + m_; }

  void reduced_costs(const std::vector<double>& cost, std::vector<double>& d) const {
    d = cost;
    for (std::size_t r = 0; r < m_; ++r) {
      const double cb = cost[basis_[r]];
      if (cb != 0.0) kernels::active().axpy(-cb, t_.row(r).data(), d.data(), ncols_);
    }
  }

  // Moves nonbasic `enter` in direction dir; false if unbounded.
  bool step(std::size_t enter, int dir, bool bland) {
    double t = hi_[enter] - lo_[enter];  // bound flip
    std::size_t leave_row = m_;
    double leave_alpha = 0.0;
    for (std::size_t r = 0; r < m_; ++r) {
      const double alpha = t_(r, enter);
      if (std::fabs(alpha) <= opt_.pivot_tol) continue;
      const std::size_t b = basis_[r];
      const double rate = -dir * alpha;  // d x_b / d t
      double limit = kInfinity;
      if (rate < 0.0 && std::isfinite(lo_[b])) limit = std::max(0.0, (x_[b] - lo_[b]) / -rate);
      else if (rate > 0.0 && std::isfinite(hi_[b])) limit = std::max(0.0, (hi_[b] - x_[b]) / rate);
      if (!std::isfinite(limit)) continue;
      bool take = false;
      if (limit < t - 1e-12) {
        take = true;
      } else if (limit <= t + 1e-12) {
        // Tie: Bland keeps the smallest basic index, Dantzig the largest pivot.
        take = leave_row == m_ ||
               (bland ? basis_[r] < basis_[leave_row] : std::fabs(alpha) > std::fabs(leave_alpha));
      }
      if (take) {
        t = std::min(t, limit);
        leave_row = r;
        leave_alpha = alpha;
      }
    }
    if (!std::isfinite(t)) return false;

    x_[enter] += dir * t;
    for (std::size_t r = 0; r < m_; ++r) x_[basis_[r]] -= dir * t * t_(r, enter);
    if (leave_row == m_) {
      // Bound flip: land exactly on the opposite bound.
      x_[enter] = dir > 0 ? hi_[enter] : lo_[enter];
      return true;
    }
    const std::size_t out = basis_[leave_row];
    const double rate = -dir * t_(leave_row, enter);
    x_[out] = rate < 0.0 ? lo_[out] : hi_[out];
    pivot(leave_row, enter);
    return true;
  }

  void pivot(std::size_t r, std::size_t col) {
    const auto& k = kernels::active();
    const double p = t_(r, col);
    auto prow = t_.row(r);
    for (double& v : prow) v /= p;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == r) continue;
      const double f = t_(i, col);
      if (f != 0.0) {
        k.axpy(-f, prow.data(), t_.row(i).data(), ncols_);
        t_(i, col) = 0.0;
      }
    }
    t_(r, col) = 1.0;
    is_basic_[basis_[r]] = false;
    basis_[r] = col;
    is_basic_[col] = true;
  }

  SimplexOptions opt_;
  std::size_t nv_, m_, ncols_;
  Matrix t_;
  std::vector<std::size_t> basis_;
  std::vector<double> x_, lo_, hi_;
  std::vector<bool> is_basic_;
  std::size_t pivots_ = 0;
  std::size_t limit_ = 0;
};

}  // namespace

LpResult solve_lp(const LinearProgram& lp, const SimplexOptions& options) {
  LpResult result;
  for (std::size_t j = 0; j < lp.num_vars(); ++j) {
    if (lp.lower(j) > lp.upper(j) || lp.lower(j) == kInfinity || lp.upper(j) == -kInfinity) {
      result.status = LpStatus::Infeasible;
      return result;
    }
  }

  Tableau tab(lp, options);
  std::vector<double> cost(tab.ncols(), 0.0);
  for (std::size_t a = tab.nv() + tab.m(); a < tab.ncols(); ++a) cost[a] = 1.0;
  tab.run_phase(cost);

  double scale = 1.0;
  for (const auto& row : lp.rows()) scale = std::max(scale, std::fabs(row.rhs));
  if (tab.artificial_sum() > options.feasibility_tol * scale) {
    result.status = LpStatus::Infeasible;
    result.pivots = tab.pivots();
    return result;
  }
  tab.end_phase_one();

  std::fill(cost.begin(), cost.end(), 0.0);
  for (std::size_t j = 0; j < lp.num_vars(); ++j) cost[j] = -lp.objective()[j];
  result.status = tab.run_phase(cost);
  result.pivots = tab.pivots();
  if (result.status != LpStatus::Optimal) return result;

  result.x = tab.structural();
  for (std::size_t j = 0; j < lp.num_vars(); ++j) result.objective += lp.objective()[j] * result.x[j];
  return result;
}

}  // namespace obo
