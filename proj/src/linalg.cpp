#include "obo/linalg.hpp"

#include <cmath>
#include <numeric>
#include <utility>

#include "obo/error.hpp"
#include "obo/kernels.hpp"

namespace obo {

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix multiply(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw Error(ErrorCode::InvalidArgument, "multiply: shape mismatch");
  Matrix out(a.rows(), b.cols());
  const auto& k = kernels::active();
  // Row-times-matrix as a sequence of axpys keeps the inner loop contiguous.
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto dst = out.row(i);
    for (std::size_t l = 0; l < a.cols(); ++l) {
      const double s = a(i, l);
      if (s != 0.0) k.axpy(s, b.row(l).data(), dst.data(), b.cols());
    }
  }
  return out;
}

std::vector<double> multiply(const Matrix& m, std::span<const double> x) {
  if (m.cols() != x.size()) throw Error(ErrorCode::InvalidArgument, "multiply: shape mismatch");
  std::vector<double> y(m.rows());
  kernels::active().gemv(m.data().data(), x.data(), y.data(), m.rows(), m.cols());
  return y;
}

Matrix transpose(const Matrix& m) {
  Matrix t(m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) t(j, i) = m(i, j);
  return t;
}

Matrix power(const Matrix& m, unsigned long long p) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::InvalidArgument, "power: matrix not square");
  Matrix result = Matrix::identity(m.rows());
  Matrix base = m;
  while (p > 0) {
    if (p & 1ULL) result = multiply(result, base);
    p >>= 1;
    if (p > 0) base = multiply(base, base);
  }
  return result;
}

LuDecomposition::LuDecomposition(Matrix a) : lu_(std::move(a)), perm_(lu_.rows()) {
  const std::size_t n = lu_.rows();
  if (lu_.cols() != n) throw Error(ErrorCode::InvalidArgument, "LU: matrix not square");
  std::iota(perm_.begin(), perm_.end(), std::size_t{0});

  double scale = 0.0;
  for (double v : lu_.data()) scale = std::fmax(scale, std::fabs(v));
  const double tiny = 1e-13 * (scale > 0.0 ? scale : 1.0);
  const auto& k = kernels::active();

  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::fabs(lu_(r, col)) > std::fabs(lu_(piv, col))) piv = r;
    if (std::fabs(lu_(piv, col)) <= tiny)
      throw Error(ErrorCode::SingularSystem, "LU: matrix is singular to working precision");
    if (piv != col) {
      std::swap_ranges(lu_.row(piv).begin(), lu_.row(piv).end(), lu_.row(col).begin());
      std::swap(perm_[piv], perm_[col]);
    }
    const double d = lu_(col, col);
    const std::size_t tail = n - col - 1;
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = lu_(r, col) / d;
      lu_(r, col) = f;
      if (f != 0.0 && tail > 0) k.axpy(-f, &lu_(col, col + 1), &lu_(r, col + 1), tail);
    }
  }
}

std::vector<double> LuDecomposition::solve(std::span<const double> rhs) const {
  const std::size_t n = lu_.rows();
  if (rhs.size() != n) throw Error(ErrorCode::InvalidArgument, "LU: rhs size mismatch");
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = rhs[perm_[i]];
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) x[i] -= lu_(i, j) * x[j];
  for (std::size_t i = n; i-- > 0;) {
    for (std::size_t j = i + 1; j < n; ++j) x[i] -= lu_(i, j) * x[j];
    x[i] /= lu_(i, i);
  }
  return x;
}

std::vector<double> solve_linear(Matrix a, std::span<const double> rhs) {
  return LuDecomposition(std::move(a)).solve(rhs);
}

}  // namespace obo
