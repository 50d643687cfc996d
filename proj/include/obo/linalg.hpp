#pragma once
// Small dense linear algebra: a row-major matrix and an LU solver.

#include <cstddef>
#include <span>
#include <vector>

namespace obo {

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  std::span<const double> data() const noexcept { return data_; }

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Matrix multiply(const Matrix& a, const Matrix& b);
std::vector<double> multiply(const Matrix& m, std::span<const double> x);
Matrix transpose(const Matrix& m);
// m^power by repeated squaring.
Matrix power(const Matrix& m, unsigned long long power);

// LU factorization with partial pivoting. Throws Error{SingularSystem} when a
// pivot is negligible relative to the largest entry of its column.
class LuDecomposition {
 public:
  explicit LuDecomposition(Matrix a);
  std::vector<double> solve(std::span<const double> rhs) const;
  std::size_t size() const noexcept { return lu_.rows(); }

 private:
  Matrix lu_;
  std::vector<std::size_t> perm_;
};

std::vector<double> solve_linear(Matrix a, std::span<const double> rhs);

}  // namespace obo
