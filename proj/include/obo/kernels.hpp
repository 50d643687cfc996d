#pragma once
// Dense double-precision kernels used by the numerical inner loops
// (power iteration, matrix powers, LU elimination, simplex pivots).
//
// Every kernel has a portable scalar reference and an AVX2/FMA variant.
// The variant is picked once at startup from the CPU features; setting
// OBO_SIMD=scalar forces the reference path.

#include <cstddef>
#include <span>
#include <string_view>

namespace obo::kernels {

enum class Isa { Scalar, Avx2 };

struct KernelTable {
  Isa isa;
  // sum_i a[i] * b[i]
  double (*dot)(const double* a, const double* b, std::size_t n);
  // y[i] += alpha * x[i]
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
  // y = M x, M row-major rows x cols
  void (*gemv)(const double* m, const double* x, double* y, std::size_t rows,
               std::size_t cols);
  // max_i |a[i] - b[i]|
  double (*max_abs_diff)(const double* a, const double* b, std::size_t n);
};

const KernelTable& scalar_table();
// nullptr when the build or the CPU lacks AVX2+FMA.
const KernelTable* avx2_table();

// The table selected for this process.
const KernelTable& active();
std::string_view isa_name(Isa isa);

inline double dot(std::span<const double> a, std::span<const double> b) {
  return active().dot(a.data(), b.data(), a.size());
}
inline void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  active().axpy(alpha, x.data(), y.data(), x.size());
}
inline double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  return active().max_abs_diff(a.data(), b.data(), a.size());
}

}  // namespace obo::kernels
