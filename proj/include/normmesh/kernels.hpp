#pragma once

// Data-parallel inner loops shared by the polynomial, mesh and distortion
// code. Every kernel has a portable scalar reference and, on x86-64, an AVX2
// variant picked at runtime. Reductions accumulate in four interleaved lanes
// (element i goes to lane i % 4, lanes combined as (l0 + l1) + (l2 + l3), tail
// added last) in both variants, so results are bit-identical across variants.

#include <cstddef>
#include <span>
#include <string_view>

namespace normmesh::kernels {

inline constexpr std::size_t npos = static_cast<std::size_t>(-1);

struct KernelTable {
  std::string_view name;
  /// out[i] = a[i] * b[i]
  void (*mul)(std::span<const double> a, std::span<const double> b, std::span<double> out);
  /// y[i] += alpha * x[i]
  void (*axpy)(double alpha, std::span<const double> x, std::span<double> y);
  /// x[i] *= alpha
  void (*scale)(double alpha, std::span<double> x);
  /// acc[i] += |x[i]|
  void (*add_abs)(std::span<const double> x, std::span<double> acc);
  double (*dot)(std::span<const double> a, std::span<const double> b);
  double (*max_abs)(std::span<const double> x);
  /// max_i |y[i] + alpha * x[i]|
  double (*max_abs_axpy)(std::span<const double> y, double alpha, std::span<const double> x);
  /// Smallest i with |x[i]| > threshold, or npos.
  std::size_t (*first_abs_above)(std::span<const double> x, double threshold);
};

const KernelTable& scalar_kernels() noexcept;

/// Null when the build or the CPU lacks AVX2.
const KernelTable* avx2_kernels() noexcept;

/// Kernel set used by the library. AVX2 when available unless the environment
/// variable NORMMESH_KERNELS is set to "scalar".
const KernelTable& active() noexcept;

// Convenience wrappers over active().
inline void mul(std::span<const double> a, std::span<const double> b, std::span<double> out) {
  active().mul(a, b, out);
}
inline void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  active().axpy(alpha, x, y);
}
inline void scale(double alpha, std::span<double> x) { active().scale(alpha, x); }
inline void add_abs(std::span<const double> x, std::span<double> acc) { active().add_abs(x, acc); }
inline double dot(std::span<const double> a, std::span<const double> b) { return active().dot(a, b); }
inline double max_abs(std::span<const double> x) { return active().max_abs(x); }
inline double max_abs_axpy(std::span<const double> y, double alpha, std::span<const double> x) {
  return active().max_abs_axpy(y, alpha, x);
}
inline std::size_t first_abs_above(std::span<const double> x, double threshold) {
  return active().first_abs_above(x, threshold);
}

}  // namespace normmesh::kernels
