// Compiled with -mavx2 only. No FMA: products and sums round exactly as in the
// scalar reference.

#include <immintrin.h>

#include <cassert>
#include <cmath>

#include "kernels_impl.hpp"

namespace normmesh::kernels {
namespace {

constexpr std::size_t kWidth = 4;

inline __m256d abs_pd(__m256d v) {
  return _mm256_andnot_pd(_mm256_set1_pd(-0.0), v);
}

inline double hmax(__m256d v) {
  alignas(32) double lanes[kWidth];
  _mm256_store_pd(lanes, v);
  return std::fmax(std::fmax(lanes[0], lanes[1]), std::fmax(lanes[2], lanes[3]));
}

void mul_avx2(std::span<const double> a, std::span<const double> b, std::span<double> out) {
  assert(a.size() == b.size() && a.size() == out.size());
  const std::size_t n = out.size();
  const std::size_t body = n - n % kWidth;
  for (std::size_t i = 0; i < body; i += kWidth) {
    _mm256_storeu_pd(out.data() + i,
                     _mm256_mul_pd(_mm256_loadu_pd(a.data() + i), _mm256_loadu_pd(b.data() + i)));
  }
  for (std::size_t i = body; i < n; ++i) out[i] = a[i] * b[i];
}

void axpy_avx2(double alpha, std::span<const double> x, std::span<double> y) {
  assert(x.size() == y.size());
  const std::size_t n = y.size();
  const std::size_t body = n - n % kWidth;
  const __m256d va = _mm256_set1_pd(alpha);
  for (std::size_t i = 0; i < body; i += kWidth) {
    const __m256d t = _mm256_mul_pd(va, _mm256_loadu_pd(x.data() + i));
    _mm256_storeu_pd(y.data() + i, _mm256_add_pd(_mm256_loadu_pd(y.data() + i), t));
  }
  for (std::size_t i = body; i < n; ++i) {
    const double t = alpha * x[i];
    y[i] = y[i] + t;
  }
}

void scale_avx2(double alpha, std::span<double> x) {
  const std::size_t n = x.size();
  const std::size_t body = n - n % kWidth;
  const __m256d va = _mm256_set1_pd(alpha);
  for (std::size_t i = 0; i < body; i += kWidth)
    _mm256_storeu_pd(x.data() + i, _mm256_mul_pd(_mm256_loadu_pd(x.data() + i), va));
  for (std::size_t i = body; i < n; ++i) x[i] *= alpha;
}

void add_abs_avx2(std::span<const double> x, std::span<double> acc) {
  assert(x.size() == acc.size());
  const std::size_t n = x.size();
  const std::size_t body = n - n % kWidth;
  for (std::size_t i = 0; i < body; i += kWidth) {
    const __m256d v = abs_pd(_mm256_loadu_pd(x.data() + i));
    _mm256_storeu_pd(acc.data() + i, _mm256_add_pd(_mm256_loadu_pd(acc.data() + i), v));
  }
  for (std::size_t i = body; i < n; ++i) acc[i] += std::fabs(x[i]);
}

double dot_avx2(std::span<const double> a, std::span<const double> b) {
  assert(a.size() == b.size());
  const std::size_t n = a.size();
  const std::size_t body = n - n % kWidth;
  __m256d acc = _mm256_setzero_pd();
  for (std::size_t i = 0; i < body; i += kWidth) {
    const __m256d p = _mm256_mul_pd(_mm256_loadu_pd(a.data() + i), _mm256_loadu_pd(b.data() + i));
    acc = _mm256_add_pd(acc, p);
  }
  alignas(32) double lane[kWidth];
  _mm256_store_pd(lane, acc);
  double s = (lane[0] + lane[1]) + (lane[2] + lane[3]);
  for (std::size_t i = body; i < n; ++i) {
    const double p = a[i] * b[i];
    s = s + p;
  }
  return s;
}

double max_abs_avx2(std::span<const double> x) {
  const std::size_t n = x.size();
  const std::size_t body = n - n % kWidth;
  __m256d m = _mm256_setzero_pd();
  for (std::size_t i = 0; i < body; i += kWidth)
    m = _mm256_max_pd(m, abs_pd(_mm256_loadu_pd(x.data() + i)));
  double r = hmax(m);
  for (std::size_t i = body; i < n; ++i) r = std::fmax(r, std::fabs(x[i]));
  return r;
}

double max_abs_axpy_avx2(std::span<const double> y, double alpha, std::span<const double> x) {
  assert(x.size() == y.size());
  const std::size_t n = y.size();
  const std::size_t body = n - n % kWidth;
  const __m256d va = _mm256_set1_pd(alpha);
  __m256d m = _mm256_setzero_pd();
  for (std::size_t i = 0; i < body; i += kWidth) {
    const __m256d t = _mm256_mul_pd(va, _mm256_loadu_pd(x.data() + i));
    m = _mm256_max_pd(m, abs_pd(_mm256_add_pd(_mm256_loadu_pd(y.data() + i), t)));
  }
  double r = hmax(m);
  for (std::size_t i = body; i < n; ++i) {
    const double t = alpha * x[i];
    r = std::fmax(r, std::fabs(y[i] + t));
  }
  return r;
}

std::size_t first_abs_above_avx2(std::span<const double> x, double threshold) {
  const std::size_t n = x.size();
  const std::size_t body = n - n % kWidth;
  const __m256d vt = _mm256_set1_pd(threshold);
  for (std::size_t i = 0; i < body; i += kWidth) {
    const __m256d gt = _mm256_cmp_pd(abs_pd(_mm256_loadu_pd(x.data() + i)), vt, _CMP_GT_OQ);
    const int mask = _mm256_movemask_pd(gt);
    if (mask != 0) return i + static_cast<std::size_t>(__builtin_ctz(static_cast<unsigned>(mask)));
  }
  for (std::size_t i = body; i < n; ++i)
    if (std::fabs(x[i]) > threshold) return i;
  return npos;
}

}  // namespace

namespace detail {

KernelTable make_avx2_table() noexcept {
  return KernelTable{
      "avx2",          mul_avx2,     axpy_avx2,         scale_avx2,
      add_abs_avx2,    dot_avx2,     max_abs_avx2,      max_abs_axpy_avx2,
      first_abs_above_avx2,
  };
}

}  // namespace detail
}  // namespace normmesh::kernels
