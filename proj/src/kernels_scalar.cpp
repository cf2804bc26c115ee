#include <cassert>
#include <cmath>

#include "normmesh/kernels.hpp"

namespace normmesh::kernels {
namespace {

constexpr std::size_t kLanes = 4;

void mul_scalar(std::span<const double> a, std::span<const double> b, std::span<double> out) {
  assert(a.size() == b.size() && a.size() == out.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a[i] * b[i];
}

void axpy_scalar(double alpha, std::span<const double> x, std::span<double> y) {
  assert(x.size() == y.size());
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double t = alpha * x[i];
    y[i] = y[i] + t;
  }
}

void scale_scalar(double alpha, std::span<double> x) {
  for (double& v : x) v *= alpha;
}

void add_abs_scalar(std::span<const double> x, std::span<double> acc) {
  assert(x.size() == acc.size());
  for (std::size_t i = 0; i < x.size(); ++i) acc[i] += std::fabs(x[i]);
}

double dot_scalar(std::span<const double> a, std::span<const double> b) {
  assert(a.size() == b.size());
  const std::size_t n = a.size();
  const std::size_t body = n - n % kLanes;
  double lane[kLanes] = {0.0, 0.0, 0.0, 0.0};
  for (std::size_t i = 0; i < body; i += kLanes) {
    for (std::size_t l = 0; l < kLanes; ++l) {
      const double p = a[i + l] * b[i + l];
      lane[l] = lane[l] + p;
    }
  }
  double s = (lane[0] + lane[1]) + (lane[2] + lane[3]);
  for (std::size_t i = body; i < n; ++i) {
    const double p = a[i] * b[i];
    s = s + p;
  }
  return s;
}

double max_abs_scalar(std::span<const double> x) {
  double m = 0.0;
  for (double v : x) m = std::fmax(m, std::fabs(v));
  return m;
}

double max_abs_axpy_scalar(std::span<const double> y, double alpha, std::span<const double> x) {
  assert(x.size() == y.size());
  double m = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double t = alpha * x[i];
    m = std::fmax(m, std::fabs(y[i] + t));
  }
  return m;
}

std::size_t first_abs_above_scalar(std::span<const double> x, double threshold) {
  for (std::size_t i = 0; i < x.size(); ++i)
    if (std::fabs(x[i]) > threshold) return i;
  return npos;
}

}  // namespace

const KernelTable& scalar_kernels() noexcept {
  static const KernelTable table{
      "scalar",         mul_scalar,     axpy_scalar,         scale_scalar,
      add_abs_scalar,   dot_scalar,     max_abs_scalar,      max_abs_axpy_scalar,
      first_abs_above_scalar,
  };
  return table;
}

}  // namespace normmesh::kernels
