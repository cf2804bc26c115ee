#include <doctest.h>

#include <cmath>
#include <cstring>
#include <random>
#include <vector>

#include "normmesh/kernels.hpp"

using namespace normmesh;

namespace {

std::vector<double> random_vector(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> dist(0.0, 3.0);
  std::vector<double> v(n);
  for (double& x : v) x = dist(rng);
  return v;
}

bool bit_equal(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

bool bit_equal(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

}  // namespace

TEST_CASE("scalar reference kernels") {
  const auto& k = kernels::scalar_kernels();
  const std::vector<double> a{1.0, -2.0, 3.0, -4.0, 5.0};
  const std::vector<double> b{2.0, 2.0, 2.0, 2.0, 2.0};
  std::vector<double> out(5);
  k.mul(a, b, out);
  CHECK(out == std::vector<double>{2.0, -4.0, 6.0, -8.0, 10.0});
  CHECK(k.dot(a, b) == 6.0);
  CHECK(k.max_abs(a) == 5.0);
  CHECK(k.max_abs(std::vector<double>{}) == 0.0);
  CHECK(k.max_abs_axpy(a, -0.5, b) == 5.0);  // |-4 - 1|
  CHECK(k.first_abs_above(a, 3.5) == 3);
  CHECK(k.first_abs_above(a, 5.0) == kernels::npos);
  std::vector<double> y = a;
  k.axpy(2.0, b, y);
  CHECK(y == std::vector<double>{5.0, 2.0, 7.0, 0.0, 9.0});
  std::vector<double> acc(5, 1.0);
  k.add_abs(a, acc);
  CHECK(acc == std::vector<double>{2.0, 3.0, 4.0, 5.0, 6.0});
  k.scale(-1.0, acc);
  CHECK(acc[4] == -6.0);
}

TEST_CASE("SIMD kernels are bit-identical to the scalar reference") {
  const kernels::KernelTable* simd = kernels::avx2_kernels();
  if (simd == nullptr) {
    MESSAGE("AVX2 kernels unavailable on this build/CPU; equivalence test skipped");
    return;
  }
  const auto& ref = kernels::scalar_kernels();
  std::mt19937_64 rng(20240611);
  for (std::size_t n : {0u, 1u, 3u, 4u, 5u, 7u, 8u, 17u, 64u, 1001u}) {
    CAPTURE(n);
    const auto a = random_vector(n, rng);
    const auto b = random_vector(n, rng);
    const double alpha = 0.37;

    std::vector<double> o1(n), o2(n);
    ref.mul(a, b, o1);
    simd->mul(a, b, o2);
    CHECK(bit_equal(o1, o2));

    o1 = b;
    o2 = b;
    ref.axpy(alpha, a, o1);
    simd->axpy(alpha, a, o2);
    CHECK(bit_equal(o1, o2));

    o1 = a;
    o2 = a;
    ref.scale(alpha, o1);
    simd->scale(alpha, o2);
    CHECK(bit_equal(o1, o2));

    o1 = b;
    o2 = b;
    ref.add_abs(a, o1);
    simd->add_abs(a, o2);
    CHECK(bit_equal(o1, o2));

    CHECK(bit_equal(ref.dot(a, b), simd->dot(a, b)));
    CHECK(bit_equal(ref.max_abs(a), simd->max_abs(a)));
    CHECK(bit_equal(ref.max_abs_axpy(a, alpha, b), simd->max_abs_axpy(a, alpha, b)));
    for (double thr : {0.0, 1.0, 4.0, 8.0, 1e9}) CHECK(ref.first_abs_above(a, thr) == simd->first_abs_above(a, thr));
  }
}

TEST_CASE("dot product follows the four-lane summation order") {
  // Lanes: (1e16 + 1) + (-1e16 + 1) with lane combination (l0 + l1) + (l2 + l3).
  const std::vector<double> a{1e16, 1.0, -1e16, 1.0, 1.0};
  const std::vector<double> ones(5, 1.0);
  const double l0 = 1e16, l1 = 1.0, l2 = -1e16, l3 = 1.0;
  const double expected = ((l0 + l1) + (l2 + l3)) + 1.0;
  CHECK(kernels::scalar_kernels().dot(a, ones) == expected);
  CHECK(kernels::active().dot(a, ones) == expected);
}
