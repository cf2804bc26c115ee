#include <doctest.h>

#include <cmath>

#include "normmesh/bounds.hpp"
#include "normmesh/error.hpp"
#include "normmesh/polyspace.hpp"
#include "oracles.hpp"

using namespace normmesh;

namespace {

double d_of(const HpFloat& x) { return static_cast<double>(x); }

GrowthConstant exp_of(double x) { return GrowthConstant::from_log(HpAudit(x)); }

}  // namespace

TEST_CASE("mesh size for the fixed-schedule mesh") {
  CHECK(mesh_size_A(1, 1) == 199);
  CHECK(mesh_size_A(1, 2) == 399);
  for (unsigned long n = 1; n <= 6; ++n)
    for (unsigned long d : {1ul, 2ul, 3ul, 7ul, 10ul, 50ul, 1000ul})
      CHECK(mesh_size_A(n, d).str() == oracle::mesh_size_A(n, d));
  CHECK_THROWS_AS(mesh_size_A(0, 1), ValidationError);
  CHECK_THROWS_AS(mesh_size_A(1, 0), ValidationError);
}

TEST_CASE("distortion constant of the fixed-schedule mesh") {
  CHECK(d_of(dist_bound_A(1)) == doctest::Approx(2.9029908286718122).epsilon(1e-15));
  for (unsigned long n = 1; n <= 50; ++n) {
    const oracle::Real m(static_cast<double>(n + 2));
    const double expected = oracle::rpow(oracle::rexp(oracle::Real(1.0)) * m * m, oracle::Real(1.0) / m).to_double();
    CHECK(d_of(dist_bound_A(n)) == doctest::Approx(expected).epsilon(1e-15));
    CHECK(dist_bound_A(n) < HpFloat("2.903"));
  }
}

TEST_CASE("mesh size of the scheduled construction") {
  const GrowthConstant one = GrowthConstant::from_value(1.0);
  const Cor1Mesh a = mesh_size_cor1(1, 1, one, 3);
  CHECK(a.size == 3);
  CHECK(d_of(a.distortion_bound) == doctest::Approx(2.0128214203960928).epsilon(1e-15));
  CHECK(a.distortion_bound < exp(HpFloat(1)));
  CHECK(mesh_size_cor1(2, 1, one, 3).size == 6);
  CHECK(d_of(mesh_size_cor1(1, 1, one, 9).distortion_bound) == doctest::Approx(1.4265332144251875).epsilon(1e-15));
  CHECK_THROWS_AS(mesh_size_cor1(1, 1, one, 2), ValidationError);
  CHECK_THROWS_AS(mesh_size_cor1(1, 1, GrowthConstant::from_value(0.5), 3), ValidationError);
}

TEST_CASE("scheduled mesh with the dimension majorant reproduces the fixed-schedule size") {
  for (std::uint64_t n = 1; n <= 4; ++n)
    for (std::uint64_t d = 1; d <= 30; ++d)
      CHECK(mesh_size_cor1(d, n, exp_of(2.0 * static_cast<double>(n)), (n + 2) * (n + 2)).size == mesh_size_A(n, d));
}

TEST_CASE("schedule exponent identity") {
  for (std::uint64_t k = 1; k <= 6; ++k) {
    for (std::uint64_t s : {3ull, 4ull, 9ull, 17ull, 100ull, 1234ull, 10000ull}) {
      const Cor1Mesh m = mesh_size_cor1(1, k, GrowthConstant::from_value(1.0), s);
      const HpFloat lhs = exp(m.schedule_c);
      CHECK(abs(lhs - m.distortion_bound) <= HpFloat("1e-12") * m.distortion_bound);
    }
  }
}

TEST_CASE("trace dimension stays below the mesh size") {
  for (std::uint64_t n = 1; n <= 4; ++n)
    for (std::uint64_t d = 1; d <= 30; ++d) CHECK(BigInt(dim_full(n, d)) < mesh_size_A(n, d));
}

TEST_CASE("net cardinality") {
  const NetCardinality a = net_cardinality_log(BigInt(7), 1, HpFloat("0.5"));
  CHECK(d_of(a.radius) == doctest::Approx(3.0));
  CHECK(d_of(a.log_count) == doctest::Approx(7.0 * std::log(5.0)));
  CHECK(d_of(net_cardinality_log(BigInt(1), 2, HpFloat("0.25")).radius) == doctest::Approx(3.0));
  HpFloat prev = a.radius;
  for (int i = 1; i <= 40; ++i) {
    const HpFloat xi = HpFloat("0.5") * pow(HpFloat("0.8"), i);
    const HpFloat r = net_cardinality_log(BigInt(1), 1, xi).radius;
    CHECK(r < prev);
    CHECK(r > 1);
    prev = r;
  }
  CHECK_THROWS_AS(net_cardinality_log(BigInt(1), 2, HpFloat("0.5")), ValidationError);
  CHECK_THROWS_AS(net_cardinality_log(BigInt(1), 1, HpFloat(0)), ValidationError);
}

TEST_CASE("phi and its inverse") {
  CHECK(d_of(phi(HpFloat(1), 1)) == 1.0);
  CHECK(d_of(phi(exp(HpFloat(1)), 1)) == doctest::Approx(2.0 / std::exp(1.0)));
  const HpFloat y("0.101366");
  const HpFloat s = phi_inverse(y, 1);
  CHECK(d_of(s) == doctest::Approx(48.0699337).epsilon(1e-8));
  CHECK(s <= phi_inverse_bound(y, 1));
  CHECK(d_of(phi_inverse_bound(y, 1)) == doctest::Approx(100.2593524).epsilon(1e-8));
  CHECK(d_of(s) == doctest::Approx(oracle::phi_inverse_newton(oracle::Real(0.101366), 1, 60.0).to_double()).epsilon(1e-6));
  CHECK_THROWS_AS(phi_inverse(HpFloat(0), 1), ValidationError);
  CHECK_THROWS_AS(phi_inverse(HpFloat(2), 2), ValidationError);
  CHECK_THROWS_AS(phi(HpFloat(0), 1), ValidationError);
}

TEST_CASE("phi decreases on its branch") {
  for (std::uint64_t k = 1; k <= 6; ++k) {
    const HpFloat lo = log(phi_decreasing_from(k));
    const HpFloat hi = log(HpFloat(1e6));
    HpFloat prev = phi(phi_decreasing_from(k), k);
    for (int i = 1; i < 1000; ++i) {
      const HpFloat x = exp(lo + (hi - lo) * i / 999);
      const HpFloat v = phi(x, k);
      CHECK(v < prev);
      prev = v;
    }
  }
}

TEST_CASE("phi inverse round trip") {
  for (std::uint64_t k = 1; k <= 6; ++k) {
    const HpFloat top = phi_domain_max(k);
    for (int i = 0; i < 40; ++i) {
      const HpFloat y = i == 39 ? top : exp(log(HpFloat("1e-6")) + (log(top) - log(HpFloat("1e-6"))) * i / 39);
      const HpFloat s = phi_inverse(y, k);
      CHECK(abs(phi(s, k) - y) <= HpFloat("1e-10") * y);
      CHECK(s <= phi_inverse_bound(y, k) * (1 + HpFloat("1e-30")));
    }
  }
}

TEST_CASE("elementary inequalities used by the entropy chain") {
  for (int i = 1; i <= 500; ++i) {
    const double eps = 0.5 * i / 500.0;
    CHECK(2.0 / 3.0 * eps <= std::log1p(eps));
    for (std::uint64_t k = 1; k <= 6; ++k) CHECK(HpFloat(std::log1p(eps) / 4.0) < phi_domain_max(k));
  }
}

TEST_CASE("two closed forms of 1/xi agree") {
  for (std::uint64_t nbar : {1ull, 3ull, 50ull}) {
    for (int i = 1; i <= 50; ++i) {
      const HpFloat eps = HpFloat(i) / 100;
      const HpFloat a = inverse_xi_ratio(nbar, eps);
      CHECK(abs(a - inverse_xi_expanded(nbar, eps)) <= HpFloat("1e-40") * a);
    }
  }
  CHECK(d_of(inverse_xi_ratio(1, HpFloat("0.5"))) == doctest::Approx(19.74731918607).epsilon(1e-10));
}

TEST_CASE("entropy chain at k = 1, eps = 1/2") {
  const BoundReport r = entropy_chain({.d = 1, .k = 1, .c_hat = GrowthConstant::from_value(1.0), .nbar = 1, .eps = 0.5});
  const std::vector<std::string> names = {"s_eps",           "s_eps_bound_3_7", "R_eps",        "inv_xi_3_8",
                                          "N_ds_cor1",       "dist_bound_cor1", "log_net_card", "entropy_chain_final"};
  REQUIRE(r.values.size() == names.size());
  for (std::size_t i = 0; i < names.size(); ++i) CHECK(r.values[i].name == names[i]);

  const oracle::Real y = oracle::rlog(oracle::Real(1.5)) / oracle::Real(4.0);
  const double s_ref = oracle::phi_inverse_newton(y, 1, 60.0).to_double();
  CHECK(d_of(r.at("s_eps").value) == doctest::Approx(s_ref).epsilon(1e-12));
  CHECK(d_of(r.at("s_eps").value) == doctest::Approx(48.1).epsilon(1e-3));
  CHECK(d_of(r.at("s_eps_bound_3_7").value) == doctest::Approx(100.3).epsilon(1e-3));
  CHECK(d_of(r.at("R_eps").value) == doctest::Approx(std::pow(1.5, 0.25)).epsilon(1e-15));
  CHECK(d_of(r.at("inv_xi_3_8").value) == doctest::Approx(19.75).epsilon(1e-3));
  CHECK(r.at("N_ds_cor1").integer == BigInt(48));
  CHECK(r.at("log_net_card").value <= r.at("entropy_chain_final").value);
  CHECK(r.not_constructive.size() == nonconstructive_constants().size());
}

TEST_CASE("entropy bound does not increase with eps") {
  HpFloat prev = HpFloat(1e300);
  for (int i = 1; i <= 10; ++i) {
    const double eps = 0.05 * i;
    const BoundReport r = entropy_chain({.d = 3, .k = 2, .c_hat = exp_of(4.0), .nbar = 5, .eps = eps});
    const HpFloat v = r.at("entropy_chain_final").value;
    CHECK(v <= prev);
    prev = v;
  }
}

TEST_CASE("entropy chain input validation") {
  CHECK_THROWS_AS(entropy_chain({.eps = 0.0}), ValidationError);
  CHECK_THROWS_AS(entropy_chain({.eps = 0.6}), ValidationError);
  CHECK_THROWS_AS(entropy_chain({.nbar = 2}), ValidationError);
  CHECK_THROWS_AS(entropy_chain({.k = 0}), ValidationError);
}

TEST_CASE("fixed-schedule report") {
  const BoundReport r = mesh_bounds_report(1, 2);
  CHECK(r.at("N_dn").integer == BigInt(399));
  CHECK(d_of(r.at("dim_majorant").value) == doctest::Approx(2.0 * std::exp(2.0)));
  CHECK(r.contains("dist_bound_A"));
  CHECK_FALSE(r.contains("s_eps"));
  CHECK_THROWS_AS(r.at("missing"), ValidationError);
}

TEST_CASE("growth constants") {
  const GrowthConstant a = GrowthConstant::from_value(2.5);
  CHECK(a.to_double() == 2.5);
  CHECK(a.text() == "2.5");
  const GrowthConstant b = GrowthConstant::from_log(HpAudit(2));
  CHECK(b.text() == "exp(2)");
  CHECK(b.to_double() == doctest::Approx(std::exp(2.0)));
  CHECK_THROWS_AS(GrowthConstant::from_value(0.0), ValidationError);
}
