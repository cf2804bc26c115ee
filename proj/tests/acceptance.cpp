// Acceptance suite: one line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "normmesh/bounds.hpp"
#include "normmesh/cli.hpp"
#include "normmesh/landau.hpp"
#include "normmesh/meshgen.hpp"
#include "normmesh/polyspace.hpp"
#include "oracles.hpp"

using namespace normmesh;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) {
      pass = false;
      detail = what;
    }
  }
};

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Outcome grid_auerbach() {
  Outcome o;
  double worst = 0.0, slowest = 0.0;
  auto check = [&](const CompactSet& set, std::size_t n, std::size_t d) {
    const auto t0 = std::chrono::steady_clock::now();
    const NodeSet ns = select_nodes(PolySpace(n, d), set);
    const double dt = seconds_since(t0);
    slowest = std::max(slowest, dt);
    worst = std::max(worst, ns.lagrange_sup);
    const std::string tag = "n=" + std::to_string(n) + " D=" + std::to_string(d);
    o.require(ns.swap_optimal, tag + " not swap optimal");
    o.require(ns.lagrange_sup <= 1.0 + 1e-8, tag + fmt(" max|f_k| = %.12g", ns.lagrange_sup));
    o.require(dt <= 60.0, tag + fmt(" took %.1f s", dt));
  };
  const auto interval = CompactSet::cube(1, -1.0, 1.0, 2001);
  for (std::size_t d = 2; d <= 8; ++d) check(interval, 1, d);
  const auto square = CompactSet::cube(2, -1.0, 1.0, 101);
  for (std::size_t d = 2; d <= 5; ++d) check(square, 2, d);
  if (o.pass) o.detail = fmt("max_k |f_k|_G = %.12g", worst) + fmt(", slowest case %.2f s", slowest);
  return o;
}

Outcome landau_norming() {
  Outcome o;
  const auto interval = CompactSet::cube(1, -1.0, 1.0, 2001);
  std::mt19937_64 rng(20240601);
  std::normal_distribution<double> normal;
  std::size_t violations = 0;
  double worst_ratio = 0.0;
  const double expected[] = {5.0, 3.0, std::pow(17.0, 0.25)};
  const std::uint64_t powers[] = {1, 2, 4};
  for (int i = 0; i < 3; ++i) {
    const std::uint64_t p = powers[i];
    EmbeddingCertificate cert = embed(PolySpace(1, 4), interval, p);
    const double bound = std::pow(static_cast<double>(dim_full(1, 4 * p)), 1.0 / static_cast<double>(p));
    o.require(std::fabs(bound - expected[i]) <= 1e-12 * expected[i], "unexpected dimension bound");
    o.require(cert.node_set.nodes.size() == dim_full(1, 4 * p), "node count differs from the space dimension");
    for (int t = 0; t < 1000; ++t) {
      Eigen::VectorXd c(5);
      for (auto& x : c) x = normal(rng);
      const double r = distortion_ratio(cert, c);
      worst_ratio = std::max(worst_ratio, r / bound);
      if (r > bound * (1.0 + 1e-8)) ++violations;
    }
    const double est = estimate_distortion(cert, 32, 1000 + p);
    o.require(est <= cert.certified_bound, "empirical estimate above the certified bound");
    o.require(cert.certified_bound <= bound * (1.0 + 1e-8), "certified bound above the dimension bound");
  }
  o.require(violations == 0, std::to_string(violations) + " violations");
  if (o.pass) o.detail = "0 violations in 3000 samples, worst ratio/bound " + fmt("%.6f", worst_ratio);
  return o;
}

Outcome distortion_constant() {
  Outcome o;
  HpFloat best = 0;
  std::uint64_t argmax = 0;
  for (std::uint64_t n = 1; n <= 50; ++n) {
    const HpFloat v = dist_bound_A(n);
    const oracle::Real m(static_cast<double>(n + 2));
    const oracle::Real audit = oracle::rpow(oracle::rexp(oracle::Real(1.0)) * m * m, oracle::Real(1.0) / m);
    o.require(std::fabs(static_cast<double>(v) - audit.to_double()) <= 1e-15 * audit.to_double(),
              "audit disagrees at n=" + std::to_string(n));
    o.require(audit < oracle::Real::from_string("2.90300"), "audit value not below 2.90300");
    if (v > best) {
      best = v;
      argmax = n;
    }
  }
  o.require(best < HpFloat("2.90300"), "maximum not below 2.90300");
  o.require(argmax == 1, "maximiser is n=" + std::to_string(argmax));
  if (o.pass) o.detail = "max = " + to_decimal(best, 16) + " at n = 1";
  return o;
}

Outcome dimension_chain() {
  Outcome o;
  for (std::uint64_t n = 1; n <= 6; ++n) {
    for (std::uint64_t d = 1; d <= 50; ++d) {
      const std::uint64_t exact = dim_full(n, d);
      const double bound = std::exp(2.0 * static_cast<double>(n)) * std::pow(static_cast<double>(d), n);
      const std::string tag = " at n=" + std::to_string(n) + " d=" + std::to_string(d);
      o.require(static_cast<double>(exact) < bound * (1.0 - 1e-12), "C(d+n,n) >= e^{2n} d^n" + tag);
      o.require(HpFloat(exact) < dim_majorant(n, d), "high-precision comparison fails" + tag);
      o.require(BigInt(exact) < mesh_size_A(n, d), "trace dimension not below N_dn" + tag);
    }
  }
  if (o.pass) o.detail = "300 (n,d) pairs";
  return o;
}

Outcome circle_rank() {
  Outcome o;
  const auto circle = CompactSet::sphere({0.0, 0.0}, 1.0, 256);
  for (std::size_t d = 1; d <= 8; ++d) {
    const TraceRank r = trace_dimension(PolySpace(2, d), circle, 1e-10);
    o.require(r.rank == 2 * d + 1, "d=" + std::to_string(d) + " rank " + std::to_string(r.rank));
  }
  if (o.pass) o.detail = "rank = 2d+1 for d = 1..8";
  return o;
}

Outcome entropy_chain_check() {
  Outcome o;
  double worst_phi = 0.0, worst_xi = 0.0;
  for (std::uint64_t k = 1; k <= 5; ++k) {
    for (int i = 1; i <= 50; ++i) {
      const double eps = 0.5 * i / 50.0;
      const HpFloat y = log(1 + HpFloat(eps)) / 4;
      const BoundReport r = entropy_chain({.d = 2, .k = k, .c_hat = GrowthConstant::from_value(1.0), .nbar = 1, .eps = eps});
      const HpFloat s = r.at("s_eps").value;
      const double rel = static_cast<double>(abs(phi(s, k) - y) / y);
      worst_phi = std::max(worst_phi, rel);
      o.require(rel <= 1e-10, "phi(s_eps) mismatch");
      o.require(s <= r.at("s_eps_bound_3_7").value, "s_eps above its majorant");

      const HpFloat direct = inverse_xi_expanded(1, HpFloat(eps));
      const double xi_rel = static_cast<double>(abs(r.at("inv_xi_3_8").value - direct) / direct);
      worst_xi = std::max(worst_xi, xi_rel);
      o.require(xi_rel <= 1e-12, "1/xi mismatch");
    }
  }
  const BoundReport spot = entropy_chain({.d = 1, .k = 1, .c_hat = GrowthConstant::from_value(1.0), .nbar = 1, .eps = 0.5});
  const double inv_xi = static_cast<double>(spot.at("inv_xi_3_8").value);
  o.require(std::fabs(inv_xi - 19.7476) <= 1e-3, fmt("spot 1/xi = %.7f", inv_xi));
  if (o.pass)
    o.detail = fmt("worst phi rel err %.2e", worst_phi) + fmt(", worst 1/xi rel err %.2e", worst_xi) +
               fmt(", 1/xi(k=1, eps=0.5) = %.7f", inv_xi);
  return o;
}

Outcome schedule_soundness() {
  Outcome o;
  double slack = 1e300;
  for (std::uint64_t n = 1; n <= 2; ++n) {
    const GrowthConstant c_hat = GrowthConstant::from_log(HpAudit(2 * n));
    for (std::uint64_t d = 1; d <= 10; ++d) {
      for (std::uint64_t s : {3ull, 9ull}) {
        const Schedule sched = schedule_p(d, n, c_hat, s);
        const HpFloat growth = log(HpFloat(dim_full(n, d * sched.p))) / HpFloat(sched.p);
        const Cor1Mesh mesh = mesh_size_cor1(d, n, c_hat, s);
        o.require(growth <= mesh.schedule_c, "growth hypothesis fails at n=" + std::to_string(n) +
                                                 " d=" + std::to_string(d) + " s=" + std::to_string(s));
        slack = std::min(slack, static_cast<double>(mesh.schedule_c - growth));
        const HpFloat lhs = exp(mesh.schedule_c);
        o.require(abs(lhs - mesh.distortion_bound) <= HpFloat("1e-12") * mesh.distortion_bound,
                  "e^c differs from (e s^k)^{1/s}");
        o.require(std::fabs(sched.c - static_cast<double>(mesh.schedule_c)) <= 1e-15, "schedule c mismatch");
      }
    }
  }
  if (o.pass) o.detail = fmt("min slack c - ln(n_dp)/p = %.4f", slack);
  return o;
}

std::string cli_run(std::vector<std::string> args) {
  args.insert(args.begin(), "normmesh");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::main(static_cast<int>(argv.size()), argv.data(), out, err);
  if (code != 0) return "exit " + std::to_string(code) + ": " + err.str();
  return out.str();
}

Outcome determinism() {
  Outcome o;
  auto pipeline = [] {
    std::string all;
    all += cli_run({"mesh", "--set", "ball", "--n", "2", "--d", "3", "--resolution", "41", "--seed", "11",
                    "--no-timestamp"});
    all += cli_run({"embed", "--set", "ball", "--n", "2", "--d", "2", "--p", "2", "--resolution", "41", "--seed",
                    "11", "--no-timestamp"});
    all += cli_run({"distort", "--set", "box", "--n", "1", "--d", "4", "--p", "2", "--resolution", "1001",
                    "--trials", "16", "--seed", "11", "--no-timestamp"});
    return all;
  };
  const std::string a = pipeline();
  const std::string b = pipeline();
  o.require(a.find("exit ") == std::string::npos, "a pipeline step failed");
  o.require(a == b, "reports differ between runs");
  if (o.pass) o.detail = std::to_string(a.size()) + " bytes identical across two runs";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"1 grid Auerbach certificate", grid_auerbach},
      {"2 norming set from powers", landau_norming},
      {"3 distortion constant below 2.903", distortion_constant},
      {"4 dimension bound chain", dimension_chain},
      {"5 trace rank on the circle", circle_rank},
      {"6 entropy chain", entropy_chain_check},
      {"7 schedule soundness", schedule_soundness},
      {"8 deterministic pipeline", determinism},
  };
  int failures = 0;
  for (const auto& [name, fn] : criteria) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      o = fn();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    std::printf("%s  AC%s  (%s; %.2f s)\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str(), seconds_since(t0));
    std::fflush(stdout);
    if (!o.pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
