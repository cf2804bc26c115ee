#include "normmesh/landau.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <random>
#include <string>
#include <thread>

#include "normmesh/error.hpp"
#include "normmesh/kernels.hpp"

namespace normmesh {

namespace {

std::span<const double> col_span(const Eigen::MatrixXd& m, Eigen::Index c) {
  return {m.col(c).data(), static_cast<std::size_t>(m.rows())};
}

std::span<double> vec_span(Eigen::VectorXd& v) { return {v.data(), static_cast<std::size_t>(v.size())}; }
std::span<const double> vec_span(const Eigen::VectorXd& v) {
  return {v.data(), static_cast<std::size_t>(v.size())};
}

// One random start followed by coordinate ascent on the coefficient sphere.
double climb(const Eigen::MatrixXd& on_grid, const Eigen::MatrixXd& on_nodes, std::uint64_t seed,
             std::uint64_t trial) {
  const Eigen::Index dim = on_grid.cols();
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32)};
  std::mt19937_64 rng(seq);
  std::normal_distribution<double> normal(0.0, 1.0);

  Eigen::VectorXd c(dim);
  do {
    for (Eigen::Index j = 0; j < dim; ++j) c[j] = normal(rng);
  } while (c.norm() == 0.0);
  c /= c.norm();

  Eigen::VectorXd yg = on_grid * c;
  Eigen::VectorXd ya = on_nodes * c;
  double num = kernels::max_abs(vec_span(yg));
  double den = kernels::max_abs(vec_span(ya));
  if (den == 0.0) return 0.0;
  double ratio = num / den;

  double step = 0.5;
  for (std::size_t pass = 0; pass < kHillClimbSteps; ++pass) {
    bool improved = false;
    for (Eigen::Index j = 0; j < dim; ++j) {
      for (const double sign : {1.0, -1.0}) {
        const double h = sign * step;
        const double g = kernels::max_abs_axpy(vec_span(yg), h, col_span(on_grid, j));
        const double a = kernels::max_abs_axpy(vec_span(ya), h, col_span(on_nodes, j));
        if (a > 0.0 && g / a > ratio) {
          kernels::axpy(h, col_span(on_grid, j), vec_span(yg));
          kernels::axpy(h, col_span(on_nodes, j), vec_span(ya));
          c[j] += h;
          ratio = g / a;
          improved = true;
          break;
        }
      }
    }
    if (!improved) step *= 0.5;
    const double norm = c.norm();
    c /= norm;
    kernels::scale(1.0 / norm, vec_span(yg));
    kernels::scale(1.0 / norm, vec_span(ya));
  }
  // Recompute from the final coefficients so the returned ratio is exact for c.
  yg = on_grid * c;
  ya = on_nodes * c;
  return kernels::max_abs(vec_span(yg)) / kernels::max_abs(vec_span(ya));
}

}  // namespace

std::size_t worker_count() {
  if (const char* env = std::getenv("NORMMESH_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<std::size_t>(v);
  }
  return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

Schedule schedule_p(std::uint64_t d, std::uint64_t k, const GrowthConstant& c_hat, std::uint64_t s) {
  if (d == 0 || k == 0) throw ValidationError("schedule needs d >= 1 and k >= 1");
  if (s < 3) throw ValidationError("schedule needs s >= 3");
  const HpAudit log_cdk = c_hat.log_value() + HpAudit(k) * log(HpAudit(d));
  if (log_cdk < 0) throw ValidationError("schedule needs c_hat * d^k >= 1");
  const BigInt levels =
      audited_floor([&](auto tag) { return static_cast<decltype(tag)>(log_cdk); }, "ln(c_hat d^k)") + 1;
  const BigInt p = BigInt(s) * levels;
  if (p > BigInt(std::numeric_limits<std::uint32_t>::max())) throw OverflowError("power p is out of range");
  const HpFloat sf(s);
  const HpFloat c = 1 / sf + HpFloat(k) * log(sf) / sf;
  return Schedule{static_cast<std::uint64_t>(p), static_cast<double>(c)};
}

Schedule schedule_p(std::uint64_t d, std::uint64_t k, double c_hat, std::uint64_t s) {
  return schedule_p(d, k, GrowthConstant::from_value(c_hat), s);
}

EmbeddingCertificate embed(const PolySpace& space, const CompactSet& set, std::uint64_t p,
                           const EmbedOptions& options) {
  if (set.ambient_dim() != space.ambient_dim())
    throw ValidationError("set and polynomial space have different ambient dimensions");
  return embed(space, grid(set), p, options);
}

EmbeddingCertificate embed(const PolySpace& space, const Points& pts, std::uint64_t p,
                           const EmbedOptions& options) {
  if (p == 0) throw ValidationError("power p must be positive");
  const std::size_t d = space.degree();
  const std::size_t n = space.ambient_dim();
  if (d != 0 && p > std::numeric_limits<std::size_t>::max() / d) throw OverflowError("degree d*p overflows");
  const std::size_t high_degree = d * static_cast<std::size_t>(p);
  const std::uint64_t high_dim = dim_full(n, high_degree);
  const PolySpace high(n, high_degree);

  SelectOptions sel;
  sel.seed = options.seed;
  sel.max_sweeps = options.max_sweeps;
  sel.swap_tolerance = options.swap_tolerance;

  EmbeddingCertificate cert;
  cert.n = n;
  cert.d = d;
  cert.p = p;
  cert.seed = options.seed;
  cert.schedule_c = options.schedule_c;
  cert.node_set = select_nodes(high, pts, sel);
  cert.grid = pts;

  cert.grid_constant = norming_constant(cert.node_set, pts);

  const double inv_p = 1.0 / static_cast<double>(p);
  const double per_node = cert.node_set.swap_optimal ? 1.0 + cert.node_set.swap_tolerance
                                                     : std::max(1.0, cert.node_set.lagrange_sup);
  cert.coarse_bound = std::pow(static_cast<double>(high_dim) * per_node, inv_p);
  cert.certified_bound = std::min(cert.coarse_bound, std::pow(cert.grid_constant, inv_p));
  cert.restriction = vandermonde(space, cert.node_set.nodes);
  cert.empirical_distortion = 1.0;  // constants attain ratio 1

  if (cert.schedule_c) {
    // The bound e^c needs ln(n_{dp})/p <= c, i.e. the growth hypothesis behind the schedule.
    const double growth = std::log(static_cast<double>(high_dim)) * inv_p;
    if (growth > *cert.schedule_c * (1.0 + 1e-12)) {
      throw ValidationError("growth hypothesis fails: ln(n_{dp})/p = " + std::to_string(growth) + " > c = " +
                            std::to_string(*cert.schedule_c));
    }
    const double limit = std::exp(*cert.schedule_c) * std::pow(1.0 + cert.node_set.swap_tolerance, inv_p);
    if (cert.node_set.swap_optimal && cert.certified_bound > limit * (1.0 + 1e-12))
      throw InvariantViolation("certified bound exceeds e^c for the scheduled power");
  }
  return cert;
}

double distortion_ratio(const EmbeddingCertificate& cert, const Eigen::VectorXd& coefficients) {
  const PolySpace space(cert.n, cert.d);
  const Eigen::VectorXd g = vandermonde(space, cert.grid) * coefficients;
  const Eigen::VectorXd a = cert.restriction * coefficients;
  return kernels::max_abs(vec_span(g)) / kernels::max_abs(vec_span(a));
}

double estimate_distortion(EmbeddingCertificate& cert, std::size_t trials, std::uint64_t seed) {
  if (trials == 0) throw ValidationError("trials must be positive");
  const PolySpace space(cert.n, cert.d);
  const Eigen::MatrixXd on_grid = vandermonde(space, cert.grid);
  const Eigen::MatrixXd& on_nodes = cert.restriction;

  std::vector<double> results(trials, 0.0);
  const std::size_t workers = std::min(worker_count(), trials);
  if (workers <= 1) {
    for (std::size_t t = 0; t < trials; ++t) results[t] = climb(on_grid, on_nodes, seed, t);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t t = w; t < trials; t += workers) results[t] = climb(on_grid, on_nodes, seed, t);
      });
    }
    for (auto& th : pool) th.join();
  }
  const double estimate = *std::max_element(results.begin(), results.end());
  if (estimate > cert.certified_bound * (1.0 + 1e-9)) {
    throw InvariantViolation("empirical distortion " + std::to_string(estimate) + " exceeds the certified bound " +
                             std::to_string(cert.certified_bound));
  }
  cert.empirical_distortion = std::max(cert.empirical_distortion, estimate);
  return estimate;
}

}  // namespace normmesh
