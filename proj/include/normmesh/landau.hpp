#pragma once

// Power-trick embedding of P_d^n|_K into l-infinity on a node set A for degree
// d*p: ||f||_G = ||f^p||_G^{1/p} <= (Lambda ||f^p||_A)^{1/p} = Lambda^{1/p} ||f||_A,
// where Lambda is the norming constant of A for degree d*p.

#include <Eigen/Dense>

#include <cstdint>
#include <optional>

#include "normmesh/meshgen.hpp"
#include "normmesh/precision.hpp"

namespace normmesh {

struct Schedule {
  std::uint64_t p = 1;
  double c = 0.0;  // 1/s + k ln(s)/s
};

/// p = s (floor(ln(c_hat d^k)) + 1). Requires c_hat d^k >= 1 and s >= 3.
Schedule schedule_p(std::uint64_t d, std::uint64_t k, const GrowthConstant& c_hat, std::uint64_t s);
Schedule schedule_p(std::uint64_t d, std::uint64_t k, double c_hat, std::uint64_t s);

struct EmbeddingCertificate {
  std::size_t n = 0;
  std::size_t d = 0;
  std::uint64_t p = 1;
  NodeSet node_set;             // nodes for degree d*p; these form A
  double coarse_bound = 0.0;    // (n_{dp} * max_k ||f_k||_G)^{1/p}
  double certified_bound = 0.0; // min(coarse_bound, grid_constant^{1/p})
  double grid_constant = 0.0;   // Lambda at degree d*p
  double empirical_distortion = 1.0;
  std::optional<double> schedule_c;
  std::uint64_t seed = 0;
  Points grid;
  /// The map i_d: values of the degree-d monomial basis at the nodes (|A| x dim P_d).
  Eigen::MatrixXd restriction;
};

struct EmbedOptions {
  std::uint64_t seed = 0;
  std::size_t max_sweeps = kDefaultMaxSweeps;
  double swap_tolerance = kDefaultSwapTolerance;
  std::optional<double> schedule_c;
};

EmbeddingCertificate embed(const PolySpace& space, const CompactSet& set, std::uint64_t p,
                           const EmbedOptions& options = {});
EmbeddingCertificate embed(const PolySpace& space, const Points& grid, std::uint64_t p,
                           const EmbedOptions& options = {});

/// sup over f of ||f||_G / ||f||_A from below: random starts refined by
/// coordinate ascent with step halving (at most kHillClimbSteps passes).
/// Stores max(previous, estimate) in cert.empirical_distortion and returns the
/// estimate. Throws InvariantViolation if it exceeds the certified bound.
double estimate_distortion(EmbeddingCertificate& cert, std::size_t trials, std::uint64_t seed);

inline constexpr std::size_t kHillClimbSteps = 200;

/// ||f||_G / ||f||_A for monomial coefficients c of a degree-d polynomial.
double distortion_ratio(const EmbeddingCertificate& cert, const Eigen::VectorXd& coefficients);

/// Worker count for parallel loops: NORMMESH_THREADS if set, else the hardware count.
std::size_t worker_count();

}  // namespace normmesh
