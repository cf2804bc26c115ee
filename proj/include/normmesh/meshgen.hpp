#pragma once

// Determinant-maximising node selection on a grid. At a swap-optimal node set
// every cardinal function is bounded by 1 + tol on the grid (replacing node k
// by grid point z multiplies |det| by |f_k(z)|), so the nodes carry a discrete
// Auerbach basis and ||g||_G <= dim * ||g||_nodes for every g in the space.

#include <Eigen/Dense>

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "normmesh/polyspace.hpp"
#include "normmesh/sets.hpp"

namespace normmesh {

inline constexpr double kDefaultSwapTolerance = 1e-10;
inline constexpr std::size_t kDefaultMaxSweeps = 1000;

/// Orthonormal basis of the trace space on a grid: Q from a QR factorisation
/// of the scaled Chebyshev Vandermonde. Determinant ratios and cardinal
/// function values do not depend on which basis of the space is used.
class ConditionedBasis {
 public:
  ConditionedBasis(const PolySpace& space, const Points& grid);

  const PolySpace& space() const noexcept { return space_; }
  std::size_t grid_size() const noexcept { return static_cast<std::size_t>(q_.rows()); }
  /// grid_size() x dim, orthonormal columns.
  const Eigen::MatrixXd& values() const noexcept { return q_; }

  /// log |det| of the rows `nodes` of values(); -inf when singular.
  double log_abs_det(std::span<const std::size_t> nodes) const;
  /// Column k holds the cardinal function of node k at every grid point.
  Eigen::MatrixXd cardinal_values(std::span<const std::size_t> nodes) const;

 private:
  PolySpace space_;
  Eigen::MatrixXd q_;
};

struct NodeSet {
  PolySpace space{1, 0};
  Points nodes;
  std::vector<std::size_t> grid_indices;
  double log_abs_det = 0.0;
  bool swap_optimal = false;
  double lagrange_sup = 0.0;
  double swap_tolerance = kDefaultSwapTolerance;
  std::size_t grid_size = 0;
  std::size_t sweeps = 0;
  std::size_t swaps = 0;
  std::uint64_t seed = 0;
};

struct SelectOptions {
  std::uint64_t seed = 0;
  std::size_t max_sweeps = kDefaultMaxSweeps;
  double swap_tolerance = kDefaultSwapTolerance;
  double rank_tolerance = kDefaultRankTolerance;
};

/// Rows picked by greedy pivoted orthogonalisation of the basis rows; ties go
/// to the lowest grid index.
std::vector<std::size_t> greedy_pivot_rows(const Eigen::MatrixXd& basis_values);

/// Greedy start followed by first-improvement single-swap sweeps (nodes in
/// index order, grid points in grid order). Throws NonDeterminingError when the
/// grid does not have full rank at this degree. When max_sweeps runs out the
/// best node set so far is returned with swap_optimal = false.
NodeSet select_nodes(const PolySpace& space, const CompactSet& set, const SelectOptions& options = {});
NodeSet select_nodes(const PolySpace& space, const Points& grid, const SelectOptions& options = {});

/// Cardinal (Lagrange) functions of a node set in monomial coordinates:
/// column k of `coefficients` is f_k with f_k(node_l) = delta_kl.
struct LagrangeSystem {
  NodeSet node_set;
  Eigen::MatrixXd coefficients;
  double residual = 0.0;  // max |V_nodes * C - I|
};

LagrangeSystem lagrange(const NodeSet& nodes);

/// Values f_k(z) for every point z (rows) and node k (columns).
Eigen::MatrixXd cardinal_values(const LagrangeSystem& system, const Points& points);

/// sum_k |f_k(z)| at every point.
std::vector<double> lebesgue_function(const LagrangeSystem& system, const Points& points);

/// Lambda = max_z sum_k |f_k(z)| over the set's grid, so that
/// ||g||_G <= Lambda * ||g||_nodes for all g in the space.
double norming_certificate(const LagrangeSystem& system, const CompactSet& set);
double norming_certificate(const LagrangeSystem& system, const Points& grid);

/// Lambda computed through the orthonormal grid basis instead of monomial
/// coefficients; stable at degrees where lagrange() loses accuracy.
double norming_constant(const NodeSet& nodes, const Points& grid);

/// log |det| of the monomial Vandermonde at the given points.
double log_abs_det_monomial(const PolySpace& space, const Points& nodes);

}  // namespace normmesh
