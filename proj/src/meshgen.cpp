#include "normmesh/meshgen.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "normmesh/error.hpp"
#include "normmesh/kernels.hpp"

namespace normmesh {

namespace {

std::span<double> col_span(Eigen::MatrixXd& m, Eigen::Index c) {
  return {m.col(c).data(), static_cast<std::size_t>(m.rows())};
}

std::span<const double> col_span(const Eigen::MatrixXd& m, Eigen::Index c) {
  return {m.col(c).data(), static_cast<std::size_t>(m.rows())};
}

Eigen::MatrixXd gather_rows(const Eigen::MatrixXd& m, std::span<const std::size_t> rows) {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(rows.size()), m.cols());
  for (std::size_t i = 0; i < rows.size(); ++i)
    out.row(static_cast<Eigen::Index>(i)) = m.row(static_cast<Eigen::Index>(rows[i]));
  return out;
}

double log_abs_det_of(const Eigen::MatrixXd& square) {
  const Eigen::PartialPivLU<Eigen::MatrixXd> lu(square);
  double acc = 0.0;
  const auto diag = lu.matrixLU().diagonal();
  for (Eigen::Index i = 0; i < diag.size(); ++i) {
    const double a = std::fabs(diag[i]);
    if (a == 0.0 || !std::isfinite(a)) return -std::numeric_limits<double>::infinity();
    acc += std::log(a);
  }
  return acc;
}

double max_abs_matrix(const Eigen::MatrixXd& m) {
  double out = 0.0;
  for (Eigen::Index c = 0; c < m.cols(); ++c) out = std::fmax(out, kernels::max_abs(col_span(m, c)));
  return out;
}

Points gather_points(const Points& grid, std::span<const std::size_t> idx) {
  Points out(grid.dim());
  for (std::size_t i : idx) out.push_back(grid[i]);
  return out;
}

}  // namespace

ConditionedBasis::ConditionedBasis(const PolySpace& space, const Points& grid) : space_(space) {
  const Eigen::MatrixXd v = chebyshev_vandermonde(space, grid, bounding_box_scaling(grid));
  if (v.rows() < v.cols()) {
    throw ValidationError("grid has " + std::to_string(v.rows()) + " points, fewer than the space dimension " +
                          std::to_string(v.cols()));
  }
  const Eigen::HouseholderQR<Eigen::MatrixXd> qr(v);
  q_ = qr.householderQ() * Eigen::MatrixXd::Identity(v.rows(), v.cols());
}

double ConditionedBasis::log_abs_det(std::span<const std::size_t> nodes) const {
  if (nodes.size() != static_cast<std::size_t>(q_.cols()))
    throw ValidationError("node count must equal the space dimension");
  return log_abs_det_of(gather_rows(q_, nodes));
}

Eigen::MatrixXd ConditionedBasis::cardinal_values(std::span<const std::size_t> nodes) const {
  if (nodes.size() != static_cast<std::size_t>(q_.cols()))
    throw ValidationError("node count must equal the space dimension");
  const Eigen::MatrixXd b = gather_rows(q_, nodes);
  // F = Q B^{-1}, i.e. B^T F^T = Q^T.
  const Eigen::PartialPivLU<Eigen::MatrixXd> lu(b.transpose());
  return lu.solve(q_.transpose()).transpose();
}

std::vector<std::size_t> greedy_pivot_rows(const Eigen::MatrixXd& basis_values) {
  const auto m = static_cast<std::size_t>(basis_values.rows());
  const auto n = static_cast<std::size_t>(basis_values.cols());
  Eigen::MatrixXd residual = basis_values;
  std::vector<double> norm2(m, 0.0);
  std::vector<double> scratch(m);
  std::vector<double> proj(m);
  std::vector<std::size_t> picked;
  picked.reserve(n);
  Eigen::VectorXd u(static_cast<Eigen::Index>(n));

  for (std::size_t step = 0; step < n; ++step) {
    std::fill(norm2.begin(), norm2.end(), 0.0);
    for (std::size_t c = 0; c < n; ++c) {
      const auto col = col_span(residual, static_cast<Eigen::Index>(c));
      kernels::mul(col, col, scratch);
      kernels::axpy(1.0, scratch, norm2);
    }
    std::size_t best = 0;
    for (std::size_t i = 1; i < m; ++i)
      if (norm2[i] > norm2[best]) best = i;
    if (!(norm2[best] > 0.0)) break;

    picked.push_back(best);
    const double inv = 1.0 / std::sqrt(norm2[best]);
    for (std::size_t c = 0; c < n; ++c)
      u[static_cast<Eigen::Index>(c)] = residual(static_cast<Eigen::Index>(best), static_cast<Eigen::Index>(c)) * inv;

    // Remove the component along u from every row.
    std::fill(proj.begin(), proj.end(), 0.0);
    for (std::size_t c = 0; c < n; ++c)
      kernels::axpy(u[static_cast<Eigen::Index>(c)], col_span(residual, static_cast<Eigen::Index>(c)), proj);
    for (std::size_t c = 0; c < n; ++c)
      kernels::axpy(-u[static_cast<Eigen::Index>(c)], proj, col_span(residual, static_cast<Eigen::Index>(c)));
    // The picked row is now numerically zero; force it so it is never re-picked.
    residual.row(static_cast<Eigen::Index>(best)).setZero();
  }
  return picked;
}

NodeSet select_nodes(const PolySpace& space, const CompactSet& set, const SelectOptions& options) {
  if (set.ambient_dim() != space.ambient_dim())
    throw ValidationError("set and polynomial space have different ambient dimensions");
  return select_nodes(space, grid(set), options);
}

NodeSet select_nodes(const PolySpace& space, const Points& pts, const SelectOptions& options) {
  if (!(options.swap_tolerance > 0.0)) throw ValidationError("swap tolerance must be positive");
  if (options.max_sweeps == 0) throw ValidationError("max_sweeps must be positive");
  if (!pts.empty() && pts.dim() != space.ambient_dim())
    throw ValidationError("grid dimension does not match the polynomial space");
  const std::size_t dim = space.dim();
  if (pts.size() < dim) {
    throw ValidationError("grid has " + std::to_string(pts.size()) + " points, fewer than the space dimension " +
                          std::to_string(dim));
  }
  const TraceRank rank = trace_dimension(space, pts, options.rank_tolerance);
  if (!rank.determining) {
    throw NonDeterminingError("grid is not determining at degree " + std::to_string(space.degree()) +
                                  ": numerical rank " + std::to_string(rank.rank) + " < dimension " +
                                  std::to_string(dim),
                              rank.rank);
  }

  const ConditionedBasis basis(space, pts);
  std::vector<std::size_t> nodes = greedy_pivot_rows(basis.values());
  if (nodes.size() != dim) throw SingularError("greedy pivoting stalled before selecting a full node set");

  const double threshold = 1.0 + options.swap_tolerance;
  Eigen::MatrixXd f = basis.cardinal_values(nodes);
  const auto n = static_cast<Eigen::Index>(dim);
  std::vector<double> pivot_row(dim);

  NodeSet out{space, {}, {}, 0.0, false, 0.0, options.swap_tolerance, pts.size(), 0, 0, options.seed};
  for (std::size_t sweep = 0; sweep < options.max_sweeps; ++sweep) {
    ++out.sweeps;
    std::size_t accepted = 0;
    for (Eigen::Index k = 0; k < n; ++k) {
      const std::size_t z = kernels::first_abs_above(col_span(f, k), threshold);
      if (z == kernels::npos) continue;
      const auto zi = static_cast<Eigen::Index>(z);
      // Rank-one update of the cardinal functions for the new node set.
      const double pivot = f(zi, k);
      for (Eigen::Index j = 0; j < n; ++j) pivot_row[static_cast<std::size_t>(j)] = f(zi, j);
      kernels::scale(1.0 / pivot, col_span(f, k));
      for (Eigen::Index j = 0; j < n; ++j) {
        if (j == k) continue;
        kernels::axpy(-pivot_row[static_cast<std::size_t>(j)], col_span(f, k), col_span(f, j));
      }
      nodes[static_cast<std::size_t>(k)] = z;
      ++accepted;
    }
    out.swaps += accepted;
    if (accepted == 0) {
      out.swap_optimal = true;
      break;
    }
    f = basis.cardinal_values(nodes);
  }

  out.grid_indices = nodes;
  out.nodes = gather_points(pts, nodes);
  out.log_abs_det = basis.log_abs_det(nodes);
  out.lagrange_sup = max_abs_matrix(f);
  if (!std::isfinite(out.log_abs_det)) throw SingularError("selected node Vandermonde is singular");
  if (out.swap_optimal && out.lagrange_sup > threshold) {
    throw InvariantViolation("swap-optimal node set has a cardinal function above 1 + tol on the grid");
  }
  return out;
}

LagrangeSystem lagrange(const NodeSet& node_set) {
  const Eigen::MatrixXd v = vandermonde(node_set.space, node_set.nodes);
  if (v.rows() != v.cols()) throw ValidationError("node count must equal the space dimension");
  const Eigen::FullPivLU<Eigen::MatrixXd> lu(v);
  if (!lu.isInvertible()) throw SingularError("node Vandermonde is singular to working precision");
  const Eigen::MatrixXd identity = Eigen::MatrixXd::Identity(v.rows(), v.cols());
  Eigen::MatrixXd c = lu.solve(identity);
  // One step of iterative refinement.
  c += lu.solve(identity - v * c);
  LagrangeSystem out{node_set, std::move(c), 0.0};
  out.residual = (v * out.coefficients - identity).cwiseAbs().maxCoeff();
  if (!(out.residual <= 1e-8)) {
    throw SingularError("cardinal functions do not reproduce the Kronecker delta (residual " +
                        std::to_string(out.residual) + ")");
  }
  return out;
}

Eigen::MatrixXd cardinal_values(const LagrangeSystem& system, const Points& points) {
  return vandermonde(system.node_set.space, points) * system.coefficients;
}

std::vector<double> lebesgue_function(const LagrangeSystem& system, const Points& points) {
  const Eigen::MatrixXd f = cardinal_values(system, points);
  std::vector<double> acc(points.size(), 0.0);
  for (Eigen::Index k = 0; k < f.cols(); ++k) kernels::add_abs(col_span(f, k), acc);
  return acc;
}

double norming_certificate(const LagrangeSystem& system, const CompactSet& set) {
  return norming_certificate(system, grid(set));
}

double norming_certificate(const LagrangeSystem& system, const Points& pts) {
  if (pts.empty()) throw ValidationError("norming certificate needs a nonempty grid");
  return kernels::max_abs(lebesgue_function(system, pts));
}

double norming_constant(const NodeSet& nodes, const Points& pts) {
  if (nodes.grid_size != pts.size()) throw ValidationError("node set was selected on a different grid");
  const ConditionedBasis basis(nodes.space, pts);
  const Eigen::MatrixXd f = basis.cardinal_values(nodes.grid_indices);
  std::vector<double> acc(pts.size(), 0.0);
  for (Eigen::Index k = 0; k < f.cols(); ++k) kernels::add_abs(col_span(f, k), acc);
  return kernels::max_abs(acc);
}

double log_abs_det_monomial(const PolySpace& space, const Points& nodes) {
  const Eigen::MatrixXd v = vandermonde(space, nodes);
  if (v.rows() != v.cols()) throw ValidationError("node count must equal the space dimension");
  return log_abs_det_of(v);
}

}  // namespace normmesh
