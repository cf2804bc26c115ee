#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "normmesh/sets.hpp"

namespace normmesh {

using MultiIndex = std::vector<unsigned>;

unsigned total_degree(const MultiIndex& alpha) noexcept;

/// Graded order used for bases: lower total degree first; within a degree the
/// exponent tuples descend lexicographically (x1 before x2, x1^2 before x1*x2).
bool graded_lex_less(const MultiIndex& a, const MultiIndex& b) noexcept;

/// C(d + n, n) with overflow-checked 64-bit arithmetic; throws OverflowError.
std::uint64_t dim_full(std::size_t n, std::size_t d);

/// Polynomials of degree <= d in n real variables with the graded monomial basis.
class PolySpace {
 public:
  PolySpace(std::size_t n, std::size_t d);

  std::size_t ambient_dim() const noexcept { return n_; }
  std::size_t degree() const noexcept { return d_; }
  std::size_t dim() const noexcept { return basis_.size(); }
  const std::vector<MultiIndex>& basis() const noexcept { return basis_; }

  /// Position of alpha in basis(), or dim() if |alpha| > degree().
  std::size_t index_of(const MultiIndex& alpha) const;

  friend bool operator==(const PolySpace& a, const PolySpace& b) noexcept {
    return a.n_ == b.n_ && a.d_ == b.d_;
  }

 private:
  std::size_t n_;
  std::size_t d_;
  std::vector<MultiIndex> basis_;
};

/// Element of a PolySpace in monomial coordinates.
struct CoefVector {
  PolySpace space;
  Eigen::VectorXd coefficients;

  CoefVector(PolySpace s, Eigen::VectorXd c);
};

/// Rows follow the points, columns follow space.basis().
Eigen::MatrixXd vandermonde(const PolySpace& space, const Points& points);

/// Affine map of the grid's bounding box onto [-1, 1]^n (degenerate axes keep unit width).
struct BoxScaling {
  std::vector<double> center;
  std::vector<double> half_width;
};

BoxScaling bounding_box_scaling(const Points& points);

/// Same layout as vandermonde() but column alpha holds prod_j T_{alpha_j}(t_j),
/// T_e the Chebyshev polynomials and t the scaled coordinates. Spans the same
/// space as the monomials with far better conditioning on the grid.
Eigen::MatrixXd chebyshev_vandermonde(const PolySpace& space, const Points& points, const BoxScaling& scaling);

Eigen::VectorXd evaluate(const CoefVector& f, const Points& points);

/// max_i |values[i]|
double sup_norm(std::span<const double> values);
double sup_norm(const CoefVector& f, const Points& points);

/// Coefficients of f * g in the space of degree deg f + deg g.
CoefVector multiply(const CoefVector& f, const CoefVector& g);

/// f^p by repeated coefficient convolution.
CoefVector power(const CoefVector& f, unsigned p);

inline constexpr double kDefaultRankTolerance = 1e-10;

struct TraceRank {
  std::size_t rank = 0;
  std::uint64_t full_dim = 0;
  bool determining = false;
  std::size_t grid_size = 0;
  std::vector<double> singular_values;  // descending, of the column-normalised Chebyshev Vandermonde
};

/// Numerical dimension of the trace space of `space` on grid(set): the number
/// of singular values above tol times the largest one. The SVD is taken of the
/// scaled Chebyshev Vandermonde (rank is basis independent).
TraceRank trace_dimension(const PolySpace& space, const CompactSet& set, double tol = kDefaultRankTolerance);
TraceRank trace_dimension(const PolySpace& space, const Points& grid, double tol = kDefaultRankTolerance);

}  // namespace normmesh
