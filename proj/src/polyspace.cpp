#include "normmesh/polyspace.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "normmesh/error.hpp"
#include "normmesh/kernels.hpp"

namespace normmesh {

namespace {

// All multi-indices of total degree exactly `deg`, descending lexicographic.
void append_degree(std::size_t n, unsigned deg, std::vector<MultiIndex>& out) {
  MultiIndex alpha(n, 0);
  // Recursive fill: first coordinate takes the largest exponent first.
  auto fill = [&](auto&& self, std::size_t pos, unsigned remaining) -> void {
    if (pos + 1 == n) {
      alpha[pos] = remaining;
      out.push_back(alpha);
      return;
    }
    for (unsigned e = remaining + 1; e-- > 0;) {
      alpha[pos] = e;
      self(self, pos + 1, remaining - e);
    }
  };
  fill(fill, 0, deg);
}

}  // namespace

unsigned total_degree(const MultiIndex& alpha) noexcept {
  return std::accumulate(alpha.begin(), alpha.end(), 0u);
}

bool graded_lex_less(const MultiIndex& a, const MultiIndex& b) noexcept {
  const unsigned da = total_degree(a);
  const unsigned db = total_degree(b);
  if (da != db) return da < db;
  return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

std::uint64_t dim_full(std::size_t n, std::size_t d) {
  // C(n + d, k) with k = min(n, d), built as a running exact binomial.
  const std::uint64_t k = std::min(n, d);
  const std::uint64_t top = static_cast<std::uint64_t>(std::max(n, d));
  std::uint64_t result = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    // result * (top + i) is divisible by i since result = C(top + i - 1, i - 1).
    const unsigned __int128 wide = static_cast<unsigned __int128>(result) * (top + i);
    const unsigned __int128 next = wide / i;
    if (next > std::numeric_limits<std::uint64_t>::max()) {
      throw OverflowError("dimension C(" + std::to_string(n + d) + ", " + std::to_string(n) +
                          ") exceeds 64-bit range");
    }
    result = static_cast<std::uint64_t>(next);
  }
  return result;
}

PolySpace::PolySpace(std::size_t n, std::size_t d) : n_(n), d_(d) {
  if (n == 0) throw ValidationError("ambient dimension must be positive");
  const std::uint64_t size = dim_full(n, d);
  if (size > (std::uint64_t{1} << 24))
    throw OverflowError("polynomial space dimension " + std::to_string(size) + " is too large to enumerate");
  basis_.reserve(size);
  for (unsigned deg = 0; deg <= d; ++deg) append_degree(n, deg, basis_);
}

std::size_t PolySpace::index_of(const MultiIndex& alpha) const {
  if (alpha.size() != n_ || total_degree(alpha) > d_) return dim();
  const auto it = std::lower_bound(basis_.begin(), basis_.end(), alpha, graded_lex_less);
  return static_cast<std::size_t>(it - basis_.begin());
}

CoefVector::CoefVector(PolySpace s, Eigen::VectorXd c) : space(std::move(s)), coefficients(std::move(c)) {
  if (static_cast<std::size_t>(coefficients.size()) != space.dim())
    throw ValidationError("coefficient vector length does not match the space dimension");
}

namespace {

using PowerTable = std::vector<std::vector<std::vector<double>>>;  // [axis][exponent][point]

void require_point_dim(const PolySpace& space, const Points& points) {
  if (!points.empty() && points.dim() != space.ambient_dim())
    throw ValidationError("points have dimension " + std::to_string(points.dim()) + ", space expects " +
                          std::to_string(space.ambient_dim()));
}

// Column alpha = elementwise product over axes of table[j][alpha_j].
Eigen::MatrixXd assemble_columns(const PolySpace& space, const PowerTable& table, std::size_t m) {
  Eigen::MatrixXd v(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(space.dim()));
  if (m == 0) return v;
  for (std::size_t c = 0; c < space.dim(); ++c) {
    const MultiIndex& alpha = space.basis()[c];
    std::span<double> col(v.col(static_cast<Eigen::Index>(c)).data(), m);
    std::fill(col.begin(), col.end(), 1.0);
    bool first = true;
    for (std::size_t j = 0; j < alpha.size(); ++j) {
      if (alpha[j] == 0) continue;
      const auto& factor = table[j][alpha[j]];
      if (first) {
        std::copy(factor.begin(), factor.end(), col.begin());
        first = false;
      } else {
        kernels::mul(col, factor, col);
      }
    }
  }
  return v;
}

}  // namespace

Eigen::MatrixXd vandermonde(const PolySpace& space, const Points& points) {
  require_point_dim(space, points);
  const std::size_t n = space.ambient_dim();
  const std::size_t m = points.size();
  const std::size_t d = space.degree();
  // table[j][e] holds x_j^e for every point, built by repeated multiplication.
  PowerTable table(n, std::vector<std::vector<double>>(d + 1));
  for (std::size_t j = 0; j < n && m > 0; ++j) {
    table[j][0].assign(m, 1.0);
    if (d == 0) continue;
    auto& x = table[j][1];
    x.resize(m);
    for (std::size_t i = 0; i < m; ++i) x[i] = points[i][j];
    for (std::size_t e = 2; e <= d; ++e) {
      table[j][e].resize(m);
      kernels::mul(table[j][e - 1], x, table[j][e]);
    }
  }
  return assemble_columns(space, table, m);
}

BoxScaling bounding_box_scaling(const Points& points) {
  BoxScaling s;
  const std::size_t n = points.dim();
  s.center.assign(n, 0.0);
  s.half_width.assign(n, 1.0);
  if (points.empty()) return s;
  for (std::size_t j = 0; j < n; ++j) {
    double lo = points[0][j];
    double hi = lo;
    for (std::size_t i = 1; i < points.size(); ++i) {
      lo = std::min(lo, points[i][j]);
      hi = std::max(hi, points[i][j]);
    }
    s.center[j] = 0.5 * (lo + hi);
    const double h = 0.5 * (hi - lo);
    s.half_width[j] = h > 0.0 ? h : 1.0;
  }
  return s;
}

Eigen::MatrixXd chebyshev_vandermonde(const PolySpace& space, const Points& points, const BoxScaling& scaling) {
  require_point_dim(space, points);
  const std::size_t n = space.ambient_dim();
  const std::size_t m = points.size();
  const std::size_t d = space.degree();
  if (scaling.center.size() != n || scaling.half_width.size() != n)
    throw ValidationError("box scaling dimension does not match the space");
  PowerTable table(n, std::vector<std::vector<double>>(d + 1));
  std::vector<double> tmp(m);
  for (std::size_t j = 0; j < n && m > 0; ++j) {
    table[j][0].assign(m, 1.0);
    if (d == 0) continue;
    auto& t = table[j][1];
    t.resize(m);
    for (std::size_t i = 0; i < m; ++i) t[i] = (points[i][j] - scaling.center[j]) / scaling.half_width[j];
    // T_{e+1} = 2 t T_e - T_{e-1}
    for (std::size_t e = 2; e <= d; ++e) {
      kernels::mul(t, table[j][e - 1], tmp);
      auto& next = table[j][e];
      next.assign(table[j][e - 2].begin(), table[j][e - 2].end());
      kernels::scale(-1.0, next);
      kernels::axpy(2.0, tmp, next);
    }
  }
  return assemble_columns(space, table, m);
}

Eigen::VectorXd evaluate(const CoefVector& f, const Points& points) {
  return vandermonde(f.space, points) * f.coefficients;
}

double sup_norm(std::span<const double> values) { return kernels::max_abs(values); }

double sup_norm(const CoefVector& f, const Points& points) {
  const Eigen::VectorXd v = evaluate(f, points);
  return sup_norm(std::span<const double>(v.data(), static_cast<std::size_t>(v.size())));
}

CoefVector multiply(const CoefVector& f, const CoefVector& g) {
  if (f.space.ambient_dim() != g.space.ambient_dim())
    throw ValidationError("cannot multiply polynomials in different ambient dimensions");
  const PolySpace target(f.space.ambient_dim(), f.space.degree() + g.space.degree());
  Eigen::VectorXd out = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(target.dim()));
  MultiIndex sum(target.ambient_dim());
  for (std::size_t a = 0; a < f.space.dim(); ++a) {
    const double fa = f.coefficients[static_cast<Eigen::Index>(a)];
    if (fa == 0.0) continue;
    const MultiIndex& alpha = f.space.basis()[a];
    for (std::size_t b = 0; b < g.space.dim(); ++b) {
      const MultiIndex& beta = g.space.basis()[b];
      for (std::size_t j = 0; j < sum.size(); ++j) sum[j] = alpha[j] + beta[j];
      out[static_cast<Eigen::Index>(target.index_of(sum))] += fa * g.coefficients[static_cast<Eigen::Index>(b)];
    }
  }
  return {target, std::move(out)};
}

CoefVector power(const CoefVector& f, unsigned p) {
  if (p == 0) {
    const PolySpace constants(f.space.ambient_dim(), 0);
    return {constants, Eigen::VectorXd::Ones(1)};
  }
  CoefVector acc = f;
  for (unsigned i = 1; i < p; ++i) acc = multiply(acc, f);
  return acc;
}

TraceRank trace_dimension(const PolySpace& space, const CompactSet& set, double tol) {
  if (set.ambient_dim() != space.ambient_dim())
    throw ValidationError("set and polynomial space have different ambient dimensions");
  return trace_dimension(space, grid(set), tol);
}

TraceRank trace_dimension(const PolySpace& space, const Points& pts, double tol) {
  if (!(tol > 0.0)) throw ValidationError("rank tolerance must be positive");
  if (pts.empty()) throw ValidationError("trace dimension needs at least one grid point");
  Eigen::MatrixXd v = chebyshev_vandermonde(space, pts, bounding_box_scaling(pts));
  // Column scaling preserves rank.
  for (Eigen::Index c = 0; c < v.cols(); ++c) {
    const double norm = v.col(c).norm();
    if (norm > 0.0) v.col(c) /= norm;
  }
  TraceRank out;
  out.full_dim = dim_full(space.ambient_dim(), space.degree());
  out.grid_size = pts.size();
  const Eigen::BDCSVD<Eigen::MatrixXd> svd(v);
  const Eigen::VectorXd& s = svd.singularValues();
  out.singular_values.assign(s.data(), s.data() + s.size());
  const double largest = s.size() > 0 ? s[0] : 0.0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s[i] > tol * largest) ++out.rank;
  out.determining = out.rank == out.full_dim;
  return out;
}

}  // namespace normmesh
