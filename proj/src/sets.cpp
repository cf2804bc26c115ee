#include "normmesh/sets.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include "normmesh/error.hpp"

namespace normmesh {

namespace {

// Grid points of curved sets may miss the defining equation by roundoff.
constexpr double kMembershipSlack = 1e-13;

void require_resolution(std::size_t resolution) {
  if (resolution < 2) throw ValidationError("grid resolution must be at least 2");
}

void require_dim(const std::vector<double>& v, std::size_t n, std::string_view what) {
  if (v.size() != n) {
    throw ValidationError(std::string(what) + " has " + std::to_string(v.size()) +
                          " coordinates, expected " + std::to_string(n));
  }
}

std::vector<double> axis_samples(double lo, double hi, std::size_t resolution) {
  if (lo == hi) return {lo};
  std::vector<double> out(resolution);
  const double denom = static_cast<double>(resolution - 1);
  for (std::size_t i = 0; i < resolution; ++i) {
    const double t = static_cast<double>(i) / denom;
    out[i] = (1.0 - t) * lo + t * hi;
  }
  return out;
}

// Tensor product of per-axis samples, last axis fastest.
Points tensor_grid(const std::vector<std::vector<double>>& axes) {
  const std::size_t n = axes.size();
  Points out(n);
  std::vector<std::size_t> idx(n, 0);
  std::vector<double> p(n);
  for (const auto& a : axes)
    if (a.empty()) return out;
  while (true) {
    for (std::size_t j = 0; j < n; ++j) p[j] = axes[j][idx[j]];
    out.push_back(p);
    std::size_t j = n;
    while (j > 0) {
      --j;
      if (++idx[j] < axes[j].size()) break;
      idx[j] = 0;
      if (j == 0) return out;
    }
    if (n == 0) return out;
  }
}

Points grid_of(const Box& b, std::size_t resolution) {
  std::vector<std::vector<double>> axes;
  axes.reserve(b.lower.size());
  for (std::size_t j = 0; j < b.lower.size(); ++j)
    axes.push_back(axis_samples(b.lower[j], b.upper[j], resolution));
  return tensor_grid(axes);
}

Points grid_of(const Ball& b, std::size_t resolution) {
  const std::size_t n = b.center.size();
  std::vector<std::vector<double>> axes;
  for (std::size_t j = 0; j < n; ++j)
    axes.push_back(axis_samples(b.center[j] - b.radius, b.center[j] + b.radius, resolution));
  const Points box = tensor_grid(axes);
  Points out(n);
  for (std::size_t i = 0; i < box.size(); ++i) {
    const auto p = box[i];
    double r2 = 0.0;
    for (std::size_t j = 0; j < n; ++j) r2 += (p[j] - b.center[j]) * (p[j] - b.center[j]);
    if (std::sqrt(r2) <= b.radius + kMembershipSlack) out.push_back(p);
  }
  // Even resolutions miss the center; adding it keeps |grid| nondecreasing in resolution.
  if (resolution % 2 == 0) out.push_back(b.center);
  return out;
}

Points grid_of(const Sphere& s, std::size_t resolution) {
  const std::size_t n = s.center.size();
  const double two_pi = 2.0 * std::numbers::pi;
  Points out(n);
  if (n == 1) {
    const double lo = s.center[0] - s.radius;
    const double hi = s.center[0] + s.radius;
    out.push_back(std::span<const double>(&lo, 1));
    out.push_back(std::span<const double>(&hi, 1));
  } else if (n == 2) {
    for (std::size_t j = 0; j < resolution; ++j) {
      const double angle = two_pi * static_cast<double>(j) / static_cast<double>(resolution);
      const double p[2] = {s.center[0] + s.radius * std::cos(angle),
                           s.center[1] + s.radius * std::sin(angle)};
      out.push_back(p);
    }
  } else {
    // Latitude-longitude product; each pole emitted once.
    const std::size_t levels = resolution;
    for (std::size_t i = 0; i < levels; ++i) {
      const double polar = std::numbers::pi * static_cast<double>(i) / static_cast<double>(levels - 1);
      const double z = s.radius * std::cos(polar);
      const double rho = s.radius * std::sin(polar);
      const bool pole = (i == 0 || i + 1 == levels);
      const std::size_t count = pole ? 1 : resolution;
      for (std::size_t j = 0; j < count; ++j) {
        const double az = two_pi * static_cast<double>(j) / static_cast<double>(resolution);
        const double p[3] = {s.center[0] + (pole ? 0.0 : rho * std::cos(az)),
                             s.center[1] + (pole ? 0.0 : rho * std::sin(az)), s.center[2] + z};
        out.push_back(p);
      }
    }
  }
  return out;
}

Points grid_of(const Product& prod) {
  std::vector<Points> parts;
  std::size_t dim = 0;
  for (const auto& f : prod.factors) {
    parts.push_back(grid(f));
    dim += f.ambient_dim();
  }
  Points out(dim);
  std::vector<std::size_t> idx(parts.size(), 0);
  for (const auto& p : parts)
    if (p.empty()) return out;
  std::vector<double> buf(dim);
  while (true) {
    std::size_t off = 0;
    for (std::size_t f = 0; f < parts.size(); ++f) {
      const auto q = parts[f][idx[f]];
      std::copy(q.begin(), q.end(), buf.begin() + static_cast<std::ptrdiff_t>(off));
      off += q.size();
    }
    out.push_back(buf);
    std::size_t f = parts.size();
    while (f > 0) {
      --f;
      if (++idx[f] < parts[f].size()) break;
      idx[f] = 0;
      if (f == 0) return out;
    }
  }
}

Points grid_of(const AffineImage& a) {
  const Points src = grid(a.child.front());
  const auto m = static_cast<std::size_t>(a.matrix.rows());
  Points out(m);
  std::vector<double> buf(m);
  for (std::size_t i = 0; i < src.size(); ++i) {
    const auto p = src[i];
    const Eigen::Map<const Eigen::VectorXd> x(p.data(), static_cast<Eigen::Index>(p.size()));
    const Eigen::VectorXd y = a.matrix * x + a.offset;
    std::copy(y.data(), y.data() + m, buf.begin());
    out.push_back(buf);
  }
  return out;
}

Points grid_of(const Union& u, std::size_t dim) {
  Points all(dim);
  for (const auto& m : u.members) {
    const Points g = grid(m);
    for (std::size_t i = 0; i < g.size(); ++i) all.push_back(g[i]);
  }
  return all.deduplicated();
}

}  // namespace

Points::Points(std::size_t dim, std::vector<double> coords) : dim_(dim), coords_(std::move(coords)) {
  if (dim_ == 0 || coords_.size() % dim_ != 0)
    throw ValidationError("coordinate count is not a multiple of the dimension");
}

void Points::push_back(std::span<const double> p) {
  if (p.size() != dim_) throw ValidationError("point dimension mismatch");
  coords_.insert(coords_.end(), p.begin(), p.end());
}

Points Points::deduplicated() const {
  // Lexicographic order on coordinates; -0.0 and 0.0 compare equal.
  auto less = [this](std::size_t a, std::size_t b) {
    const auto pa = (*this)[a];
    const auto pb = (*this)[b];
    return std::lexicographical_compare(pa.begin(), pa.end(), pb.begin(), pb.end());
  };
  std::set<std::size_t, decltype(less)> seen(less);
  Points out(dim_);
  for (std::size_t i = 0; i < size(); ++i)
    if (seen.insert(i).second) out.push_back((*this)[i]);
  return out;
}

std::string_view to_string(SetKind kind) noexcept {
  switch (kind) {
    case SetKind::box: return "box";
    case SetKind::ball: return "ball";
    case SetKind::sphere: return "sphere";
    case SetKind::product: return "product";
    case SetKind::affine_image: return "affine_image";
    case SetKind::union_of: return "union";
    case SetKind::point_cloud: return "point_cloud";
  }
  return "unknown";
}

CompactSet::CompactSet(std::size_t ambient_dim, std::size_t resolution, Shape shape)
    : ambient_dim_(ambient_dim), resolution_(resolution), shape_(std::move(shape)) {}

CompactSet CompactSet::box(std::vector<double> lower, std::vector<double> upper, std::size_t resolution) {
  require_resolution(resolution);
  if (lower.empty()) throw ValidationError("box needs at least one axis");
  require_dim(upper, lower.size(), "box upper corner");
  for (std::size_t j = 0; j < lower.size(); ++j) {
    if (!std::isfinite(lower[j]) || !std::isfinite(upper[j]))
      throw ValidationError("box corners must be finite");
    if (lower[j] > upper[j])
      throw ValidationError("box has min > max on axis " + std::to_string(j));
  }
  const std::size_t n = lower.size();
  return {n, resolution, Box{std::move(lower), std::move(upper)}};
}

CompactSet CompactSet::cube(std::size_t n, double lo, double hi, std::size_t resolution) {
  return box(std::vector<double>(n, lo), std::vector<double>(n, hi), resolution);
}

CompactSet CompactSet::ball(std::vector<double> center, double radius, std::size_t resolution) {
  require_resolution(resolution);
  if (center.empty()) throw ValidationError("ball needs a center");
  if (!(radius > 0.0) || !std::isfinite(radius)) throw ValidationError("ball radius must be positive");
  const std::size_t n = center.size();
  return {n, resolution, Ball{std::move(center), radius}};
}

CompactSet CompactSet::sphere(std::vector<double> center, double radius, std::size_t resolution) {
  require_resolution(resolution);
  if (center.empty() || center.size() > 3)
    throw ValidationError("sphere sampling supports ambient dimension 1, 2 or 3");
  if (!(radius > 0.0) || !std::isfinite(radius)) throw ValidationError("sphere radius must be positive");
  if (center.size() == 3 && resolution < 3)
    throw ValidationError("2-sphere sampling needs resolution >= 3");
  const std::size_t n = center.size();
  return {n, resolution, Sphere{std::move(center), radius}};
}

CompactSet CompactSet::product(std::vector<CompactSet> factors) {
  if (factors.empty()) throw ValidationError("product needs at least one factor");
  std::size_t dim = 0;
  for (const auto& f : factors) dim += f.ambient_dim();
  const std::size_t res = factors.front().resolution();
  return {dim, res, Product{std::move(factors)}};
}

CompactSet CompactSet::affine_image(Eigen::MatrixXd matrix, Eigen::VectorXd offset, CompactSet child) {
  if (static_cast<std::size_t>(matrix.cols()) != child.ambient_dim())
    throw ValidationError("affine matrix column count must equal the child's dimension");
  if (matrix.rows() == 0 || offset.size() != matrix.rows())
    throw ValidationError("affine offset length must equal the matrix row count");
  if (!matrix.allFinite() || !offset.allFinite()) throw ValidationError("affine map must be finite");
  const auto m = static_cast<std::size_t>(matrix.rows());
  const std::size_t res = child.resolution();
  std::vector<CompactSet> c;
  c.push_back(std::move(child));
  return {m, res, AffineImage{std::move(matrix), std::move(offset), std::move(c)}};
}

CompactSet CompactSet::union_of(std::vector<CompactSet> members) {
  if (members.empty()) throw ValidationError("union needs at least one member");
  const std::size_t dim = members.front().ambient_dim();
  for (const auto& m : members)
    if (m.ambient_dim() != dim) throw ValidationError("union members must share the ambient dimension");
  const std::size_t res = members.front().resolution();
  return {dim, res, Union{std::move(members)}};
}

CompactSet CompactSet::point_cloud(Points points, std::string source) {
  if (points.empty()) throw InputError("point cloud is empty");
  const std::size_t dim = points.dim();
  Points unique = points.deduplicated();
  const std::size_t res = std::max<std::size_t>(2, unique.size());
  return {dim, res, PointCloud{std::move(unique), std::move(source)}};
}

CompactSet CompactSet::with_resolution(std::size_t resolution) const {
  require_resolution(resolution);
  CompactSet copy = *this;
  copy.resolution_ = resolution;
  std::visit(
      [&](auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Product>) {
          for (auto& f : s.factors) f = f.with_resolution(resolution);
        } else if constexpr (std::is_same_v<T, AffineImage>) {
          s.child.front() = s.child.front().with_resolution(resolution);
        } else if constexpr (std::is_same_v<T, Union>) {
          for (auto& m : s.members) m = m.with_resolution(resolution);
        } else if constexpr (std::is_same_v<T, PointCloud>) {
          copy.resolution_ = resolution_;
        }
      },
      copy.shape_);
  return copy;
}

Points grid(const CompactSet& set) {
  const std::size_t res = set.resolution();
  return std::visit(
      [&](const auto& s) -> Points {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Box>) {
          return grid_of(s, res);
        } else if constexpr (std::is_same_v<T, Ball>) {
          return grid_of(s, res);
        } else if constexpr (std::is_same_v<T, Sphere>) {
          return grid_of(s, res);
        } else if constexpr (std::is_same_v<T, Product>) {
          return grid_of(s);
        } else if constexpr (std::is_same_v<T, AffineImage>) {
          return grid_of(s);
        } else if constexpr (std::is_same_v<T, Union>) {
          return grid_of(s, set.ambient_dim());
        } else {
          return s.points;
        }
      },
      set.shape());
}

CompactSet parse_point_cloud(std::string_view text, std::size_t n, std::string source) {
  if (n == 0) throw ValidationError("point dimension must be positive");
  Points pts(n);
  std::vector<double> row;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
      if (end == text.size()) break;
      continue;
    }
    line.remove_prefix(first);
    if (line.front() == '#') continue;
    row.clear();
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
      if (i >= line.size()) break;
      std::size_t j = i;
      while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
      std::string_view tok = line.substr(i, j - i);
      if (tok.front() == '+') tok.remove_prefix(1);
      double v = 0.0;
      const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
      if (ec != std::errc() || ptr != tok.data() + tok.size() || !std::isfinite(v)) {
        throw InputError(source + ":" + std::to_string(line_no) + ": cannot parse '" +
                         std::string(line.substr(i, j - i)) + "' as a real number");
      }
      row.push_back(v);
      i = j;
    }
    if (row.size() != n) {
      throw InputError(source + ":" + std::to_string(line_no) + ": expected " + std::to_string(n) +
                       " coordinates, found " + std::to_string(row.size()));
    }
    pts.push_back(row);
    if (end == text.size()) break;
  }
  if (pts.empty()) throw InputError(source + ": point cloud file contains no points");
  return CompactSet::point_cloud(std::move(pts), std::move(source));
}

CompactSet load_point_cloud(const std::filesystem::path& path, std::size_t n) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open point cloud file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_point_cloud(buf.str(), n, path.string());
}

}  // namespace normmesh
