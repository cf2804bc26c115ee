#pragma once

// Compact subsets of R^n, modelled by deterministic finite grids. Anything the
// library states "over K" is computed over grid(set).

#include <Eigen/Dense>

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace normmesh {

/// Ordered list of points in R^dim, stored row-major.
class Points {
 public:
  Points() = default;
  explicit Points(std::size_t dim) : dim_(dim) {}
  Points(std::size_t dim, std::vector<double> coords);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return dim_ == 0 ? 0 : coords_.size() / dim_; }
  bool empty() const noexcept { return coords_.empty(); }

  std::span<const double> operator[](std::size_t i) const noexcept {
    return {coords_.data() + i * dim_, dim_};
  }
  void push_back(std::span<const double> p);

  const std::vector<double>& coords() const noexcept { return coords_; }

  /// Keeps the first occurrence of every exactly repeated point.
  Points deduplicated() const;

  friend bool operator==(const Points&, const Points&) = default;

 private:
  std::size_t dim_ = 0;
  std::vector<double> coords_;
};

class CompactSet;

struct Box {
  std::vector<double> lower;
  std::vector<double> upper;
};

/// Closed Euclidean ball, sampled by filtering the tensor grid of its bounding box.
struct Ball {
  std::vector<double> center;
  double radius = 1.0;
};

/// Euclidean sphere in R^1, R^2 or R^3, sampled parametrically.
struct Sphere {
  std::vector<double> center;
  double radius = 1.0;
};

struct Product {
  std::vector<CompactSet> factors;
};

/// x -> matrix * x + offset applied to the child's grid.
struct AffineImage {
  Eigen::MatrixXd matrix;
  Eigen::VectorXd offset;
  std::vector<CompactSet> child;  // exactly one element
};

struct Union {
  std::vector<CompactSet> members;
};

struct PointCloud {
  Points points;
  std::string source;
};

enum class SetKind { box, ball, sphere, product, affine_image, union_of, point_cloud };

std::string_view to_string(SetKind kind) noexcept;

class CompactSet {
 public:
  using Shape = std::variant<Box, Ball, Sphere, Product, AffineImage, Union, PointCloud>;

  static CompactSet box(std::vector<double> lower, std::vector<double> upper, std::size_t resolution);
  /// [lo, hi]^n
  static CompactSet cube(std::size_t n, double lo, double hi, std::size_t resolution);
  static CompactSet ball(std::vector<double> center, double radius, std::size_t resolution);
  static CompactSet sphere(std::vector<double> center, double radius, std::size_t resolution);
  static CompactSet product(std::vector<CompactSet> factors);
  static CompactSet affine_image(Eigen::MatrixXd matrix, Eigen::VectorXd offset, CompactSet child);
  static CompactSet union_of(std::vector<CompactSet> members);
  static CompactSet point_cloud(Points points, std::string source = {});

  std::size_t ambient_dim() const noexcept { return ambient_dim_; }
  SetKind kind() const noexcept { return static_cast<SetKind>(shape_.index()); }
  std::size_t resolution() const noexcept { return resolution_; }
  const Shape& shape() const noexcept { return shape_; }

  /// Same set sampled at a new per-axis resolution; propagates to children.
  CompactSet with_resolution(std::size_t resolution) const;

 private:
  CompactSet(std::size_t ambient_dim, std::size_t resolution, Shape shape);

  std::size_t ambient_dim_ = 0;
  std::size_t resolution_ = 0;
  Shape shape_;
};

/// Deterministic ordered sample of the set. Tensor grids vary the last axis
/// fastest.
Points grid(const CompactSet& set);

/// Reads a whitespace separated point file ('#' starts a comment line).
/// Exact duplicates are dropped, first occurrence kept.
CompactSet load_point_cloud(const std::filesystem::path& path, std::size_t n);
CompactSet parse_point_cloud(std::string_view text, std::size_t n, std::string source = "<memory>");

}  // namespace normmesh
