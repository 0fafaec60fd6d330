#pragma once

#include <Eigen/Core>

#include <functional>
#include <vector>

namespace pararadon {

using Index = Eigen::Index;
using Vec = Eigen::VectorXd;

/// Uniform axis-aligned box grid in R^d. Samples sit at cell midpoints and
/// storage is row-major (the last axis varies fastest).
class GridSpec {
 public:
  GridSpec() = default;
  GridSpec(Vec lo, Vec hi, std::vector<Index> counts);

  /// Cube [-half_width, half_width]^d with n cells per axis.
  static GridSpec centered_cube(int dim, double half_width, Index n);

  int dim() const { return static_cast<int>(counts_.size()); }
  const Vec& lo() const { return lo_; }
  const Vec& hi() const { return hi_; }
  const std::vector<Index>& counts() const { return counts_; }
  Index count(int axis) const { return counts_[static_cast<std::size_t>(axis)]; }
  double width(int axis) const { return hi_[axis] - lo_[axis]; }
  double cell_width(int axis) const { return width(axis) / static_cast<double>(count(axis)); }
  double cell_volume() const { return cell_volume_; }
  double box_volume() const;
  Index size() const { return size_; }
  Index stride(int axis) const { return strides_[static_cast<std::size_t>(axis)]; }

  double midpoint_coord(int axis, Index i) const {
    return lo_[axis] + (static_cast<double>(i) + 0.5) * cell_width(axis);
  }
  Vec midpoint(Index flat) const;
  std::vector<Index> unravel(Index flat) const;
  Index ravel(const std::vector<Index>& multi) const;
  bool contains(const Eigen::Ref<const Vec>& x) const;

  bool operator==(const GridSpec& other) const;

 private:
  Vec lo_, hi_;
  std::vector<Index> counts_;
  std::vector<Index> strides_;
  Index size_ = 0;
  double cell_volume_ = 0.0;
};

/// Nonnegative, finite samples of a function on a GridSpec.
class GridFunction {
 public:
  GridFunction() = default;
  GridFunction(GridSpec spec, Eigen::ArrayXd values);

  static GridFunction zeros(const GridSpec& spec);
  /// Samples fn at every cell midpoint.
  static GridFunction sample(const GridSpec& spec, const std::function<double(const Vec&)>& fn);

  const GridSpec& spec() const { return spec_; }
  const Eigen::ArrayXd& values() const { return values_; }
  double operator[](Index i) const { return values_[i]; }
  Index size() const { return values_.size(); }
  int dim() const { return spec_.dim(); }

  bool is_zero() const { return (values_ == 0.0).all(); }
  GridFunction scaled(double c) const;
  /// Cellwise restriction to a 0/1 mask.
  GridFunction masked(const std::vector<bool>& keep) const;

 private:
  GridSpec spec_;
  Eigen::ArrayXd values_;
};

GridFunction operator+(const GridFunction& a, const GridFunction& b);

/// Indicator of the axis-aligned box [lo, hi], decided by cell midpoint.
GridFunction box_indicator(const GridSpec& spec, const Vec& lo, const Vec& hi, double height = 1.0);

/// Multilinear interpolation of the cell-midpoint samples, treating the
/// samples beyond the box as zero. Returns 0 for x outside the box.
double interpolate(const GridFunction& f, const Eigen::Ref<const Vec>& x);

/// Grid L^2 inner product sum(a*b) * cell volume on a common grid.
double inner_product(const GridFunction& a, const GridFunction& b);

}  // namespace pararadon
