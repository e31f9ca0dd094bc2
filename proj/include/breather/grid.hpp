#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "breather/analytic.hpp"
#include "breather/vec3.hpp"

namespace breather {

struct AxisExtent {
  double min = 0.0;
  double max = 0.0;

  bool operator==(const AxisExtent&) const = default;
};

/// Axis-aligned sub-box of a grid; unused axes of a 1D grid are ignored.
struct Region {
  std::array<AxisExtent, 3> extents;

  static Region cube(AxisExtent extent) { return Region{{extent, extent, extent}}; }
  bool contains(const Vec3& r, int dims) const;
};

/// Uniform periodic grid: node i of an axis sits at min + i * (max - min) / N,
/// so `max` itself is the periodic image of `min`.
class GridGeometry {
 public:
  /// Throws std::invalid_argument unless dims is 1 or 3, every point count is
  /// a power of two and every extent has min < max.
  GridGeometry(int dims, std::array<std::size_t, 3> points, std::array<AxisExtent, 3> extents);

  static GridGeometry line(AxisExtent extent, std::size_t points);
  static GridGeometry cube(AxisExtent extent, std::size_t points);

  int dims() const { return dims_; }
  std::size_t points(std::size_t axis) const { return points_[axis]; }
  const AxisExtent& extent(std::size_t axis) const { return extents_[axis]; }
  std::size_t size() const { return points_[0] * points_[1] * points_[2]; }
  double spacing(std::size_t axis) const;
  double length(std::size_t axis) const { return extents_[axis].max - extents_[axis].min; }
  double coordinate(std::size_t axis, std::size_t index) const;
  double cell_volume() const;

  /// Row-major flat index, x slowest.
  std::size_t index(std::size_t i, std::size_t j = 0, std::size_t k = 0) const {
    return (i * points_[1] + j) * points_[2] + k;
  }
  Vec3 node(std::size_t flat) const;

  bool operator==(const GridGeometry&) const = default;

 private:
  int dims_;
  std::array<std::size_t, 3> points_;
  std::array<AxisExtent, 3> extents_;
};

/// Complex field samples on a GridGeometry.
struct ComplexGrid {
  GridGeometry geometry;
  std::vector<Complex> samples;

  explicit ComplexGrid(GridGeometry g) : geometry(g), samples(g.size()) {}

  /// Discrete L2 norm sqrt(sum |psi|^2 dV).
  double norm() const;
  double max_intensity() const;
  bool all_finite() const;
};

ComplexGrid sample_field(const std::function<Complex(const Vec3&)>& f, const GridGeometry& geometry);

/// Closed-form psi(r, t) on every node.
ComplexGrid sample_field(const BreatherField& field, const GridGeometry& geometry, double t);

/// 1D profile Phi(x, tau) on a line grid.
ComplexGrid sample_profile(Profile profile, const GridGeometry& geometry, double tau);

struct FieldComparison {
  double l2_rel = 0.0;
  double linf = 0.0;
  double phase_aligned_l2 = 0.0;
};

/// Discrete norms of a - b over `region` (whole grid when empty); l2 errors
/// are relative to |a|. phase_aligned_l2 minimizes over a global phase of b.
/// Throws GeometryMismatch.
FieldComparison compare_fields(const ComplexGrid& a, const ComplexGrid& b,
                               const std::optional<Region>& region = std::nullopt);

}  // namespace breather
