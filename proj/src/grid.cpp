#include "breather/grid.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include "breather/errors.hpp"

namespace breather {

bool Region::contains(const Vec3& r, int dims) const {
  for (int axis = 0; axis < dims; ++axis) {
    const auto& e = extents[static_cast<std::size_t>(axis)];
    if (r[static_cast<std::size_t>(axis)] < e.min || r[static_cast<std::size_t>(axis)] > e.max) {
      return false;
    }
  }
  return true;
}

GridGeometry::GridGeometry(int dims, std::array<std::size_t, 3> points,
                           std::array<AxisExtent, 3> extents)
    : dims_(dims), points_(points), extents_(extents) {
  if (dims != 1 && dims != 3) throw std::invalid_argument("grid dims must be 1 or 3");
  for (std::size_t axis = 0; axis < 3; ++axis) {
    if (axis >= static_cast<std::size_t>(dims)) {
      points_[axis] = 1;
      extents_[axis] = {0.0, 0.0};
      continue;
    }
    if (!std::has_single_bit(points_[axis]) || points_[axis] < 2) {
      throw std::invalid_argument("points per axis must be a power of two >= 2");
    }
    if (!(extents_[axis].min < extents_[axis].max)) {
      throw std::invalid_argument("grid extent must satisfy min < max");
    }
  }
}

GridGeometry GridGeometry::line(AxisExtent extent, std::size_t points) {
  return GridGeometry(1, {points, 1, 1}, {extent, AxisExtent{}, AxisExtent{}});
}

GridGeometry GridGeometry::cube(AxisExtent extent, std::size_t points) {
  return GridGeometry(3, {points, points, points}, {extent, extent, extent});
}

double GridGeometry::spacing(std::size_t axis) const {
  if (axis >= static_cast<std::size_t>(dims_)) return 1.0;
  return length(axis) / static_cast<double>(points_[axis]);
}

double GridGeometry::coordinate(std::size_t axis, std::size_t index) const {
  if (axis >= static_cast<std::size_t>(dims_)) return 0.0;
  return extents_[axis].min + static_cast<double>(index) * spacing(axis);
}

double GridGeometry::cell_volume() const {
  double volume = 1.0;
  for (std::size_t axis = 0; axis < static_cast<std::size_t>(dims_); ++axis) volume *= spacing(axis);
  return volume;
}

Vec3 GridGeometry::node(std::size_t flat) const {
  const std::size_t k = flat % points_[2];
  const std::size_t j = (flat / points_[2]) % points_[1];
  const std::size_t i = flat / (points_[1] * points_[2]);
  return {coordinate(0, i), coordinate(1, j), coordinate(2, k)};
}

double ComplexGrid::norm() const {
  double sum = 0.0;
  for (const auto& z : samples) sum += std::norm(z);
  return std::sqrt(sum * geometry.cell_volume());
}

double ComplexGrid::max_intensity() const {
  double peak = 0.0;
  for (const auto& z : samples) peak = std::max(peak, std::norm(z));
  return peak;
}

bool ComplexGrid::all_finite() const {
  return std::all_of(samples.begin(), samples.end(), [](const Complex& z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
  });
}

ComplexGrid sample_field(const std::function<Complex(const Vec3&)>& f,
                         const GridGeometry& geometry) {
  ComplexGrid grid(geometry);
  for (std::size_t n = 0; n < grid.samples.size(); ++n) grid.samples[n] = f(geometry.node(n));
  return grid;
}

ComplexGrid sample_field(const BreatherField& field, const GridGeometry& geometry, double t) {
  const TransformSnapshot snapshot = field.bundle().snapshot(t);
  return sample_field([&](const Vec3& r) { return field.evaluate(snapshot, r); }, geometry);
}

ComplexGrid sample_profile(Profile profile, const GridGeometry& geometry, double tau) {
  return sample_field([&](const Vec3& r) { return evaluate_profile(profile, r[0], tau); },
                      geometry);
}

FieldComparison compare_fields(const ComplexGrid& a, const ComplexGrid& b,
                               const std::optional<Region>& region) {
  if (!(a.geometry == b.geometry)) throw GeometryMismatch("compared grids differ in geometry");
  const auto& geometry = a.geometry;
  double norm_a = 0.0;
  double diff = 0.0;
  double linf = 0.0;
  Complex overlap = 0.0;  // sum conj(b) a
  for (std::size_t n = 0; n < a.samples.size(); ++n) {
    if (region && !region->contains(geometry.node(n), geometry.dims())) continue;
    const Complex za = a.samples[n];
    const Complex zb = b.samples[n];
    norm_a += std::norm(za);
    diff += std::norm(za - zb);
    linf = std::max(linf, std::abs(za - zb));
    overlap += std::conj(zb) * za;
  }
  // The optimal global phase aligns b with a: e^{i theta} = <b, a> / |<b, a>|.
  const Complex rotation = std::abs(overlap) > 0.0 ? overlap / std::abs(overlap) : Complex(1.0);
  double aligned = 0.0;
  for (std::size_t n = 0; n < a.samples.size(); ++n) {
    if (region && !region->contains(geometry.node(n), geometry.dims())) continue;
    aligned += std::norm(a.samples[n] - rotation * b.samples[n]);
  }
  FieldComparison out;
  out.linf = linf;
  if (norm_a > 0.0) {
    out.l2_rel = std::sqrt(diff / norm_a);
    out.phase_aligned_l2 = std::sqrt(aligned / norm_a);
  } else {
    out.l2_rel = std::sqrt(diff);
    out.phase_aligned_l2 = std::sqrt(aligned);
  }
  return out;
}

}  // namespace breather
