#pragma once

#include <array>

namespace breather {

using Vec3 = std::array<double, 3>;

inline double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

/// A sample location in space-time.
struct SpaceTimePoint {
  Vec3 r{};
  double t = 0.0;
};

}  // namespace breather
