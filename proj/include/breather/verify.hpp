#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "breather/analytic.hpp"
#include "breather/residual_report.hpp"

namespace breather {

using PsiFn = std::function<Complex(const Vec3&, double)>;
using PotentialFn = std::function<double(const Vec3&, double)>;
using NonlinearityFn = std::function<double(double)>;

inline constexpr double kDefaultStep = 1e-3;
inline constexpr double kReductionTimeStep = 1e-4;
inline constexpr std::uint64_t kDefaultSeed = 20100;

/// Axis-aligned space-time box for point sampling.
struct SampleBox {
  Vec3 lo{-3.0, -3.0, -3.0};
  Vec3 hi{3.0, 3.0, 3.0};
  double t_lo = 0.1;
  double t_hi = 3.0;
};

/// Deterministic Sobol points in the box; `seed` skips into the sequence.
std::vector<SpaceTimePoint> low_discrepancy_points(const SampleBox& box, std::size_t count,
                                                   std::uint64_t seed = kDefaultSeed);

/// Pointwise residual R = i psi_t + lap(psi)/2 - v psi - g |psi|^2 psi of the
/// 3D Gross-Pitaevskii equation, normalized by max(1, |psi|).
///
/// psi is treated as a black box: every derivative comes from 5-point
/// fourth-order central differences. Throws StencilOutOfWindow when a time
/// stencil leaves `window`.
ResidualReport gp_residual(const PsiFn& psi, const PotentialFn& v, const NonlinearityFn& g,
                           TimeWindow window, std::span<const SpaceTimePoint> points,
                           double h_space = kDefaultStep, double h_time = kDefaultStep);

ResidualReport gp_residual(const BreatherField& field, std::span<const SpaceTimePoint> points,
                           double h_space = kDefaultStep, double h_time = kDefaultStep);

/// Residuals of the reduction identities
///   4a: tau_t - |grad zeta|^2
///   4b: zeta_t + grad eta . grad zeta
///   4c: 2 rho_t + rho lap(eta)
/// with closed-form spatial derivatives and fourth-order differences in time.
ResidualReport reduction_residual(const TransformBundle& bundle,
                                  std::span<const SpaceTimePoint> points,
                                  double h_time = kReductionTimeStep);

ResidualReport reduction_residual(const ScenarioSpec& spec, std::span<const SpaceTimePoint> points,
                                  double h_time = kReductionTimeStep);

struct ConvergenceStudy {
  std::vector<double> steps;
  std::vector<double> max_residuals;
  /// Least-squares slope of log(max residual) against log(h).
  double slope = 0.0;
};

ConvergenceStudy gp_convergence(const BreatherField& field,
                                std::span<const SpaceTimePoint> points,
                                std::span<const double> steps);

}  // namespace breather
