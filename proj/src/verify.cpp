#include "breather/verify.hpp"

#include <boost/random/sobol.hpp>

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "breather/errors.hpp"

namespace breather {

namespace {

// Fourth-order central differences on a 5-point stencil.
template <typename F, typename Real>
auto first_derivative(const F& f, Real h) {
  return (f(-2 * h) - Real(8) * f(-h) + Real(8) * f(h) - f(2 * h)) / (12 * h);
}

template <typename F, typename T, typename Real>
auto second_derivative(const F& f, const T& center, Real h) {
  return (-f(-2 * h) + Real(16) * f(-h) - Real(30) * center + Real(16) * f(h) - f(2 * h)) /
         (12 * h * h);
}

void require_stencil(TimeWindow window, double t, double h) {
  if (t - 2.0 * h < window.t_min || t + 2.0 * h > window.t_max) {
    std::ostringstream msg;
    msg << "time stencil around t = " << t << " with step " << h << " leaves the window ["
        << window.t_min << ", " << window.t_max << "]";
    throw StencilOutOfWindow(msg.str());
  }
}

}  // namespace

std::vector<SpaceTimePoint> low_discrepancy_points(const SampleBox& box, std::size_t count,
                                                   std::uint64_t seed) {
  boost::random::sobol engine(4);
  engine.discard(4 * seed);
  const double scale = 1.0 / (static_cast<double>(boost::random::sobol::max()) + 1.0);
  std::vector<SpaceTimePoint> points(count);
  for (auto& p : points) {
    for (std::size_t k = 0; k < 3; ++k) {
      double u = static_cast<double>(engine()) * scale;
      p.r[k] = box.lo[k] + u * (box.hi[k] - box.lo[k]);
    }
    double u = static_cast<double>(engine()) * scale;
    p.t = box.t_lo + u * (box.t_hi - box.t_lo);
  }
  return points;
}

namespace {

template <typename Real, typename Psi>
ResidualReport gp_residual_impl(const Psi& psi, const PotentialFn& v, const NonlinearityFn& g,
                                TimeWindow window, std::span<const SpaceTimePoint> points,
                                double h_space, double h_time) {
  using Cplx = std::complex<Real>;
  using Point = std::array<Real, 3>;
  if (!(h_space >= 1e-5 && h_space <= 1e-2 && h_time >= 1e-5 && h_time <= 1e-2)) {
    throw std::invalid_argument("finite-difference steps must lie in [1e-5, 1e-2]");
  }
  const Real hs = h_space;
  const Real ht = h_time;
  ResidualAccumulator acc("gp");
  for (const auto& p : points) {
    require_stencil(window, p.t, h_time);
    const Point r{p.r[0], p.r[1], p.r[2]};
    const Real t = p.t;
    const Cplx center = psi(r, t);

    Cplx laplacian = 0;
    for (std::size_t axis = 0; axis < 3; ++axis) {
      auto along = [&](Real offset) {
        Point q = r;
        q[axis] += offset;
        return psi(q, t);
      };
      laplacian += second_derivative(along, center, hs);
    }
    const Cplx psi_t = first_derivative([&](Real dt) { return psi(r, t + dt); }, ht);

    const Cplx residual = Cplx(0, 1) * psi_t + Real(0.5) * laplacian -
                          Real(v(p.r, p.t)) * center -
                          Real(g(p.t)) * std::norm(center) * center;
    acc.add(static_cast<double>(std::abs(residual) / std::max(Real(1), std::abs(center))), p);
  }
  ResidualReport report;
  report.entries.push_back(acc.finish());
  report.sample_count = points.size();
  report.step_sizes = {h_space, h_time};
  return report;
}

}  // namespace

ResidualReport gp_residual(const PsiFn& psi, const PotentialFn& v, const NonlinearityFn& g,
                           TimeWindow window, std::span<const SpaceTimePoint> points,
                           double h_space, double h_time) {
  auto black_box = [&psi](const Vec3& r, double t) { return psi(r, t); };
  return gp_residual_impl<double>(black_box, v, g, window, points, h_space, h_time);
}

ResidualReport gp_residual(const BreatherField& field, std::span<const SpaceTimePoint> points,
                           double h_space, double h_time) {
  const auto& bundle = field.bundle();
  // Extended precision keeps the eps/h^2 roundoff floor of the Laplacian
  // stencil well below the truncation error for every admissible h.
  auto black_box = [&field, &bundle](const Vec3Ext& r, long double t) {
    return field.evaluate(bundle.snapshot(static_cast<double>(t)), r);
  };
  return gp_residual_impl<long double>(black_box, bundle.potential, bundle.nonlinearity,
                                       bundle.time_window, points, h_space, h_time);
}

ResidualReport reduction_residual(const TransformBundle& bundle,
                                  std::span<const SpaceTimePoint> points, double h_time) {
  ResidualAccumulator tau_acc("4a");
  ResidualAccumulator zeta_acc("4b");
  ResidualAccumulator rho_acc("4c");
  for (const auto& p : points) {
    require_stencil(bundle.time_window, p.t, h_time);
    const Vec3 grad_zeta = bundle.grad_zeta(p.t);

    const double tau_t = first_derivative([&](double dt) { return bundle.tau(p.t + dt); }, h_time);
    tau_acc.add(tau_t - dot(grad_zeta, grad_zeta), p);

    const double zeta_t =
        first_derivative([&](double dt) { return bundle.zeta(p.r, p.t + dt); }, h_time);
    zeta_acc.add(zeta_t + dot(bundle.grad_eta(p.r, p.t), grad_zeta), p);

    const double rho_t = first_derivative([&](double dt) { return bundle.rho(p.t + dt); }, h_time);
    rho_acc.add(2.0 * rho_t + bundle.rho(p.t) * bundle.laplacian_eta(p.t), p);
  }
  ResidualReport report;
  report.entries = {tau_acc.finish(), zeta_acc.finish(), rho_acc.finish()};
  report.sample_count = points.size();
  report.step_sizes = {0.0, h_time};
  return report;
}

ResidualReport reduction_residual(const ScenarioSpec& spec, std::span<const SpaceTimePoint> points,
                                  double h_time) {
  return reduction_residual(make_bundle(spec), points, h_time);
}

ConvergenceStudy gp_convergence(const BreatherField& field,
                                std::span<const SpaceTimePoint> points,
                                std::span<const double> steps) {
  ConvergenceStudy study;
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (double h : steps) {
    double worst = gp_residual(field, points, h, h).max_abs();
    study.steps.push_back(h);
    study.max_residuals.push_back(worst);
    double x = std::log(h);
    double y = std::log(worst);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double n = static_cast<double>(steps.size());
  study.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return study;
}

}  // namespace breather
