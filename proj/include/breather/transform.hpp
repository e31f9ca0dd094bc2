#pragma once

#include <array>
#include <functional>
#include <optional>
#include <span>
#include <string>

#include "breather/residual_report.hpp"
#include "breather/time_function.hpp"
#include "breather/vec3.hpp"

namespace breather {

/// Which relation links the potential to the phase eta.
///
/// `canonical` is v = -eta_t - |grad eta|^2 / 2, the relation that makes the
/// Ansatz an exact solution. `paper` is v = -eta_t - |grad eta|^2, kept only to
/// reproduce the historically printed potentials.
enum class VConvention { canonical, paper };

/// Integration constant used for rho = exp(-int (d1 + d2 + d3) dt).
enum class RhoConvention { raw_antiderivative, normalized_at_zero };

struct TimeWindow {
  double t_min = 0.0;
  double t_max = 0.0;

  bool contains(double t) const { return t >= t_min && t <= t_max; }
};

/// Coefficients of a quadratic polynomial in (x, y, z), in the order
/// x^2, y^2, z^2, xy, xz, yz, x, y, z, 1.
using QuadraticForm = std::array<double, 10>;

double evaluate(const QuadraticForm& form, const Vec3& r);

/// A complete similarity scenario.
///
/// zeta = c1 x + c2 y + c3 z + c4, eta is the quadratic form with
/// coefficients d1..d10, and G is the coupling of the reduced 1D equation.
struct ScenarioSpec {
  std::string name = "custom";
  std::array<TimeFunction, 4> c;
  std::array<TimeFunction, 10> d;
  double G = -1.0;
  VConvention v_convention = VConvention::canonical;
  RhoConvention rho_convention = RhoConvention::raw_antiderivative;
  TimeWindow time_window{0.0, 0.0};
};

inline constexpr double kConstraintTolerance = 1e-9;
inline constexpr std::size_t kConstraintSamples = 200;

/// Diagonal gauge: d_j = -c_j'/(2 c_j) for j = 1..3, cross terms zero,
/// d7..d9 as supplied (default zero), d10 = 0.
///
/// Throws DivisionByZeroGauge when a non-constant c_j reaches zero on the
/// window, ConstraintViolation when c4' + c1 d7 + c2 d8 + c3 d9 != 0.
std::array<TimeFunction, 10> derive_gauge_d(
    const std::array<TimeFunction, 4>& c,
    const std::optional<std::array<TimeFunction, 3>>& linear_d, TimeWindow window);

/// Checks the ScenarioSpec invariants; throws ConstraintViolation.
void validate(const ScenarioSpec& spec);

/// Every transform ingredient frozen at one instant.
struct TransformSnapshot {
  double t = 0.0;
  double tau = 0.0;
  double tau_rate = 0.0;
  double rho = 1.0;
  double nonlinearity = 0.0;
  std::array<double, 4> c{};
  std::array<double, 4> c_dot{};
  std::array<double, 10> d{};
  std::array<double, 10> d_dot{};

  double zeta(const Vec3& r) const;
  double eta(const Vec3& r) const;
  Vec3 grad_zeta() const { return {c[0], c[1], c[2]}; }
  Vec3 grad_eta(const Vec3& r) const;
  double laplacian_eta() const { return 2.0 * (d[0] + d[1] + d[2]); }
  double eta_t(const Vec3& r) const;
  double potential(const Vec3& r, VConvention convention) const;
  /// v expanded as a quadratic form; v = evaluate(form, r).
  QuadraticForm potential_form(VConvention convention) const;
};

/// Callable evaluators for tau, zeta, eta, rho, v and g of one scenario.
///
/// The closed-form spatial derivatives are exposed too, for the reduction
/// identity checks. All members are pure and may be called concurrently.
struct TransformBundle {
  std::function<double(double)> tau;
  std::function<double(const Vec3&, double)> zeta;
  std::function<double(const Vec3&, double)> eta;
  std::function<double(double)> rho;
  std::function<double(const Vec3&, double)> potential;
  std::function<double(double)> nonlinearity;

  std::function<Vec3(double)> grad_zeta;
  std::function<Vec3(const Vec3&, double)> grad_eta;
  std::function<double(double)> laplacian_eta;
  std::function<QuadraticForm(double)> potential_form;
  std::function<TransformSnapshot(double)> snapshot;

  TimeWindow time_window;
};

TransformBundle make_bundle(const ScenarioSpec& spec);

double eval_zeta(const ScenarioSpec& spec, const Vec3& r, double t);
double eval_tau(const ScenarioSpec& spec, double t);
double eval_eta(const ScenarioSpec& spec, const Vec3& r, double t);
double eval_rho(const ScenarioSpec& spec, double t);
double eval_potential(const ScenarioSpec& spec, const Vec3& r, double t);
double eval_nonlinearity(const ScenarioSpec& spec, double t);

/// Residuals of the four coefficient ODEs (entries "10a".."10d") over the
/// given times. Never throws on violation.
ResidualReport check_constraints(const ScenarioSpec& spec, std::span<const double> t_samples);

/// Uniform samples t_min + (i + 0.5) (t_max - t_min) / n.
std::vector<double> uniform_times(TimeWindow window, std::size_t n);

/// The omega coefficients exactly as historically tabulated: omega1 =
/// d1' + 4 d1^2 + d4^2 + d5^2, ..., omega7..10 = d7'..d10'. Diagnostic only;
/// the tabulated sign is opposite to the worked potentials and omega7..10
/// drop the cross terms.
QuadraticForm tabulated_omega(const ScenarioSpec& spec, double t);

}  // namespace breather
