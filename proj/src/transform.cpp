#include "breather/transform.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <sstream>

#include "breather/errors.hpp"

namespace breather {

double evaluate(const QuadraticForm& f, const Vec3& r) {
  const auto [x, y, z] = r;
  return f[0] * x * x + f[1] * y * y + f[2] * z * z + f[3] * x * y + f[4] * x * z +
         f[5] * y * z + f[6] * x + f[7] * y + f[8] * z + f[9];
}

namespace {

// Coefficients (ax, ay, az, a0) of the three components of grad eta.
std::array<std::array<double, 4>, 3> grad_eta_rows(const std::array<double, 10>& d) {
  return {{{2.0 * d[0], d[3], d[4], d[6]},
           {d[3], 2.0 * d[1], d[5], d[7]},
           {d[4], d[5], 2.0 * d[2], d[8]}}};
}

void check_nonvanishing(const TimeFunction& f, int index, TimeWindow window) {
  constexpr int kSamples = 4001;
  double prev = f(window.t_min);
  double scale = std::abs(prev);
  for (int i = 0; i < kSamples; ++i) {
    double t = window.t_min + (window.t_max - window.t_min) * i / (kSamples - 1);
    scale = std::max(scale, std::abs(f(t)));
  }
  for (int i = 0; i < kSamples; ++i) {
    double t = window.t_min + (window.t_max - window.t_min) * i / (kSamples - 1);
    double value = f(t);
    if (std::abs(value) <= 1e-12 * std::max(1.0, scale) || std::signbit(value) != std::signbit(prev)) {
      std::ostringstream msg;
      msg << "c" << index << " = " << f.to_string() << " vanishes near t = " << t
          << "; diagonal gauge d" << index << " = -c" << index << "'/(2 c" << index
          << ") is singular";
      throw DivisionByZeroGauge(msg.str());
    }
    prev = value;
  }
}

struct Precomputed {
  ScenarioSpec spec;
  std::array<TimeFunction, 4> c_dot;
  std::array<TimeFunction, 10> d_dot;
  TimeFunction tau_rate;
  TimeFunction divergence;  // d1 + d2 + d3

  explicit Precomputed(const ScenarioSpec& s) : spec(s) {
    for (std::size_t j = 0; j < 4; ++j) c_dot[j] = spec.c[j].derivative();
    for (std::size_t j = 0; j < 10; ++j) d_dot[j] = spec.d[j].derivative();
    tau_rate = spec.c[0] * spec.c[0] + spec.c[1] * spec.c[1] + spec.c[2] * spec.c[2];
    divergence = spec.d[0] + spec.d[1] + spec.d[2];
  }

  double rho(double t) const {
    double exponent = spec.rho_convention == RhoConvention::raw_antiderivative
                          ? divergence.antiderivative(t)
                          : divergence.integral(t);
    return std::exp(-exponent);
  }

  TransformSnapshot snapshot(double t) const {
    TransformSnapshot s;
    s.t = t;
    for (std::size_t j = 0; j < 4; ++j) {
      s.c[j] = spec.c[j](t);
      s.c_dot[j] = c_dot[j](t);
    }
    for (std::size_t j = 0; j < 10; ++j) {
      s.d[j] = spec.d[j](t);
      s.d_dot[j] = d_dot[j](t);
    }
    s.tau = tau_rate.integral(t);
    s.tau_rate = s.c[0] * s.c[0] + s.c[1] * s.c[1] + s.c[2] * s.c[2];
    s.rho = rho(t);
    s.nonlinearity = spec.G * s.tau_rate / (s.rho * s.rho);
    return s;
  }
};

}  // namespace

double TransformSnapshot::zeta(const Vec3& r) const {
  return c[0] * r[0] + c[1] * r[1] + c[2] * r[2] + c[3];
}

double TransformSnapshot::eta(const Vec3& r) const { return evaluate(d, r); }

double TransformSnapshot::eta_t(const Vec3& r) const { return evaluate(d_dot, r); }

Vec3 TransformSnapshot::grad_eta(const Vec3& r) const {
  auto rows = grad_eta_rows(d);
  Vec3 g;
  for (std::size_t i = 0; i < 3; ++i) {
    g[i] = rows[i][0] * r[0] + rows[i][1] * r[1] + rows[i][2] * r[2] + rows[i][3];
  }
  return g;
}

double TransformSnapshot::potential(const Vec3& r, VConvention convention) const {
  double kappa = convention == VConvention::canonical ? 0.5 : 1.0;
  Vec3 g = grad_eta(r);
  return -eta_t(r) - kappa * dot(g, g);
}

QuadraticForm TransformSnapshot::potential_form(VConvention convention) const {
  double kappa = convention == VConvention::canonical ? 0.5 : 1.0;
  QuadraticForm v{};
  for (std::size_t k = 0; k < 10; ++k) v[k] = -d_dot[k];
  for (const auto& [ax, ay, az, a0] : grad_eta_rows(d)) {
    v[0] -= kappa * ax * ax;
    v[1] -= kappa * ay * ay;
    v[2] -= kappa * az * az;
    v[3] -= kappa * 2.0 * ax * ay;
    v[4] -= kappa * 2.0 * ax * az;
    v[5] -= kappa * 2.0 * ay * az;
    v[6] -= kappa * 2.0 * ax * a0;
    v[7] -= kappa * 2.0 * ay * a0;
    v[8] -= kappa * 2.0 * az * a0;
    v[9] -= kappa * a0 * a0;
  }
  return v;
}

std::array<TimeFunction, 10> derive_gauge_d(
    const std::array<TimeFunction, 4>& c,
    const std::optional<std::array<TimeFunction, 3>>& linear_d, TimeWindow window) {
  std::array<TimeFunction, 10> d;
  for (std::size_t j = 0; j < 3; ++j) {
    if (c[j].is_constant()) continue;
    check_nonvanishing(c[j], static_cast<int>(j + 1), window);
    d[j] = TimeFunction::constant(-0.5) * TimeFunction::log_derivative(c[j]);
  }
  if (linear_d) {
    for (std::size_t j = 0; j < 3; ++j) d[6 + j] = (*linear_d)[j];
  }

  ScenarioSpec probe;
  probe.c = c;
  probe.d = d;
  probe.time_window = window;
  auto report = check_constraints(probe, uniform_times(window, kConstraintSamples));
  for (const auto& entry : report.entries) {
    if (!(entry.max_abs <= kConstraintTolerance)) {
      std::ostringstream msg;
      msg << "constraint " << entry.name << " residual " << entry.max_abs << " at t = "
          << entry.worst_point.t << " exceeds " << kConstraintTolerance;
      throw ConstraintViolation(msg.str());
    }
  }
  return d;
}

void validate(const ScenarioSpec& spec) {
  if (spec.c[0].is_zero() && spec.c[1].is_zero() && spec.c[2].is_zero()) {
    throw ConstraintViolation("c1, c2 and c3 are all identically zero; tau would be constant");
  }
  if (!(spec.time_window.t_max > spec.time_window.t_min)) {
    throw ConstraintViolation("time window must satisfy t_min < t_max");
  }
  auto report = check_constraints(spec, uniform_times(spec.time_window, kConstraintSamples));
  for (const auto& entry : report.entries) {
    if (!(entry.max_abs <= kConstraintTolerance)) {
      std::ostringstream msg;
      msg << "scenario '" << spec.name << "' violates " << entry.name << " by " << entry.max_abs
          << " at t = " << entry.worst_point.t;
      throw ConstraintViolation(msg.str());
    }
  }
}

TransformBundle make_bundle(const ScenarioSpec& spec) {
  auto pre = std::make_shared<const Precomputed>(spec);
  TransformBundle b;
  b.tau = [pre](double t) { return pre->tau_rate.integral(t); };
  b.zeta = [pre](const Vec3& r, double t) {
    const auto& c = pre->spec.c;
    return c[0](t) * r[0] + c[1](t) * r[1] + c[2](t) * r[2] + c[3](t);
  };
  b.eta = [pre](const Vec3& r, double t) {
    std::array<double, 10> d;
    for (std::size_t j = 0; j < 10; ++j) d[j] = pre->spec.d[j](t);
    return evaluate(d, r);
  };
  b.rho = [pre](double t) { return pre->rho(t); };
  b.potential = [pre](const Vec3& r, double t) {
    return pre->snapshot(t).potential(r, pre->spec.v_convention);
  };
  b.nonlinearity = [pre](double t) {
    double rho = pre->rho(t);
    return pre->spec.G * pre->tau_rate(t) / (rho * rho);
  };
  b.grad_zeta = [pre](double t) {
    const auto& c = pre->spec.c;
    return Vec3{c[0](t), c[1](t), c[2](t)};
  };
  b.grad_eta = [pre](const Vec3& r, double t) { return pre->snapshot(t).grad_eta(r); };
  b.laplacian_eta = [pre](double t) { return 2.0 * pre->divergence(t); };
  b.potential_form = [pre](double t) {
    return pre->snapshot(t).potential_form(pre->spec.v_convention);
  };
  b.snapshot = [pre](double t) { return pre->snapshot(t); };
  b.time_window = spec.time_window;
  return b;
}

double eval_zeta(const ScenarioSpec& spec, const Vec3& r, double t) {
  return spec.c[0](t) * r[0] + spec.c[1](t) * r[1] + spec.c[2](t) * r[2] + spec.c[3](t);
}

double eval_tau(const ScenarioSpec& spec, double t) { return make_bundle(spec).tau(t); }

double eval_eta(const ScenarioSpec& spec, const Vec3& r, double t) {
  return make_bundle(spec).eta(r, t);
}

double eval_rho(const ScenarioSpec& spec, double t) { return make_bundle(spec).rho(t); }

double eval_potential(const ScenarioSpec& spec, const Vec3& r, double t) {
  return make_bundle(spec).potential(r, t);
}

double eval_nonlinearity(const ScenarioSpec& spec, double t) {
  return make_bundle(spec).nonlinearity(t);
}

ResidualReport check_constraints(const ScenarioSpec& spec, std::span<const double> t_samples) {
  const auto& c = spec.c;
  const auto& d = spec.d;
  std::array<TimeFunction, 4> c_dot;
  for (std::size_t j = 0; j < 4; ++j) c_dot[j] = c[j].derivative();

  std::array<ResidualAccumulator, 4> acc{ResidualAccumulator("10a"), ResidualAccumulator("10b"),
                                         ResidualAccumulator("10c"), ResidualAccumulator("10d")};
  for (double t : t_samples) {
    std::array<double, 4> cv;
    std::array<double, 4> cd;
    std::array<double, 10> dv;
    for (std::size_t j = 0; j < 4; ++j) {
      cv[j] = c[j](t);
      cd[j] = c_dot[j](t);
    }
    for (std::size_t j = 0; j < 10; ++j) dv[j] = d[j](t);
    SpaceTimePoint at{{0.0, 0.0, 0.0}, t};
    acc[0].add(cd[0] + 2.0 * cv[0] * dv[0] + cv[1] * dv[3] + cv[2] * dv[4], at);
    acc[1].add(cd[1] + cv[0] * dv[3] + 2.0 * cv[1] * dv[1] + cv[2] * dv[5], at);
    acc[2].add(cd[2] + cv[0] * dv[4] + cv[1] * dv[5] + 2.0 * cv[2] * dv[2], at);
    acc[3].add(cd[3] + cv[0] * dv[6] + cv[1] * dv[7] + cv[2] * dv[8], at);
  }

  ResidualReport report;
  for (const auto& a : acc) report.entries.push_back(a.finish());
  report.sample_count = t_samples.size();
  return report;
}

std::vector<double> uniform_times(TimeWindow window, std::size_t n) {
  std::vector<double> times(n);
  double span = window.t_max - window.t_min;
  for (std::size_t i = 0; i < n; ++i) {
    times[i] = window.t_min + (static_cast<double>(i) + 0.5) * span / static_cast<double>(n);
  }
  return times;
}

QuadraticForm tabulated_omega(const ScenarioSpec& spec, double t) {
  auto s = make_bundle(spec).snapshot(t);
  const auto& d = s.d;
  const auto& dd = s.d_dot;
  return {dd[0] + 4 * d[0] * d[0] + d[3] * d[3] + d[4] * d[4],
          dd[1] + 4 * d[1] * d[1] + d[3] * d[3] + d[5] * d[5],
          dd[2] + 4 * d[2] * d[2] + d[4] * d[4] + d[5] * d[5],
          dd[3] + 4 * d[0] * d[3] + 4 * d[1] * d[3] + 2 * d[4] * d[5],
          dd[4] + 4 * d[0] * d[4] + 4 * d[2] * d[4] + 2 * d[3] * d[5],
          dd[5] + 4 * d[1] * d[5] + 4 * d[2] * d[5] + 2 * d[3] * d[4],
          dd[6],
          dd[7],
          dd[8],
          dd[9]};
}

}  // namespace breather
