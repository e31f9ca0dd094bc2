#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "breather/analytic.hpp"
#include "breather/errors.hpp"
#include "breather/transform.hpp"
#include "breather/verify.hpp"

using namespace breather;
using std::numbers::pi;

namespace {

const double kInvSqrt3 = 1.0 / std::sqrt(3.0);

double damped(double t) { return 1.0 + 0.5 * std::cos(t); }

std::vector<double> sample_times(double a, double b, std::size_t n) {
  std::vector<double> ts(n);
  for (std::size_t i = 0; i < n; ++i) ts[i] = a + (b - a) * (static_cast<double>(i) + 0.5) / n;
  return ts;
}

}  // namespace

TEST_CASE("free coefficients give a trivial gauge") {
  const TimeFunction c = TimeFunction::constant(kInvSqrt3);
  const auto d = derive_gauge_d({c, c, c, TimeFunction()}, std::nullopt, {0.0, 2 * pi});
  for (const auto& dj : d) CHECK(dj.is_zero());
}

TEST_CASE("harmonic c1 gives d1 = sin t / (4 (1 + 0.5 cos t))") {
  const ScenarioSpec spec = scenario_preset(Preset::harmonic_i);
  for (double t : sample_times(0.0, 4 * pi, 50)) {
    CHECK(spec.d[0](t) == doctest::Approx(0.25 * std::sin(t) / damped(t)).epsilon(1e-13).scale(1.0));
    for (std::size_t j = 1; j < 10; ++j) CHECK(spec.d[j](t) == 0.0);
  }
}

TEST_CASE("linear coefficients satisfy the c4 constraint") {
  const TimeFunction c = TimeFunction::constant(kInvSqrt3);
  const TimeFunction c4 = TimeFunction::harmonic(0.0, 1.0, 1.0, -pi / 2);
  const TimeFunction dl = TimeFunction::harmonic(0.0, -kInvSqrt3, 1.0);
  const auto d = derive_gauge_d({c, c, c, c4}, std::array{dl, dl, dl}, {0.0, 2 * pi});
  CHECK(d[6](0.3) == doctest::Approx(-std::cos(0.3) * kInvSqrt3));
  ScenarioSpec spec = scenario_preset(Preset::linear);
  const auto report = check_constraints(spec, sample_times(0.0, 2 * pi, 200));
  CHECK(report.max_abs() <= 1e-12);
}

TEST_CASE("gauge rejects a vanishing non-constant coefficient") {
  const TimeFunction crossing = TimeFunction::harmonic(0.2, 1.0, 1.0);
  const TimeFunction c = TimeFunction::constant(1.0);
  CHECK_THROWS_AS(derive_gauge_d({crossing, c, c, TimeFunction()}, std::nullopt, {0.0, 2 * pi}),
                  DivisionByZeroGauge);
}

TEST_CASE("gauge rejects d7..d9 inconsistent with c4") {
  const TimeFunction c = TimeFunction::constant(kInvSqrt3);
  const TimeFunction c4 = TimeFunction::harmonic(0.0, 1.0, 1.0, -pi / 2);
  const TimeFunction wrong = TimeFunction::harmonic(0.0, 1.0, 1.0);
  CHECK_THROWS_AS(derive_gauge_d({c, c, c, c4}, std::array{wrong, wrong, wrong}, {0.0, 2 * pi}),
                  ConstraintViolation);
}

TEST_CASE("gauge identity holds for random harmonic coefficient sets") {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> amp(0.3, 2.0);
  std::uniform_real_distribution<double> ratio(-0.9, 0.9);
  std::uniform_real_distribution<double> freq(0.1, 3.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::array<TimeFunction, 4> c;
    for (std::size_t j = 0; j < 3; ++j) {
      const double a = amp(rng) * (rng() % 2 ? 1.0 : -1.0);
      c[j] = TimeFunction::harmonic(a, ratio(rng) * a, freq(rng), ratio(rng));
    }
    ScenarioSpec spec;
    spec.c = c;
    spec.time_window = {0.0, 4 * pi};
    spec.d = derive_gauge_d(c, std::nullopt, spec.time_window);
    CHECK(check_constraints(spec, uniform_times(spec.time_window, 200)).max_abs() <= 1e-9);
  }
}

TEST_CASE("tau is strictly increasing") {
  for (const auto& name : preset_names()) {
    const ScenarioSpec spec = scenario_preset(name);
    const auto ts = sample_times(0.0, 4 * pi, 400);
    for (std::size_t i = 1; i < ts.size(); ++i) {
      CHECK(eval_tau(spec, ts[i]) > eval_tau(spec, ts[i - 1]));
    }
  }
}

TEST_CASE("zeta examples") {
  const auto free = scenario_preset(Preset::free);
  CHECK(eval_zeta(free, {0, 0, 0}, 1.3) == 0.0);
  CHECK(eval_zeta(free, {1, 1, 1}, 0.4) == doctest::Approx(std::sqrt(3.0)).epsilon(1e-15));
  CHECK(eval_zeta(scenario_preset(Preset::linear), {0, 0, 0}, pi / 2) ==
        doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("tau closed forms") {
  const auto free = scenario_preset(Preset::free);
  const auto h1 = scenario_preset(Preset::harmonic_i);
  const auto h2 = scenario_preset(Preset::harmonic_ii);
  for (double t : sample_times(0.0, 4 * pi, 100)) {
    CHECK(eval_tau(free, t) == doctest::Approx(t).epsilon(1e-14));
    const double tau1 = 43.0 / 24.0 * t + std::sin(t) + std::cos(t) * std::sin(t) / 8.0;
    CHECK(std::abs(eval_tau(h1, t) - tau1) <= 1e-9);
    const double tau2 = 3.375 * t + 3 * std::sin(t) + 0.375 * std::cos(t) * std::sin(t);
    CHECK(std::abs(eval_tau(h2, t) - tau2) <= 1e-9);
  }
  CHECK(eval_tau(h1, pi) == doctest::Approx(43.0 / 24.0 * pi).epsilon(1e-13));
}

TEST_CASE("eta examples") {
  CHECK(eval_eta(scenario_preset(Preset::free), {1.0, -2.0, 0.5}, 2.0) == 0.0);
  CHECK(eval_eta(scenario_preset(Preset::harmonic_i), {1, 0, 0}, pi / 2) ==
        doctest::Approx(0.25).epsilon(1e-14));
  CHECK(eval_eta(scenario_preset(Preset::linear), {1, 1, 1}, 0.0) ==
        doctest::Approx(-std::sqrt(3.0)).epsilon(1e-14));
}

TEST_CASE("rho examples") {
  CHECK(eval_rho(scenario_preset(Preset::free), 1.7) == 1.0);
  const auto h1 = scenario_preset(Preset::harmonic_i);
  const auto h2 = scenario_preset(Preset::harmonic_ii);
  CHECK(eval_rho(h1, 0.0) == doctest::Approx(std::sqrt(1.5)).epsilon(1e-14));
  CHECK(eval_rho(h2, 0.0) == doctest::Approx(std::pow(1.5, 1.5)).epsilon(1e-14));
  for (double t : sample_times(0.0, 4 * pi, 100)) {
    CHECK(std::abs(eval_rho(h1, t) - std::sqrt(damped(t))) <= 1e-9);
    CHECK(std::abs(eval_rho(h2, t) - std::pow(damped(t), 1.5)) <= 1e-9);
  }
  ScenarioSpec normalized = h1;
  normalized.rho_convention = RhoConvention::normalized_at_zero;
  CHECK(eval_rho(normalized, 0.0) == doctest::Approx(1.0));
  CHECK(eval_rho(normalized, 1.0) == doctest::Approx(eval_rho(h1, 1.0) / std::sqrt(1.5)));
}

TEST_CASE("potential examples") {
  const auto free = scenario_preset(Preset::free);
  CHECK(eval_potential(free, {1, 2, 3}, 0.7) == 0.0);
  ScenarioSpec h1 = scenario_preset(Preset::harmonic_i);
  CHECK(eval_potential(h1, {1, 0, 0}, pi / 2) == doctest::Approx(-0.25).epsilon(1e-14));
  h1.v_convention = VConvention::paper;
  CHECK(eval_potential(h1, {1, 0, 0}, pi / 2) == doctest::Approx(-0.375).epsilon(1e-14));
  for (double t : sample_times(0.0, 4 * pi, 100)) {
    const double x = 0.8;
    const double printed = -std::cos(t) * x * x / (4 * damped(t)) -
                           0.375 * std::pow(std::sin(t), 2) * x * x / std::pow(damped(t), 2);
    CHECK(std::abs(eval_potential(h1, {x, 0.3, -0.2}, t) - printed) <= 1e-9);
  }
}

TEST_CASE("linear potential is linear in x+y+z with slope -sin t / sqrt 3") {
  const auto spec = scenario_preset(Preset::linear);
  for (double t : {0.3, 1.1, 2.0}) {
    const double v0 = eval_potential(spec, {0, 0, 0}, t);
    const double v1 = eval_potential(spec, {0.5, 0.2, 0.3}, t);
    const double v2 = eval_potential(spec, {1.0, 0.0, 0.0}, t);
    CHECK(v1 - v0 == doctest::Approx(-std::sin(t) * kInvSqrt3).epsilon(1e-12));
    CHECK(v2 == doctest::Approx(v1).epsilon(1e-12));
  }
}

TEST_CASE("nonlinearity examples") {
  CHECK(eval_nonlinearity(scenario_preset(Preset::free), 2.2) == doctest::Approx(-1.0));
  CHECK(eval_nonlinearity(scenario_preset(Preset::linear), 0.9) == doctest::Approx(-1.0));
  const auto h2 = scenario_preset(Preset::harmonic_ii);
  CHECK(eval_nonlinearity(h2, 0.0) == doctest::Approx(-2.0).epsilon(1e-14));
  for (double t : sample_times(0.0, 4 * pi, 100)) {
    CHECK(std::abs(eval_nonlinearity(h2, t) + 3.0 / damped(t)) <= 1e-9);
  }
}

TEST_CASE("potential_form reproduces the pointwise potential") {
  for (const auto& name : preset_names()) {
    for (auto conv : {VConvention::canonical, VConvention::paper}) {
      ScenarioSpec spec = scenario_preset(name);
      spec.v_convention = conv;
      const auto bundle = make_bundle(spec);
      for (double t : {0.2, 1.9, 4.0}) {
        const auto form = bundle.potential_form(t);
        for (Vec3 r : {Vec3{0.1, -0.7, 1.2}, Vec3{2.0, 0.5, -1.5}}) {
          CHECK(evaluate(form, r) == doctest::Approx(bundle.potential(r, t)).epsilon(1e-13).scale(1.0));
        }
      }
    }
  }
}

TEST_CASE("tabulated omega has the opposite sign to the worked harmonic potential") {
  const auto h1 = scenario_preset(Preset::harmonic_i);
  const double t = 1.0;
  const double d1 = h1.d[0](t);
  const double d1_dot = h1.d[0].derivative()(t);
  const auto omega = tabulated_omega(h1, t);
  CHECK(omega[0] == doctest::Approx(d1_dot + 4 * d1 * d1));
  for (std::size_t j = 1; j < 10; ++j) CHECK(omega[j] == 0.0);
}

TEST_CASE("constraint report on a corrupted d1") {
  ScenarioSpec spec = scenario_preset(Preset::free);
  spec.d[0] = spec.d[0] + TimeFunction::constant(0.01);
  const auto report = check_constraints(spec, sample_times(0.0, 2 * pi, 200));
  CHECK(report.entry("10a").max_abs == doctest::Approx(0.02 * kInvSqrt3).epsilon(1e-12));
  CHECK(report.entry("10b").max_abs == 0.0);
  CHECK_THROWS_AS(validate(spec), ConstraintViolation);
}

TEST_CASE("free preset constraints vanish") {
  const auto report = check_constraints(scenario_preset(Preset::free), sample_times(0.0, 2 * pi, 200));
  REQUIRE(report.entries.size() == 4);
  CHECK(report.max_abs() <= 1e-12);
}

TEST_CASE("validate rejects degenerate scenarios") {
  ScenarioSpec spec = scenario_preset(Preset::free);
  spec.c[0] = spec.c[1] = spec.c[2] = TimeFunction();
  CHECK_THROWS_AS(validate(spec), ConstraintViolation);
  spec = scenario_preset(Preset::free);
  spec.time_window = {1.0, 1.0};
  CHECK_THROWS_AS(validate(spec), ConstraintViolation);
}

TEST_CASE("scaling c by s scales tau by s squared") {
  for (double s : {0.5, 2.0, 3.0}) {
    const auto base = free_preset(0.3, 0.4, 0.5);
    const auto scaled = free_preset(0.3 * s, 0.4 * s, 0.5 * s);
    for (double t : {0.5, 2.5}) {
      CHECK(eval_tau(scaled, t) == doctest::Approx(s * s * eval_tau(base, t)).epsilon(1e-13));
      CHECK(eval_nonlinearity(scaled, t) == doctest::Approx(s * s * eval_nonlinearity(base, t)));
      CHECK(eval_zeta(scaled, {1, 2, 3}, t) == doctest::Approx(s * eval_zeta(base, {1, 2, 3}, t)));
    }
  }
}

TEST_CASE("reduction identities hold for every preset") {
  const auto points = low_discrepancy_points(SampleBox{}, 100, 5);
  for (const auto& name : preset_names()) {
    const auto report = reduction_residual(scenario_preset(name), points);
    REQUIRE(report.entries.size() == 3);
    CHECK(report.max_abs() <= 1e-8);
  }
}
