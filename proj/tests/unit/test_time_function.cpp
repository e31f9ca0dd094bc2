#include <doctest.h>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "breather/errors.hpp"
#include "breather/time_function.hpp"

using breather::TimeFunction;

namespace {

double central_difference(const TimeFunction& f, double t) {
  const double h = 1e-3;
  return (-f(t + 2 * h) + 8 * f(t + h) - 8 * f(t - h) + f(t - 2 * h)) / (12 * h);
}

double reference_integral(const TimeFunction& f, double t) {
  boost::math::quadrature::tanh_sinh<double> integrator;
  return integrator.integrate([&](double s) { return f(s); }, 0.0, t);
}

// Random expressions built from harmonics with |b| < |a|, so quotients and
// log-derivatives never divide by zero.
TimeFunction random_expression(std::mt19937& rng, int depth) {
  std::uniform_real_distribution<double> amp(0.5, 2.0);
  std::uniform_real_distribution<double> frac(-0.45, 0.45);
  std::uniform_real_distribution<double> freq(0.3, 2.5);
  auto positive_harmonic = [&] {
    const double a = amp(rng);
    return TimeFunction::harmonic(a, frac(rng) * a, freq(rng), frac(rng));
  };
  if (depth == 0) return positive_harmonic();
  switch (std::uniform_int_distribution<int>(0, 5)(rng)) {
    case 0: return random_expression(rng, depth - 1) + random_expression(rng, depth - 1);
    case 1: return random_expression(rng, depth - 1) * random_expression(rng, depth - 1);
    case 2: return random_expression(rng, depth - 1) / positive_harmonic();
    case 3: return TimeFunction::log_derivative(positive_harmonic()) * TimeFunction::constant(amp(rng));
    case 4: return TimeFunction::power(positive_harmonic(), 2);
    default: return -random_expression(rng, depth - 1);
  }
}

}  // namespace

TEST_CASE("harmonic evaluates a + b cos(w t + phase)") {
  const auto f = TimeFunction::harmonic(1.0, 0.5, 2.0, 0.3);
  for (double t : {0.0, 0.7, 3.1}) CHECK(f(t) == doctest::Approx(1.0 + 0.5 * std::cos(2 * t + 0.3)));
  CHECK(TimeFunction::harmonic(2.0, 0.0, 5.0).is_constant());
  CHECK(TimeFunction::harmonic(2.0, 1.0, 0.0).constant_value() == 3.0);
  CHECK(TimeFunction().is_zero());
}

TEST_CASE("constant folding keeps simple expressions simple") {
  const auto c = TimeFunction::constant(3.0);
  CHECK((c * TimeFunction::constant(2.0)).constant_value() == 6.0);
  CHECK((c - c).is_zero());
  const auto h = TimeFunction::harmonic(1.0, 0.5, 1.0);
  CHECK((h * TimeFunction::constant(0.0)).is_zero());
  CHECK((h + TimeFunction::constant(2.0)).kind() == TimeFunction::Kind::harmonic);
  CHECK((h * TimeFunction::constant(2.0)).kind() == TimeFunction::Kind::harmonic);
  CHECK(h.derivative().kind() == TimeFunction::Kind::harmonic);
}

TEST_CASE("derivative matches a finite-difference oracle on random expressions") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    const TimeFunction f = random_expression(rng, 2);
    const TimeFunction df = f.derivative();
    for (double t : {0.0, 0.4, 1.3, 2.9, 5.5}) {
      const double expected = central_difference(f, t);
      CHECK(df(t) == doctest::Approx(expected).epsilon(1e-7).scale(1.0));
    }
  }
}

TEST_CASE("integral matches tanh-sinh quadrature on random expressions") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    const TimeFunction f = random_expression(rng, 2);
    for (double t : {0.5, 2.0, 4.0 * std::numbers::pi}) {
      CHECK(f.integral(t) == doctest::Approx(reference_integral(f, t)).epsilon(1e-9).scale(1.0));
    }
  }
}

TEST_CASE("integral of a harmonic product is an exact trig series") {
  const auto c = TimeFunction::harmonic(1.0, 0.5, 1.0);
  const auto sq = c * c;
  REQUIRE(sq.trig_series().has_value());
  const double t = std::numbers::pi;
  CHECK(sq.integral(t) == doctest::Approx(1.125 * std::numbers::pi).epsilon(1e-14));
}

TEST_CASE("log-derivative integrates to ln|f|") {
  const auto f = TimeFunction::harmonic(1.0, 0.5, 1.0);
  const auto ld = TimeFunction::log_derivative(f);
  for (double t : {0.0, 1.0, 2.5}) {
    CHECK(ld.antiderivative(t) == doctest::Approx(std::log(f(t))).epsilon(1e-14));
    CHECK(ld.integral(t) == doctest::Approx(std::log(f(t) / f(0.0))).epsilon(1e-14).scale(1.0));
  }
  CHECK(TimeFunction::log_derivative(TimeFunction::constant(4.0)).is_zero());
  CHECK_THROWS_AS(TimeFunction::log_derivative(TimeFunction()), std::domain_error);
}

TEST_CASE("division by the zero function is rejected") {
  CHECK_THROWS_AS(TimeFunction::constant(1.0) / TimeFunction(), std::domain_error);
}

TEST_CASE("power has the chain-rule derivative") {
  const auto f = TimeFunction::harmonic(2.0, 0.5, 1.5);
  const auto p = TimeFunction::power(f, 3);
  for (double t : {0.2, 1.7}) {
    CHECK(p(t) == doctest::Approx(std::pow(f(t), 3)));
    CHECK(p.derivative()(t) == doctest::Approx(3 * f(t) * f(t) * f.derivative()(t)));
  }
}
