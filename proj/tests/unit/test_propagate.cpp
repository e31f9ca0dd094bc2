#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "breather/analytic.hpp"
#include "breather/errors.hpp"
#include "breather/grid.hpp"
#include "breather/propagate.hpp"

using namespace breather;
using std::numbers::pi;

namespace {

GridGeometry breather_line() { return GridGeometry::line({-20.0, 20.0}, 1024); }

double linf(const ComplexGrid& a, const ComplexGrid& b) {
  double worst = 0.0;
  for (std::size_t n = 0; n < a.samples.size(); ++n) {
    worst = std::max(worst, std::abs(a.samples[n] - b.samples[n]));
  }
  return worst;
}

ComplexGrid soliton(const GridGeometry& g, double tau) {
  return sample_profile(Profile::single_soliton, g, tau);
}

}  // namespace

TEST_CASE("grid geometry") {
  const auto g = GridGeometry::cube({-10.0, 10.0}, 64);
  CHECK(g.size() == 64 * 64 * 64);
  CHECK(g.spacing(1) == doctest::Approx(20.0 / 64));
  CHECK(g.coordinate(0, 0) == -10.0);
  CHECK(g.coordinate(0, 32) == 0.0);
  const Vec3 node = g.node(g.index(1, 2, 3));
  CHECK(node[0] == g.coordinate(0, 1));
  CHECK(node[1] == g.coordinate(1, 2));
  CHECK(node[2] == g.coordinate(2, 3));
  CHECK_THROWS_AS(GridGeometry::line({-1.0, 1.0}, 100), std::invalid_argument);
  CHECK_THROWS_AS(GridGeometry::line({1.0, -1.0}, 64), std::invalid_argument);
  CHECK(GridGeometry::line({-1.0, 1.0}, 8).points(1) == 1);
}

TEST_CASE("sampled initial data") {
  const auto line = sample_profile(Profile::satsuma_yajima_two_soliton, breather_line(), 0.0);
  CHECK(line.samples[512].real() == doctest::Approx(2.0).epsilon(1e-15));
  const auto cube = GridGeometry::cube({-10.0, 10.0}, 64);
  const auto psi = sample_field(BreatherField(scenario_preset(Preset::free)), cube, 0.0);
  CHECK(psi.max_intensity() == doctest::Approx(4.0).epsilon(1e-12));
  const auto zero = sample_field([](const Vec3&) { return Complex{}; }, cube);
  CHECK(zero.norm() == 0.0);
}

TEST_CASE("plane waves only acquire the kinetic phase") {
  const auto g = GridGeometry::line({0.0, 2 * pi}, 128);
  const double k = 5.0;
  const double dt = 0.01;
  const auto psi = sample_field([&](const Vec3& r) { return std::polar(1.0, k * r[0]); }, g);
  const auto out = step_strang(psi, 0.0, dt, Potential::zero(), [](double) { return 0.0; });
  double worst = 0.0;
  for (std::size_t n = 0; n < psi.samples.size(); ++n) {
    worst = std::max(worst, std::abs(out.samples[n] - std::polar(1.0, -0.5 * k * k * dt) * psi.samples[n]));
  }
  CHECK(worst <= 1e-13);
}

TEST_CASE("one soliton step has third-order local error") {
  const auto g = breather_line();
  const double dt = 1e-3;
  const auto out = step_strang(soliton(g, 0.0), 0.0, dt, Potential::zero(), [](double) { return -1.0; });
  CHECK(linf(out, soliton(g, dt)) <= 1e-7);
}

TEST_CASE("steps are unitary and reversible") {
  const auto g = GridGeometry::cube({-6.0, 6.0}, 16);
  std::mt19937 rng(1);
  std::normal_distribution<double> noise;
  ComplexGrid psi(g);
  for (auto& s : psi.samples) s = {noise(rng), noise(rng)};
  const Potential v = Potential::pointwise([](const Vec3& r, double t) { return r[0] * r[1] * std::cos(t); });
  const CouplingFn coupling = [](double t) { return -1.0 + 0.3 * std::sin(t); };
  StrangStepper stepper(g);
  ComplexGrid evolved = psi;
  stepper.step(evolved, 0.2, 0.01, v, coupling);
  CHECK(evolved.norm() == doctest::Approx(psi.norm()).epsilon(1e-12));
  stepper.step(evolved, 0.21, -0.01, v, coupling);
  CHECK(linf(evolved, psi) <= 1e-9);
}

TEST_CASE("norm drift stays below 1e-10 over 10^4 steps") {
  const auto g = GridGeometry::line({-20.0, 20.0}, 256);
  EvolutionConfig config = reduced_equation_config(-1.0, 1e-3, 10000);
  config.potential = Potential::pointwise([](const Vec3& r, double t) { return 0.1 * r[0] * r[0] * std::cos(t); });
  config.record_every = 1000;
  const auto trajectory = evolve(config, sample_profile(Profile::satsuma_yajima_two_soliton, g, 0.0));
  CHECK(trajectory.norm_drift() <= 1e-10);
  CHECK(trajectory.diagnostics.size() == 11);
}

TEST_CASE("zero data stays zero") {
  const auto g = GridGeometry::cube({-4.0, 4.0}, 8);
  EvolutionConfig config = reduced_equation_config(-1.0, 1e-2, 20);
  config.potential = Potential::pointwise([](const Vec3& r, double) { return dot(r, r); });
  const auto trajectory = evolve(config, ComplexGrid(g));
  for (const auto& d : trajectory.diagnostics) CHECK(d.norm == 0.0);
  CHECK(trajectory.norm_drift() == 0.0);
}

TEST_CASE("soliton is resolved at 256 points") {
  // Tail intensity sech^2(25) is far below 1e-14 while 256 nodes still resolve the spectrum.
  const auto run = [](std::size_t n) {
    const auto g = GridGeometry::line({-25.0, 25.0}, n);
    EvolutionConfig config = reduced_equation_config(-1.0, 1e-3, 500);
    config.keep_frames = false;
    return evolve(config, soliton(g, 0.0)).final_state;
  };
  const auto coarse = run(256);
  const auto fine = run(512);
  double worst = 0.0;
  for (std::size_t i = 0; i < 256; ++i) {
    worst = std::max(worst, std::abs(coarse.samples[i] - fine.samples[2 * i]));
  }
  CHECK(worst <= 1e-10);
}

TEST_CASE("breather evolution reaches the analytic peak") {
  const auto g = breather_line();
  EvolutionConfig config = reduced_equation_config(-1.0, 2e-4, 7854);
  config.keep_frames = false;
  config.record_every = 10;
  config.reference = [g](double tau) { return sample_profile(Profile::satsuma_yajima_two_soliton, g, tau); };
  double peak = 0.0;
  double peak_tau = 0.0;
  config.observer = [&](std::size_t, double tau, const ComplexGrid& psi) {
    const double value = std::norm(psi.samples[512]);
    if (value > peak) {
      peak = value;
      peak_tau = tau;
    }
  };
  const auto trajectory = evolve(config, sample_profile(Profile::satsuma_yajima_two_soliton, g, 0.0));
  CHECK(peak == doctest::Approx(16.0).epsilon(0.01));
  CHECK(std::abs(peak_tau - pi / 4) <= 0.01);
  double worst = 0.0;
  for (const auto& d : trajectory.diagnostics) worst = std::max(worst, d.error->linf);
  CHECK(worst <= 1e-3);
  CHECK(trajectory.norm_drift() <= 1e-10);
}

TEST_CASE("breather error is second order in dt") {
  const auto g = breather_line();
  const auto exact = sample_profile(Profile::satsuma_yajima_two_soliton, g, pi / 4);
  std::vector<double> errors;
  for (double dt : {4e-4, 2e-4, 1e-4}) {
    EvolutionConfig config = reduced_equation_config(-1.0, dt, static_cast<std::size_t>(std::llround(pi / 4 / dt)));
    config.dt = (pi / 4) / static_cast<double>(config.n_steps);
    config.keep_frames = false;
    errors.push_back(linf(evolve(config, sample_profile(Profile::satsuma_yajima_two_soliton, g, 0.0)).final_state, exact));
  }
  CHECK(errors[0] / errors[1] == doctest::Approx(4.0).epsilon(0.2));
  CHECK(errors[1] / errors[2] == doctest::Approx(4.0).epsilon(0.2));
}

TEST_CASE("evolution validates its configuration") {
  const auto g = GridGeometry::line({-5.0, 5.0}, 32);
  EvolutionConfig config = reduced_equation_config(-1.0, 0.0, 5);
  CHECK_THROWS_AS(evolve(config, ComplexGrid(g)), std::invalid_argument);
  config.dt = 0.1;
  config.time_window = TimeWindow{0.0, 0.3};
  CHECK_THROWS_AS(evolve(config, ComplexGrid(g)), std::invalid_argument);
  config.time_window.reset();
  config.comparison_region = Region::cube({-6.0, 1.0});
  CHECK_THROWS_AS(evolve(config, ComplexGrid(g)), std::invalid_argument);
  StrangStepper stepper(g);
  ComplexGrid other(GridGeometry::line({-5.0, 5.0}, 64));
  CHECK_THROWS_AS(stepper.step(other, 0.0, 0.1, Potential::zero(), config.nonlinearity), GeometryMismatch);
}

TEST_CASE("non-finite fields stop the evolution") {
  const auto g = GridGeometry::line({-5.0, 5.0}, 32);
  EvolutionConfig config = reduced_equation_config(-1.0, 0.1, 10);
  config.potential = Potential::pointwise([](const Vec3&, double t) { return t > 0.5 ? std::nan("") : 0.0; });
  ComplexGrid psi(g);
  std::fill(psi.samples.begin(), psi.samples.end(), Complex(1.0, 0.0));
  try {
    evolve(config, psi);
    FAIL("expected NonFiniteDetected");
  } catch (const NonFiniteDetected& e) {
    CHECK(e.step() == 6);
  }
}

TEST_CASE("field comparison") {
  const auto g = GridGeometry::line({-10.0, 10.0}, 64);
  const auto a = sample_profile(Profile::satsuma_yajima_two_soliton, g, 0.7);
  const auto same = compare_fields(a, a);
  CHECK(same.l2_rel == 0.0);
  CHECK(same.linf == 0.0);
  CHECK(same.phase_aligned_l2 == 0.0);
  ComplexGrid b = a;
  for (auto& s : b.samples) s *= std::polar(1.0, pi / 7);
  const auto rotated = compare_fields(a, b);
  CHECK(rotated.l2_rel > 0.1);
  CHECK(rotated.phase_aligned_l2 <= 1e-14);
  CHECK_THROWS_AS(compare_fields(a, ComplexGrid(GridGeometry::line({-10.0, 10.0}, 32))), GeometryMismatch);
  ComplexGrid shifted = a;
  shifted.samples[0] += 1.0;
  CHECK(compare_fields(a, shifted, Region::cube({-5.0, 5.0})).linf == 0.0);
}

TEST_CASE("3D free breather stays close to the analytic sheet") {
  const BreatherField field(scenario_preset(Preset::free));
  const auto g = GridGeometry::cube({-10.0, 10.0}, 32);
  EvolutionConfig config = scenario_config(field, g, 0.0, 2e-3, 50);
  config.comparison_region = Region::cube({-5.0, 5.0});
  config.record_every = 25;
  const auto trajectory = evolve(config, sample_field(field, g, 0.0));
  REQUIRE(trajectory.diagnostics.size() == 3);
  CHECK(trajectory.diagnostics.back().error->l2_rel <= 5e-2);
  CHECK(trajectory.norm_drift() <= 1e-10);
}
