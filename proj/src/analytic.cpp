#include "breather/analytic.hpp"

#include <cmath>
#include <numbers>

#include "breather/errors.hpp"

namespace breather {

namespace {

template <typename Real>
std::complex<Real> satsuma_yajima_impl(Real zeta, Real tau) {
  // Numerator and denominator multiplied by 2 e^{-4|zeta|}.
  using std::abs, std::cos, std::exp;
  const Real a = abs(zeta);
  const Real e1 = exp(-a);
  const Real e2 = e1 * e1;
  const Real e4 = e2 * e2;
  const Real e6 = e4 * e2;
  const Real e8 = e4 * e4;
  const std::complex<Real> breathing = std::polar(Real(3), Real(4) * tau);
  const std::complex<Real> numerator = Real(4) *
                                       (e1 * (Real(1) + e6) + breathing * (e1 * e2) * (Real(1) + e2)) *
                                       std::polar(Real(1), tau / Real(2));
  const Real denominator =
      Real(1) + e8 + Real(4) * e2 * (Real(1) + e4) + Real(6) * cos(Real(4) * tau) * e4;
  return numerator / denominator;
}

template <typename Real>
std::complex<Real> single_soliton_impl(Real zeta, Real tau) {
  const Real e1 = std::exp(-std::abs(zeta));
  return std::polar(Real(2) * e1 / (Real(1) + e1 * e1), tau / Real(2));
}

template <typename Real>
std::complex<Real> profile_impl(Profile profile, Real zeta, Real tau) {
  switch (profile) {
    case Profile::satsuma_yajima_two_soliton:
      return satsuma_yajima_impl(zeta, tau);
    case Profile::single_soliton:
      return single_soliton_impl(zeta, tau);
  }
  return {};
}

}  // namespace

Complex satsuma_yajima(double zeta, double tau) { return satsuma_yajima_impl(zeta, tau); }
ComplexExt satsuma_yajima(long double zeta, long double tau) {
  return satsuma_yajima_impl(zeta, tau);
}

Complex single_soliton(double zeta, double tau) { return single_soliton_impl(zeta, tau); }
ComplexExt single_soliton(long double zeta, long double tau) {
  return single_soliton_impl(zeta, tau);
}

Complex evaluate_profile(Profile profile, double zeta, double tau) {
  return profile_impl(profile, zeta, tau);
}
ComplexExt evaluate_profile(Profile profile, long double zeta, long double tau) {
  return profile_impl(profile, zeta, tau);
}

BreatherField::BreatherField(ScenarioSpec spec, Profile profile)
    : spec_(std::move(spec)), bundle_(make_bundle(spec_)), profile_(profile) {}

Complex BreatherField::operator()(const Vec3& r, double t) const {
  return evaluate(bundle_.snapshot(t), r);
}

Complex BreatherField::evaluate(const TransformSnapshot& s, const Vec3& r) const {
  return s.rho * std::polar(1.0, s.eta(r)) * evaluate_profile(profile_, s.zeta(r), s.tau);
}

ComplexExt BreatherField::evaluate(const TransformSnapshot& s, const Vec3Ext& r) const {
  using L = long double;
  const auto& c = s.c;
  const auto& d = s.d;
  const auto [x, y, z] = r;
  const L zeta = L(c[0]) * x + L(c[1]) * y + L(c[2]) * z + L(c[3]);
  const L eta = L(d[0]) * x * x + L(d[1]) * y * y + L(d[2]) * z * z + L(d[3]) * x * y +
                L(d[4]) * x * z + L(d[5]) * y * z + L(d[6]) * x + L(d[7]) * y + L(d[8]) * z +
                L(d[9]);
  return L(s.rho) * std::polar(L(1), eta) * evaluate_profile(profile_, zeta, L(s.tau));
}

Complex assemble_psi(const BreatherField& field, const Vec3& r, double t) { return field(r, t); }

namespace {

constexpr TimeWindow kPresetWindow{0.0, 4.0 * std::numbers::pi};

ScenarioSpec diagonal_gauge_spec(std::string name, std::array<TimeFunction, 4> c,
                                 std::optional<std::array<TimeFunction, 3>> linear_d = {}) {
  ScenarioSpec spec;
  spec.name = std::move(name);
  spec.c = c;
  spec.time_window = kPresetWindow;
  spec.d = derive_gauge_d(c, linear_d, spec.time_window);
  validate(spec);
  return spec;
}

}  // namespace

ScenarioSpec free_preset(double c1, double c2, double c3) {
  using TF = TimeFunction;
  return diagonal_gauge_spec("free", {TF::constant(c1), TF::constant(c2), TF::constant(c3),
                                      TF::constant(0.0)});
}

ScenarioSpec scenario_preset(Preset preset) {
  using TF = TimeFunction;
  const double inv_sqrt3 = 1.0 / std::numbers::sqrt3;
  const TF k = TF::constant(inv_sqrt3);
  const TF breathing = TF::harmonic(1.0, 0.5, 1.0);  // 1 + 0.5 cos t
  switch (preset) {
    case Preset::free:
      return free_preset(inv_sqrt3, inv_sqrt3, inv_sqrt3);
    case Preset::harmonic_i:
      return diagonal_gauge_spec("harmonic_i", {breathing, k, k, TF::constant(0.0)});
    case Preset::harmonic_ii:
      return diagonal_gauge_spec("harmonic_ii",
                                 {breathing, breathing, breathing, TF::constant(0.0)});
    case Preset::linear: {
      const TF c4 = TF::harmonic(0.0, 1.0, 1.0, -std::numbers::pi / 2.0);  // sin t
      const TF c4_dot = c4.derivative();
      std::array<TF, 3> linear_d;
      for (auto& dj : linear_d) dj = -c4_dot / (TF::constant(3.0) * k);
      return diagonal_gauge_spec("linear", {k, k, k, c4}, linear_d);
    }
  }
  throw UnknownPreset("unknown preset");
}

ScenarioSpec scenario_preset(std::string_view name) {
  for (Preset p : {Preset::free, Preset::harmonic_i, Preset::harmonic_ii, Preset::linear}) {
    if (preset_name(p) == name) return scenario_preset(p);
  }
  throw UnknownPreset("unknown preset '" + std::string(name) +
                      "' (expected free, harmonic_i, harmonic_ii or linear)");
}

std::string_view preset_name(Preset preset) {
  switch (preset) {
    case Preset::free:
      return "free";
    case Preset::harmonic_i:
      return "harmonic_i";
    case Preset::harmonic_ii:
      return "harmonic_ii";
    case Preset::linear:
      return "linear";
  }
  return "";
}

std::vector<std::string> preset_names() {
  return {"free", "harmonic_i", "harmonic_ii", "linear"};
}

}  // namespace breather
