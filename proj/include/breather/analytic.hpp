#pragma once

#include <complex>
#include <string>
#include <string_view>
#include <vector>

#include "breather/transform.hpp"

namespace breather {

using Complex = std::complex<double>;
using ComplexExt = std::complex<long double>;
using Vec3Ext = std::array<long double, 3>;

/// 1D profile Phi(zeta, tau) solving i Phi_tau = -Phi_zz / 2 - |Phi|^2 Phi.
enum class Profile { satsuma_yajima_two_soliton, single_soliton };

/// Two-soliton bound state evolving from 2 sech(zeta):
///
///   4 (cosh 3z + 3 e^{4 i tau} cosh z) e^{i tau / 2}
///   ------------------------------------------------
///       cosh 4z + 4 cosh 2z + 3 cos 4 tau
///
/// Evaluated with the e^{4|z|} growth cancelled, so it stays finite for any z.
Complex satsuma_yajima(double zeta, double tau);
ComplexExt satsuma_yajima(long double zeta, long double tau);

/// sech(zeta) e^{i tau / 2}.
Complex single_soliton(double zeta, double tau);
ComplexExt single_soliton(long double zeta, long double tau);

Complex evaluate_profile(Profile profile, double zeta, double tau);
ComplexExt evaluate_profile(Profile profile, long double zeta, long double tau);

/// psi(r, t) = rho(t) e^{i eta(r, t)} Phi(zeta(r, t), tau(t)) for one scenario.
class BreatherField {
 public:
  explicit BreatherField(ScenarioSpec spec,
                         Profile profile = Profile::satsuma_yajima_two_soliton);

  const ScenarioSpec& spec() const { return spec_; }
  const TransformBundle& bundle() const { return bundle_; }
  Profile profile() const { return profile_; }

  Complex operator()(const Vec3& r, double t) const;
  /// Evaluation with the time-only ingredients already frozen.
  Complex evaluate(const TransformSnapshot& snapshot, const Vec3& r) const;
  /// Same, with the spatial dependence carried in extended precision.
  ComplexExt evaluate(const TransformSnapshot& snapshot, const Vec3Ext& r) const;

 private:
  ScenarioSpec spec_;
  TransformBundle bundle_;
  Profile profile_;
};

Complex assemble_psi(const BreatherField& field, const Vec3& r, double t);

enum class Preset { free, harmonic_i, harmonic_ii, linear };

/// Fully populated scenario: G = -1, diagonal gauge, canonical potential,
/// raw-antiderivative rho, time window [0, 4 pi].
ScenarioSpec scenario_preset(Preset preset);
/// Throws UnknownPreset.
ScenarioSpec scenario_preset(std::string_view name);

/// Free evolution with constant c1, c2, c3 and c4 = 0. The printed closed
/// form with arguments (x + y + z) and 12 t corresponds to c1 = c2 = c3 = 1.
ScenarioSpec free_preset(double c1, double c2, double c3);

std::string_view preset_name(Preset preset);
std::vector<std::string> preset_names();

}  // namespace breather
