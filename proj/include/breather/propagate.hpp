#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "breather/grid.hpp"
#include "breather/transform.hpp"

namespace breather {

/// External potential v(r, t) as seen by the propagator.
///
/// Either a pointwise callable or a quadratic form refreshed once per time;
/// the latter avoids one expression-tree evaluation per node.
class Potential {
 public:
  static Potential zero();
  static Potential pointwise(std::function<double(const Vec3&, double)> v);
  static Potential quadratic(std::function<QuadraticForm(double)> form);

  /// Writes v(node, t) for every node of `geometry` into `out`.
  void fill(const GridGeometry& geometry, double t, std::span<double> out) const;
  bool is_zero() const { return !pointwise_ && !quadratic_; }

 private:
  std::function<double(const Vec3&, double)> pointwise_;
  std::function<QuadraticForm(double)> quadratic_;
};

using CouplingFn = std::function<double(double)>;

/// Symmetric (Strang) split-step Fourier integrator for
///   i psi_t = -lap(psi)/2 + v psi + g |psi|^2 psi
/// on a periodic grid. Owns its FFT plans; one instance per thread.
class StrangStepper {
 public:
  explicit StrangStepper(const GridGeometry& geometry);
  ~StrangStepper();
  StrangStepper(const StrangStepper&) = delete;
  StrangStepper& operator=(const StrangStepper&) = delete;

  /// Advances `grid` in place from t to t + dt (dt may be negative): half a
  /// local phase step, a full kinetic step e^{-i |k|^2 dt / 2} in Fourier
  /// space, and the second half local step. v and g are sampled at t + dt/2.
  void step(ComplexGrid& grid, double t, double dt, const Potential& v, const CouplingFn& g);

 private:
  void apply_local_phase(ComplexGrid& grid, double half_dt, double g) const;
  void apply_kinetic(ComplexGrid& grid, double dt);

  struct Plans;
  GridGeometry geometry_;
  std::unique_ptr<Plans> plans_;
  std::vector<double> k_squared_;
  std::vector<Complex> kinetic_;
  double kinetic_dt_ = 0.0;
  std::vector<double> potential_;
};

/// One Strang step on a copy of `grid`.
ComplexGrid step_strang(const ComplexGrid& grid, double t, double dt, const Potential& v,
                        const CouplingFn& g);

using ReferenceFn = std::function<ComplexGrid(double t)>;

struct EvolutionConfig {
  double t0 = 0.0;
  double dt = 1e-3;
  std::size_t n_steps = 0;
  Potential potential = Potential::zero();
  CouplingFn nonlinearity = [](double) { return 0.0; };
  std::optional<TimeWindow> time_window;
  /// Frames are kept at step 0, every `record_every` steps and at the end.
  std::size_t record_every = 1;
  bool keep_frames = true;
  std::optional<Region> comparison_region;
  /// Analytic field sampled on the same geometry; enables error diagnostics.
  ReferenceFn reference;
  /// Called after every step with (step index, t, grid).
  std::function<void(std::size_t, double, const ComplexGrid&)> observer;
};

struct FrameDiagnostics {
  std::size_t step = 0;
  double t = 0.0;
  double norm = 0.0;
  double max_intensity = 0.0;
  std::optional<FieldComparison> error;
};

struct Trajectory {
  std::vector<std::pair<double, ComplexGrid>> frames;
  std::vector<FrameDiagnostics> diagnostics;
  ComplexGrid final_state;

  /// max |N(t) - N(0)| / N(0) over recorded frames (0 for a zero field).
  double norm_drift() const;
};

/// Repeated Strang steps. Throws std::invalid_argument for an inconsistent
/// config and NonFiniteDetected (carrying the step index) on overflow.
Trajectory evolve(const EvolutionConfig& config, const ComplexGrid& initial);

/// Config for the reduced 1D equation i Phi_tau = -Phi_zz/2 + G |Phi|^2 Phi.
EvolutionConfig reduced_equation_config(double G, double dt, std::size_t n_steps);

/// Config for the full 3D equation of `field`'s scenario, with the analytic
/// solution as reference.
EvolutionConfig scenario_config(const BreatherField& field, const GridGeometry& geometry,
                                double t0, double dt, std::size_t n_steps);

}  // namespace breather
