#include "breather/propagate.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "breather/errors.hpp"

namespace breather {

Potential Potential::zero() { return Potential{}; }

Potential Potential::pointwise(std::function<double(const Vec3&, double)> v) {
  Potential p;
  p.pointwise_ = std::move(v);
  return p;
}

Potential Potential::quadratic(std::function<QuadraticForm(double)> form) {
  Potential p;
  p.quadratic_ = std::move(form);
  return p;
}

void Potential::fill(const GridGeometry& geometry, double t, std::span<double> out) const {
  if (quadratic_) {
    const QuadraticForm form = quadratic_(t);
    for (std::size_t n = 0; n < out.size(); ++n) out[n] = evaluate(form, geometry.node(n));
  } else if (pointwise_) {
    for (std::size_t n = 0; n < out.size(); ++n) out[n] = pointwise_(geometry.node(n), t);
  } else {
    std::fill(out.begin(), out.end(), 0.0);
  }
}

namespace {

// The FFTW planner is not re-entrant.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

double wavenumber(std::size_t index, std::size_t points, double length) {
  const auto i = static_cast<double>(index);
  const auto n = static_cast<double>(points);
  const double shifted = index < points / 2 ? i : i - n;
  return 2.0 * std::numbers::pi * shifted / length;
}

}  // namespace

struct StrangStepper::Plans {
  fftw_complex* buffer = nullptr;
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;

  explicit Plans(const GridGeometry& g) {
    std::lock_guard lock(planner_mutex());
    buffer = fftw_alloc_complex(g.size());
    if (g.dims() == 1) {
      const int n = static_cast<int>(g.points(0));
      forward = fftw_plan_dft_1d(n, buffer, buffer, FFTW_FORWARD, FFTW_ESTIMATE);
      backward = fftw_plan_dft_1d(n, buffer, buffer, FFTW_BACKWARD, FFTW_ESTIMATE);
    } else {
      const int nx = static_cast<int>(g.points(0));
      const int ny = static_cast<int>(g.points(1));
      const int nz = static_cast<int>(g.points(2));
      forward = fftw_plan_dft_3d(nx, ny, nz, buffer, buffer, FFTW_FORWARD, FFTW_ESTIMATE);
      backward = fftw_plan_dft_3d(nx, ny, nz, buffer, buffer, FFTW_BACKWARD, FFTW_ESTIMATE);
    }
  }

  ~Plans() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(forward);
    fftw_destroy_plan(backward);
    fftw_free(buffer);
  }

  Plans(const Plans&) = delete;
  Plans& operator=(const Plans&) = delete;
};

StrangStepper::StrangStepper(const GridGeometry& geometry)
    : geometry_(geometry),
      plans_(std::make_unique<Plans>(geometry)),
      k_squared_(geometry.size()),
      kinetic_(geometry.size()),
      potential_(geometry.size()) {
  for (std::size_t n = 0; n < geometry.size(); ++n) {
    const std::size_t k = n % geometry.points(2);
    const std::size_t j = (n / geometry.points(2)) % geometry.points(1);
    const std::size_t i = n / (geometry.points(1) * geometry.points(2));
    const std::array<std::size_t, 3> idx{i, j, k};
    double sum = 0.0;
    for (std::size_t axis = 0; axis < static_cast<std::size_t>(geometry.dims()); ++axis) {
      const double kk = wavenumber(idx[axis], geometry.points(axis), geometry.length(axis));
      sum += kk * kk;
    }
    k_squared_[n] = sum;
  }
}

StrangStepper::~StrangStepper() = default;

void StrangStepper::apply_local_phase(ComplexGrid& grid, double half_dt, double g) const {
  auto& psi = grid.samples;
  for (std::size_t n = 0; n < psi.size(); ++n) {
    const double phase = -(potential_[n] + g * std::norm(psi[n])) * half_dt;
    psi[n] *= std::polar(1.0, phase);
  }
}

void StrangStepper::apply_kinetic(ComplexGrid& grid, double dt) {
  const std::size_t size = geometry_.size();
  if (dt != kinetic_dt_) {
    const double scale = 1.0 / static_cast<double>(size);
    for (std::size_t n = 0; n < size; ++n) kinetic_[n] = std::polar(scale, -0.5 * k_squared_[n] * dt);
    kinetic_dt_ = dt;
  }
  auto* buffer = reinterpret_cast<Complex*>(plans_->buffer);
  std::copy(grid.samples.begin(), grid.samples.end(), buffer);
  fftw_execute(plans_->forward);
  for (std::size_t n = 0; n < size; ++n) buffer[n] *= kinetic_[n];
  fftw_execute(plans_->backward);
  std::copy(buffer, buffer + size, grid.samples.begin());
}

void StrangStepper::step(ComplexGrid& grid, double t, double dt, const Potential& v,
                         const CouplingFn& g) {
  if (!(grid.geometry == geometry_)) throw GeometryMismatch("grid does not match stepper geometry");
  const double t_mid = t + 0.5 * dt;
  const double g_mid = g(t_mid);
  v.fill(geometry_, t_mid, potential_);
  apply_local_phase(grid, 0.5 * dt, g_mid);
  apply_kinetic(grid, dt);
  apply_local_phase(grid, 0.5 * dt, g_mid);
}

ComplexGrid step_strang(const ComplexGrid& grid, double t, double dt, const Potential& v,
                        const CouplingFn& g) {
  StrangStepper stepper(grid.geometry);
  ComplexGrid out = grid;
  stepper.step(out, t, dt, v, g);
  return out;
}

double Trajectory::norm_drift() const {
  if (diagnostics.empty() || diagnostics.front().norm == 0.0) return 0.0;
  const double reference = diagnostics.front().norm;
  double drift = 0.0;
  for (const auto& d : diagnostics) drift = std::max(drift, std::abs(d.norm - reference) / reference);
  return drift;
}

namespace {

void check_config(const EvolutionConfig& config, const GridGeometry& geometry) {
  if (!(config.dt > 0.0) || !std::isfinite(config.dt)) {
    throw std::invalid_argument("evolution dt must be positive and finite");
  }
  if (config.record_every == 0) throw std::invalid_argument("record_every must be >= 1");
  if (config.time_window) {
    const double t_end = config.t0 + config.dt * static_cast<double>(config.n_steps);
    const double slack = 1e-9 * std::max(1.0, std::abs(t_end));
    if (config.t0 < config.time_window->t_min - slack ||
        t_end > config.time_window->t_max + slack) {
      throw std::invalid_argument("evolution leaves the scenario time window");
    }
  }
  if (config.comparison_region) {
    for (std::size_t axis = 0; axis < static_cast<std::size_t>(geometry.dims()); ++axis) {
      const auto& inner = config.comparison_region->extents[axis];
      const auto& outer = geometry.extent(axis);
      if (!(inner.min > outer.min && inner.max < outer.max && inner.min < inner.max)) {
        throw std::invalid_argument("comparison region must lie strictly inside the grid");
      }
    }
  }
}

FrameDiagnostics diagnose(const EvolutionConfig& config, const ComplexGrid& grid,
                          std::size_t step, double t) {
  FrameDiagnostics d;
  d.step = step;
  d.t = t;
  d.norm = grid.norm();
  d.max_intensity = grid.max_intensity();
  if (config.reference) {
    d.error = compare_fields(config.reference(t), grid, config.comparison_region);
  }
  return d;
}

}  // namespace

Trajectory evolve(const EvolutionConfig& config, const ComplexGrid& initial) {
  check_config(config, initial.geometry);
  StrangStepper stepper(initial.geometry);
  Trajectory trajectory{{}, {}, initial};
  ComplexGrid& psi = trajectory.final_state;

  auto record = [&](std::size_t step, double t) {
    trajectory.diagnostics.push_back(diagnose(config, psi, step, t));
    if (config.keep_frames) trajectory.frames.emplace_back(t, psi);
  };

  record(0, config.t0);
  for (std::size_t step = 1; step <= config.n_steps; ++step) {
    const double t_prev = config.t0 + config.dt * static_cast<double>(step - 1);
    const double t = config.t0 + config.dt * static_cast<double>(step);
    stepper.step(psi, t_prev, config.dt, config.potential, config.nonlinearity);
    if (!psi.all_finite()) {
      std::ostringstream msg;
      msg << "non-finite field after step " << step << " (t = " << t << ")";
      throw NonFiniteDetected(msg.str(), step);
    }
    if (config.observer) config.observer(step, t, psi);
    if (step % config.record_every == 0 || step == config.n_steps) record(step, t);
  }
  return trajectory;
}

EvolutionConfig reduced_equation_config(double G, double dt, std::size_t n_steps) {
  EvolutionConfig config;
  config.dt = dt;
  config.n_steps = n_steps;
  config.nonlinearity = [G](double) { return G; };
  return config;
}

EvolutionConfig scenario_config(const BreatherField& field, const GridGeometry& geometry,
                                double t0, double dt, std::size_t n_steps) {
  EvolutionConfig config;
  config.t0 = t0;
  config.dt = dt;
  config.n_steps = n_steps;
  const auto& bundle = field.bundle();
  config.potential = Potential::quadratic(bundle.potential_form);
  config.nonlinearity = bundle.nonlinearity;
  config.time_window = bundle.time_window;
  config.reference = [field, geometry](double t) { return sample_field(field, geometry, t); };
  return config;
}

}  // namespace breather
