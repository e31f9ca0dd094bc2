#include "breather/run.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <random>

#include "breather/analytic.hpp"
#include "breather/errors.hpp"
#include "breather/grid_io.hpp"
#include "breather/propagate.hpp"
#include "breather/slice.hpp"
#include "breather/verify.hpp"

namespace breather {

bool RunManifest::passed() const {
  for (const Gate& g : gates) {
    if (!g.passed) return false;
  }
  return true;
}

nlohmann::json RunManifest::to_json() const {
  nlohmann::json gate_list = nlohmann::json::array();
  for (const Gate& g : gates) {
    gate_list.push_back({{"name", g.name},
                         {"value", g.value},
                         {"threshold", g.threshold},
                         {"comparison", "<="},
                         {"passed", g.passed}});
  }
  nlohmann::json output_list = nlohmann::json::array();
  for (const auto& p : outputs) output_list.push_back(p.string());
  return {{"scenario", scenario},
          {"parameters", parameters},
          {"settings", settings},
          {"gates", gate_list},
          {"passed", passed()},
          {"diagnostics", diagnostics},
          {"outputs", output_list},
          {"timings_s", timings}};
}

RunStages stages_from(const RunConfig& config) {
  return RunStages{config.verify, config.evolve_1d, config.evolve_3d, true};
}

namespace {

// NaN never passes.
Gate make_gate(std::string name, double value, double threshold) {
  return Gate{std::move(name), value, threshold, value <= threshold};
}

nlohmann::json scenario_parameters(const ScenarioSpec& spec) {
  nlohmann::json c = nlohmann::json::array();
  for (const auto& f : spec.c) c.push_back(f.to_string());
  nlohmann::json d = nlohmann::json::array();
  for (const auto& f : spec.d) d.push_back(f.to_string());
  return {{"c", c},
          {"d", d},
          {"G", spec.G},
          {"v_convention", to_string(spec.v_convention)},
          {"rho_convention", to_string(spec.rho_convention)},
          {"time_window", {spec.time_window.t_min, spec.time_window.t_max}}};
}

nlohmann::json run_settings(const RunConfig& config, const RunStages& stages) {
  return {{"stages",
           {{"verify", stages.verify},
            {"evolve_1d", stages.evolve_1d},
            {"evolve_3d", stages.evolve_3d},
            {"export", stages.export_slices}}},
          {"verify", {{"points", config.verify_points}, {"h", config.h}, {"seed", config.seed},
                      {"both_conventions", config.both_conventions}}},
          {"evolve_1d", {{"points", config.grid_1d}, {"extent", config.extent_1d},
                         {"dt", config.dt_1d}, {"tau_end", config.tau_end}}},
          {"evolve_3d", {{"points", config.grid}, {"extent", config.extent},
                         {"region", config.region}, {"dt", config.dt}, {"t_end", config.t_end},
                         {"noise", config.noise}}},
          {"frames", config.frames},
          {"export", {{"planes", config.planes}, {"resolution", config.resolution},
                      {"extent", config.slice_extent}, {"t_end", config.slice_t_end}}}};
}

SampleBox sample_box(TimeWindow window) {
  SampleBox box;
  const double margin = 0.05 * (window.t_max - window.t_min);
  box.t_lo = std::max(box.t_lo, window.t_min + margin);
  box.t_hi = std::min(box.t_hi, window.t_max - margin);
  if (box.t_hi <= box.t_lo) {
    box.t_lo = window.t_min + margin;
    box.t_hi = window.t_max - margin;
  }
  return box;
}

std::size_t step_count(double span, double dt) {
  if (!(dt > 0.0) || !(span > 0.0)) throw ConfigError("evolution needs positive dt and duration");
  return static_cast<std::size_t>(std::llround(span / dt));
}

std::size_t record_interval(std::size_t n_steps, std::size_t frames) {
  if (frames <= 1) return std::max<std::size_t>(n_steps, 1);
  return std::max<std::size_t>(1, n_steps / (frames - 1));
}

class Stopwatch {
 public:
  double lap() {
    const auto now = std::chrono::steady_clock::now();
    const double s = std::chrono::duration<double>(now - start_).count();
    start_ = now;
    return s;
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

double max_error(const Trajectory& trajectory, bool relative_l2) {
  double worst = 0.0;
  for (const auto& d : trajectory.diagnostics) {
    if (!d.error) continue;
    const double e = relative_l2 ? d.error->l2_rel : d.error->linf;
    if (std::isnan(e)) return e;
    worst = std::max(worst, e);
  }
  return worst;
}

nlohmann::json error_curve(const Trajectory& trajectory) {
  nlohmann::json curve = nlohmann::json::array();
  for (const auto& d : trajectory.diagnostics) {
    nlohmann::json row = {{"step", d.step}, {"t", d.t}, {"norm", d.norm},
                          {"max_intensity", d.max_intensity}};
    if (d.error) {
      row["l2_rel"] = d.error->l2_rel;
      row["linf"] = d.error->linf;
      row["phase_aligned_l2"] = d.error->phase_aligned_l2;
    }
    curve.push_back(row);
  }
  return curve;
}

}  // namespace

RunManifest run_scenario(const RunConfig& config, const RunStages& stages) {
  const ScenarioSpec spec = build_scenario(config);
  const BreatherField field(spec);

  RunManifest manifest;
  manifest.scenario = spec.name;
  manifest.parameters = scenario_parameters(spec);
  manifest.settings = run_settings(config, stages);

  std::error_code ec;
  std::filesystem::create_directories(config.out, ec);
  if (ec) throw IoError("cannot create output directory " + config.out.string());

  Stopwatch clock;
  {
    const auto times = uniform_times(spec.time_window, kConstraintSamples);
    manifest.gates.push_back(
        make_gate("constraints", check_constraints(spec, times).max_abs(), kConstraintTolerance));
    const auto points = low_discrepancy_points(sample_box(spec.time_window), 100, config.seed);
    const ResidualReport reduction = reduction_residual(field.bundle(), points);
    manifest.gates.push_back(make_gate("reduction", reduction.max_abs(), kReductionTolerance));
    manifest.diagnostics["reduction"] = breather::to_json(reduction);
  }
  manifest.timings["constraints"] = clock.lap();

  if (stages.verify) {
    const auto points =
        low_discrepancy_points(sample_box(spec.time_window), config.verify_points, config.seed);
    const ResidualReport gp = gp_residual(field, points, config.h, config.h);
    manifest.gates.push_back(make_gate("gp_residual", gp.max_abs(), kGpTolerance));
    manifest.diagnostics["gp_residual"] = breather::to_json(gp);
    if (config.both_conventions) {
      ScenarioSpec other = spec;
      other.v_convention = spec.v_convention == VConvention::canonical ? VConvention::paper
                                                                       : VConvention::canonical;
      const ResidualReport alt = gp_residual(BreatherField(other), points, config.h, config.h);
      nlohmann::json entry = breather::to_json(alt);
      entry["v_convention"] = to_string(other.v_convention);
      entry["gating"] = false;
      manifest.diagnostics["gp_residual_alternate"] = entry;
    }
    manifest.timings["verify"] = clock.lap();
  }

  if (stages.evolve_1d) {
    const GridGeometry geometry =
        GridGeometry::line({-config.extent_1d, config.extent_1d}, config.grid_1d);
    const std::size_t n = step_count(config.tau_end, config.dt_1d);
    EvolutionConfig evo = reduced_equation_config(spec.G, config.dt_1d, n);
    evo.record_every = record_interval(n, config.frames);
    const bool has_reference = spec.G == -1.0;
    if (has_reference) {
      evo.reference = [geometry](double tau) {
        return sample_profile(Profile::satsuma_yajima_two_soliton, geometry, tau);
      };
    }
    const Trajectory trajectory =
        evolve(evo, sample_profile(Profile::satsuma_yajima_two_soliton, geometry, 0.0));
    if (has_reference) {
      manifest.gates.push_back(
          make_gate("evolve_1d_linf", max_error(trajectory, false), kEvolve1dTolerance));
    }
    manifest.gates.push_back(
        make_gate("evolve_1d_norm_drift", trajectory.norm_drift(), kNormDriftTolerance));
    manifest.diagnostics["evolve_1d"] = error_curve(trajectory);
    for (const auto& p : write_frames(config.out / "evolve_1d", trajectory)) {
      manifest.outputs.push_back(p);
    }
    if (stages.export_slices) {
      const auto path = config.out / "evolve_1d_x.csv";
      write_slice(path, trajectory_slice(trajectory, SlicePlane::x_t));
      manifest.outputs.push_back(path);
    }
    manifest.timings["evolve_1d"] = clock.lap();
  }

  if (stages.evolve_3d) {
    const GridGeometry geometry = GridGeometry::cube({-config.extent, config.extent}, config.grid);
    const std::size_t n = step_count(config.t_end, config.dt);
    const double t0 = spec.time_window.t_min;
    EvolutionConfig evo = scenario_config(field, geometry, t0, config.dt, n);
    evo.record_every = record_interval(n, config.frames);
    evo.comparison_region = Region::cube({-config.region, config.region});
    ComplexGrid initial = sample_field(field, geometry, t0);
    if (config.noise > 0.0) {
      std::mt19937_64 rng(config.seed);
      std::normal_distribution<double> normal;
      for (auto& s : initial.samples) s *= Complex(1.0 + config.noise * normal(rng), config.noise * normal(rng));
    }
    const Trajectory trajectory = evolve(evo, initial);
    manifest.gates.push_back(
        make_gate("evolve_3d_l2_rel", max_error(trajectory, true), kEvolve3dTolerance));
    manifest.gates.push_back(
        make_gate("evolve_3d_norm_drift", trajectory.norm_drift(), kNormDriftTolerance));
    manifest.diagnostics["evolve_3d"] = error_curve(trajectory);
    for (const auto& p : write_frames(config.out / "evolve_3d", trajectory)) {
      manifest.outputs.push_back(p);
    }
    if (stages.export_slices) {
      for (const std::string& name : config.planes) {
        const auto path = config.out / ("evolve_3d_" + name + ".csv");
        write_slice(path, trajectory_slice(trajectory, parse_slice_plane(name)));
        manifest.outputs.push_back(path);
      }
    }
    manifest.timings["evolve_3d"] = clock.lap();
  }

  if (stages.export_slices) {
    const double t_min = spec.time_window.t_min;
    const double t_max = std::min(spec.time_window.t_max, t_min + config.slice_t_end);
    const SliceSampling sampling{config.slice_extent, t_min, t_max, config.resolution};
    for (const std::string& name : config.planes) {
      const auto path = config.out / ("slice_" + name + ".csv");
      write_slice(path, analytic_slice(field, parse_slice_plane(name), sampling));
      manifest.outputs.push_back(path);
    }
    manifest.timings["export"] = clock.lap();
  }

  const auto manifest_path = config.out / "manifest.json";
  manifest.outputs.push_back(manifest_path);
  std::ofstream out(manifest_path);
  if (!out) throw IoError("cannot write " + manifest_path.string());
  out << manifest.to_json().dump(2) << '\n';
  if (!out) throw IoError("write failed for " + manifest_path.string());
  return manifest;
}

}  // namespace breather
