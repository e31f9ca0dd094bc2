// Command-line front end: run, verify and export breather scenarios.

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "breather/analytic.hpp"
#include "breather/config.hpp"
#include "breather/errors.hpp"
#include "breather/run.hpp"

namespace {

enum ExitCode { kOk = 0, kGateFailure = 1, kUsageError = 2, kRuntimeError = 3 };

struct Flags {
  std::optional<std::string> config_path;
  std::vector<std::string> assignments;
  std::optional<std::string> preset;
  std::optional<std::string> v_convention;
  std::optional<std::string> rho_convention;
  std::optional<std::size_t> grid;
  std::optional<double> dt;
  std::optional<double> t_end;
  std::optional<double> noise;
  std::optional<std::string> out;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> points;
  std::optional<std::size_t> resolution;
  std::vector<std::string> planes;
  bool verify = false;
  bool evolve_1d = false;
  bool evolve_3d = false;
  bool both_conventions = false;
};

void add_scenario_options(CLI::App& cmd, Flags& f) {
  cmd.add_option("--config", f.config_path, "key=value config file with [sections]");
  cmd.add_option("--set", f.assignments, "override a config key, e.g. --set scenario.c1=0.6");
  cmd.add_option("--preset", f.preset, "free | harmonic_i | harmonic_ii | linear");
  cmd.add_option("--v-convention", f.v_convention, "canonical | paper")
      ->check(CLI::IsMember({"canonical", "paper"}));
  cmd.add_option("--rho-convention", f.rho_convention, "raw_antiderivative | normalized_at_zero")
      ->check(CLI::IsMember({"raw_antiderivative", "normalized_at_zero", "raw", "normalized"}));
  cmd.add_option("--out", f.out, "output directory");
  cmd.add_option("--seed", f.seed, "low-discrepancy sample seed");
}

void add_verify_options(CLI::App& cmd, Flags& f) {
  cmd.add_option("--points", f.points, "number of residual sample points");
  cmd.add_flag("--both-conventions", f.both_conventions,
               "also report the residual under the other potential convention");
}

void add_evolve_options(CLI::App& cmd, Flags& f) {
  cmd.add_option("--grid", f.grid, "3D points per axis (power of two)");
  cmd.add_option("--dt", f.dt, "3D time step");
  cmd.add_option("--t-end", f.t_end, "3D evolution duration");
  cmd.add_option("--noise", f.noise, "relative noise on the 3D initial data (diagnostic only)");
  cmd.add_flag("--evolve-1d", f.evolve_1d, "evolve the reduced 1D equation");
  cmd.add_flag("--evolve-3d", f.evolve_3d, "evolve the full 3D equation");
}

void add_export_options(CLI::App& cmd, Flags& f) {
  cmd.add_option("--plane", f.planes, "x | y | z | origin (repeatable)");
  cmd.add_option("--resolution", f.resolution, "slice points per axis");
}

breather::RunConfig resolve(const Flags& f) {
  breather::KeyValueConfig kv;
  if (f.config_path) kv = breather::KeyValueConfig::load(*f.config_path);
  for (const auto& a : f.assignments) kv.set(a);
  auto put = [&](const char* key, const auto& value) {
    if (value) kv.set(key, std::string(*value));
  };
  auto put_number = [&](const char* key, const auto& value) {
    if (value) kv.set(key, std::to_string(*value));
  };
  put("scenario.preset", f.preset);
  put("scenario.v_convention", f.v_convention);
  put("scenario.rho_convention", f.rho_convention);
  put("output.out", f.out);
  put_number("verify.seed", f.seed);
  put_number("verify.points", f.points);
  put_number("evolve.grid", f.grid);
  put_number("export.resolution", f.resolution);
  breather::RunConfig config = breather::to_run_config(kv);
  if (f.dt) config.dt = *f.dt;
  if (f.t_end) config.t_end = *f.t_end;
  if (f.noise) config.noise = *f.noise;
  if (f.verify) config.verify = true;
  if (f.evolve_1d) config.evolve_1d = true;
  if (f.evolve_3d) config.evolve_3d = true;
  if (f.both_conventions) config.both_conventions = true;
  if (!f.planes.empty()) {
    std::string joined;
    for (const auto& p : f.planes) joined += (joined.empty() ? "" : ",") + p;
    breather::KeyValueConfig planes;
    planes.set("export.planes", joined);
    config.planes = breather::to_run_config(planes).planes;
  }
  return config;
}

int report(const breather::RunManifest& manifest, const breather::RunConfig& config) {
  std::printf("scenario %s\n", manifest.scenario.c_str());
  for (const auto& g : manifest.gates) {
    std::printf("%-22s %-4s %.3e (<= %.1e)\n", g.name.c_str(), g.passed ? "PASS" : "FAIL", g.value,
                g.threshold);
  }
  if (manifest.diagnostics.contains("gp_residual_alternate")) {
    const auto& alt = manifest.diagnostics["gp_residual_alternate"];
    std::printf("%-22s info %.3e (%s convention, not gating)\n", "gp_residual_alternate",
                alt["entries"][0]["max_abs"].get<double>(),
                alt["v_convention"].get<std::string>().c_str());
  }
  std::printf("manifest %s\n", (config.out / "manifest.json").c_str());
  return manifest.passed() ? kOk : kGateFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Analytic and split-step tools for 3D Gross-Pitaevskii breathers"};
  app.require_subcommand(1);

  Flags flags;
  breather::RunStages stages;

  auto* run = app.add_subcommand("run", "construct, gate, evolve and export one scenario");
  add_scenario_options(*run, flags);
  add_verify_options(*run, flags);
  add_evolve_options(*run, flags);
  add_export_options(*run, flags);
  run->add_flag("--verify", flags.verify, "apply the GP residual gate");

  auto* verify = app.add_subcommand("verify", "constraint, reduction and GP residual gates only");
  add_scenario_options(*verify, flags);
  add_verify_options(*verify, flags);

  auto* exporter = app.add_subcommand("export", "write analytic |psi|^2 slices as CSV");
  add_scenario_options(*exporter, flags);
  add_export_options(*exporter, flags);

  auto* presets = app.add_subcommand("presets", "inspect built-in scenarios");
  presets->require_subcommand(1);
  auto* list = presets->add_subcommand("list", "print preset names and coefficients");

  CLI11_PARSE(app, argc, argv);

  try {
    if (list->parsed()) {
      for (const auto& name : breather::preset_names()) {
        const auto spec = breather::scenario_preset(name);
        std::printf("%-12s c = [%s, %s, %s, %s]  G = %g\n", name.c_str(),
                    spec.c[0].to_string().c_str(), spec.c[1].to_string().c_str(),
                    spec.c[2].to_string().c_str(), spec.c[3].to_string().c_str(), spec.G);
      }
      return kOk;
    }
    breather::RunConfig config = resolve(flags);
    if (run->parsed()) {
      stages = breather::stages_from(config);
    } else if (verify->parsed()) {
      stages = breather::RunStages{true, false, false, false};
    } else {
      stages = breather::RunStages{false, false, false, true};
    }
    return report(breather::run_scenario(config, stages), config);
  } catch (const breather::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kRuntimeError;
  }
}
