#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "breather/time_function.hpp"
#include "breather/transform.hpp"

namespace breather {

/// Flat `key = value` text with optional `[section]` headers. Keys are stored
/// as `section.key`; `#` starts a comment. Later assignments win.
class KeyValueConfig {
 public:
  static KeyValueConfig parse(const std::string& text, const std::string& origin = "<string>");
  static KeyValueConfig load(const std::filesystem::path& path);

  /// `key=value` with an optionally dotted key, as given on a command line.
  void set(const std::string& assignment);
  void set(const std::string& key, const std::string& value) { values_[key] = value; }

  std::optional<std::string> get(const std::string& key) const;
  const std::map<std::string, std::string>& values() const { return values_; }

 private:
  std::map<std::string, std::string> values_;
};

/// Parses `0.5`, `harmonic a b w [phase]` (a + b cos(w t + phase)) or
/// `sin w` / `cos w`. Throws ConfigError.
TimeFunction parse_time_function(const std::string& text);

/// Everything a batch run needs. Defaults mirror the acceptance settings.
struct RunConfig {
  // [scenario]
  std::optional<std::string> preset;
  std::map<std::string, std::string> coefficients;  // c1..c4, d7..d9
  std::optional<double> G;
  std::optional<VConvention> v_convention;
  std::optional<RhoConvention> rho_convention;
  std::optional<double> t_min;
  std::optional<double> t_max;

  // [verify]
  bool verify = false;
  bool both_conventions = false;
  std::size_t verify_points = 1000;
  double h = 1e-3;
  std::uint64_t seed = 20100;

  // [evolve]
  bool evolve_1d = false;
  bool evolve_3d = false;
  std::size_t grid = 64;
  std::size_t grid_1d = 1024;
  double extent = 10.0;
  double extent_1d = 20.0;
  double region = 5.0;
  double dt = 1e-3;
  double dt_1d = 2e-4;
  double t_end = 0.5;
  double tau_end = 1.5707963267948966;
  /// Relative amplitude of seeded complex noise added to the 3D initial data.
  /// Non-gating; peak tracking lands in the manifest diagnostics.
  double noise = 0.0;
  std::size_t frames = 5;

  // [export]
  std::vector<std::string> planes{"x", "origin"};
  std::size_t resolution = 512;
  double slice_extent = 10.0;
  double slice_t_end = 6.283185307179586;

  // [output]
  std::filesystem::path out = "breather_out";
};

/// Applies every recognized key; throws ConfigError on unknown keys or
/// malformed values.
RunConfig to_run_config(const KeyValueConfig& config);

/// Preset (default `free`) with coefficient overrides re-gauged diagonally,
/// then G, conventions and time window applied. Throws ConfigError.
ScenarioSpec build_scenario(const RunConfig& config);

std::string to_string(VConvention convention);
std::string to_string(RhoConvention convention);
VConvention parse_v_convention(const std::string& text);
RhoConvention parse_rho_convention(const std::string& text);

}  // namespace breather
