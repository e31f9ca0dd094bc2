#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "breather/config.hpp"

namespace breather {

inline constexpr double kReductionTolerance = 1e-8;
inline constexpr double kGpTolerance = 1e-5;
inline constexpr double kEvolve1dTolerance = 1e-3;
inline constexpr double kEvolve3dTolerance = 5e-2;
inline constexpr double kNormDriftTolerance = 1e-10;

struct Gate {
  std::string name;
  double value = 0.0;
  double threshold = 0.0;
  bool passed = false;
};

struct RunManifest {
  std::string scenario;
  nlohmann::json parameters;
  nlohmann::json settings;
  std::vector<Gate> gates;
  nlohmann::json diagnostics = nlohmann::json::object();
  std::vector<std::filesystem::path> outputs;
  std::map<std::string, double> timings;

  /// True iff every gate passed; vacuously true with no gates.
  bool passed() const;
  nlohmann::json to_json() const;
};

/// Which stages a run executes besides scenario construction and the
/// always-on constraint gates.
struct RunStages {
  bool verify = false;
  bool evolve_1d = false;
  bool evolve_3d = false;
  bool export_slices = true;
};

RunStages stages_from(const RunConfig& config);

/// Constructs the scenario, applies the gates, writes slices, frame dumps and
/// manifest.json under config.out. The manifest is written even when gates
/// fail. Throws ConfigError for an invalid scenario and IoError when the
/// output directory cannot be written.
RunManifest run_scenario(const RunConfig& config, const RunStages& stages);

}  // namespace breather
