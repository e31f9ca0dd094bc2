#include "breather/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>

#include "breather/analytic.hpp"
#include "breather/errors.hpp"

namespace breather {

namespace {

std::string trim(const std::string& text) {
  const auto first = text.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = text.find_last_not_of(" \t\r");
  return text.substr(first, last - first + 1);
}

double parse_double(const std::string& key, const std::string& text) {
  try {
    std::size_t used = 0;
    double value = std::stod(text, &used);
    if (trim(text.substr(used)).empty()) return value;
  } catch (const std::exception&) {
  }
  throw ConfigError("'" + key + "' expects a number, got '" + text + "'");
}

std::size_t parse_count(const std::string& key, const std::string& text) {
  double value = parse_double(key, text);
  if (value < 0.0 || value != static_cast<double>(static_cast<std::size_t>(value))) {
    throw ConfigError("'" + key + "' expects a non-negative integer, got '" + text + "'");
  }
  return static_cast<std::size_t>(value);
}

bool parse_bool(const std::string& key, const std::string& text) {
  std::string lower = text;
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "true" || lower == "1" || lower == "yes" || lower == "on") return true;
  if (lower == "false" || lower == "0" || lower == "no" || lower == "off") return false;
  throw ConfigError("'" + key + "' expects true/false, got '" + text + "'");
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

}  // namespace

KeyValueConfig KeyValueConfig::parse(const std::string& text, const std::string& origin) {
  KeyValueConfig config;
  std::istringstream in(text);
  std::string line;
  std::string section;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        throw ConfigError(origin + ":" + std::to_string(number) + ": unterminated section header");
      }
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(origin + ":" + std::to_string(number) + ": expected key = value");
    }
    std::string key = trim(line.substr(0, eq));
    if (key.empty()) throw ConfigError(origin + ":" + std::to_string(number) + ": empty key");
    if (!section.empty()) key = section + "." + key;
    config.values_[key] = trim(line.substr(eq + 1));
  }
  return config;
}

KeyValueConfig KeyValueConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str(), path.string());
}

void KeyValueConfig::set(const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos) throw ConfigError("expected key=value, got '" + assignment + "'");
  const std::string key = trim(assignment.substr(0, eq));
  if (key.empty()) throw ConfigError("empty key in '" + assignment + "'");
  values_[key] = trim(assignment.substr(eq + 1));
}

std::optional<std::string> KeyValueConfig::get(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) return std::nullopt;
  return it->second;
}

TimeFunction parse_time_function(const std::string& text) {
  std::istringstream in(text);
  std::vector<std::string> tokens;
  for (std::string token; in >> token;) tokens.push_back(token);
  if (tokens.empty()) throw ConfigError("empty coefficient expression");
  auto number = [&](std::size_t i) { return parse_double(text, tokens.at(i)); };
  const std::string& head = tokens.front();
  if (head == "harmonic") {
    if (tokens.size() != 4 && tokens.size() != 5) {
      throw ConfigError("'harmonic' expects a b w [phase], got '" + text + "'");
    }
    return TimeFunction::harmonic(number(1), number(2), number(3),
                                  tokens.size() == 5 ? number(4) : 0.0);
  }
  if (head == "sin" || head == "cos") {
    if (tokens.size() != 2) throw ConfigError("'" + head + "' expects one frequency");
    const double phase = head == "sin" ? -std::numbers::pi / 2.0 : 0.0;
    return TimeFunction::harmonic(0.0, 1.0, number(1), phase);
  }
  if (tokens.size() != 1) throw ConfigError("cannot parse coefficient '" + text + "'");
  return TimeFunction::constant(number(0));
}

std::string to_string(VConvention convention) {
  return convention == VConvention::canonical ? "canonical" : "paper";
}

std::string to_string(RhoConvention convention) {
  return convention == RhoConvention::raw_antiderivative ? "raw_antiderivative"
                                                         : "normalized_at_zero";
}

VConvention parse_v_convention(const std::string& text) {
  if (text == "canonical") return VConvention::canonical;
  if (text == "paper") return VConvention::paper;
  throw ConfigError("v convention must be canonical or paper, got '" + text + "'");
}

RhoConvention parse_rho_convention(const std::string& text) {
  if (text == "raw_antiderivative" || text == "raw") return RhoConvention::raw_antiderivative;
  if (text == "normalized_at_zero" || text == "normalized") return RhoConvention::normalized_at_zero;
  throw ConfigError("rho convention must be raw_antiderivative or normalized_at_zero, got '" +
                    text + "'");
}

RunConfig to_run_config(const KeyValueConfig& config) {
  RunConfig run;
  using Setter = std::function<void(const std::string& key, const std::string& value)>;
  const std::map<std::string, Setter> setters = {
      {"scenario.preset", [&](auto&, auto& v) { run.preset = v; }},
      {"scenario.G", [&](auto& k, auto& v) { run.G = parse_double(k, v); }},
      {"scenario.v_convention", [&](auto&, auto& v) { run.v_convention = parse_v_convention(v); }},
      {"scenario.rho_convention",
       [&](auto&, auto& v) { run.rho_convention = parse_rho_convention(v); }},
      {"scenario.t_min", [&](auto& k, auto& v) { run.t_min = parse_double(k, v); }},
      {"scenario.t_max", [&](auto& k, auto& v) { run.t_max = parse_double(k, v); }},
      {"verify.enabled", [&](auto& k, auto& v) { run.verify = parse_bool(k, v); }},
      {"verify.both_conventions", [&](auto& k, auto& v) { run.both_conventions = parse_bool(k, v); }},
      {"verify.points", [&](auto& k, auto& v) { run.verify_points = parse_count(k, v); }},
      {"verify.h", [&](auto& k, auto& v) { run.h = parse_double(k, v); }},
      {"verify.seed", [&](auto& k, auto& v) { run.seed = parse_count(k, v); }},
      {"evolve.evolve_1d", [&](auto& k, auto& v) { run.evolve_1d = parse_bool(k, v); }},
      {"evolve.evolve_3d", [&](auto& k, auto& v) { run.evolve_3d = parse_bool(k, v); }},
      {"evolve.grid", [&](auto& k, auto& v) { run.grid = parse_count(k, v); }},
      {"evolve.grid_1d", [&](auto& k, auto& v) { run.grid_1d = parse_count(k, v); }},
      {"evolve.extent", [&](auto& k, auto& v) { run.extent = parse_double(k, v); }},
      {"evolve.extent_1d", [&](auto& k, auto& v) { run.extent_1d = parse_double(k, v); }},
      {"evolve.region", [&](auto& k, auto& v) { run.region = parse_double(k, v); }},
      {"evolve.dt", [&](auto& k, auto& v) { run.dt = parse_double(k, v); }},
      {"evolve.dt_1d", [&](auto& k, auto& v) { run.dt_1d = parse_double(k, v); }},
      {"evolve.t_end", [&](auto& k, auto& v) { run.t_end = parse_double(k, v); }},
      {"evolve.tau_end", [&](auto& k, auto& v) { run.tau_end = parse_double(k, v); }},
      {"evolve.noise", [&](auto& k, auto& v) { run.noise = parse_double(k, v); }},
      {"evolve.frames", [&](auto& k, auto& v) { run.frames = parse_count(k, v); }},
      {"export.planes", [&](auto&, auto& v) { run.planes = split_list(v); }},
      {"export.resolution", [&](auto& k, auto& v) { run.resolution = parse_count(k, v); }},
      {"export.extent", [&](auto& k, auto& v) { run.slice_extent = parse_double(k, v); }},
      {"export.t_end", [&](auto& k, auto& v) { run.slice_t_end = parse_double(k, v); }},
      {"output.out", [&](auto&, auto& v) { run.out = v; }},
  };
  const std::vector<std::string> coefficient_keys = {"c1", "c2", "c3", "c4", "d7", "d8", "d9"};

  for (const auto& [key, value] : config.values()) {
    if (auto it = setters.find(key); it != setters.end()) {
      it->second(key, value);
      continue;
    }
    const std::string bare = key.rfind("scenario.", 0) == 0 ? key.substr(9) : std::string();
    if (std::find(coefficient_keys.begin(), coefficient_keys.end(), bare) != coefficient_keys.end()) {
      parse_time_function(value);
      run.coefficients[bare] = value;
      continue;
    }
    throw ConfigError("unknown config key '" + key + "'");
  }
  for (const std::string& plane : run.planes) {
    if (plane != "x" && plane != "y" && plane != "z" && plane != "origin") {
      throw ConfigError("export plane must be x, y, z or origin, got '" + plane + "'");
    }
  }
  return run;
}

ScenarioSpec build_scenario(const RunConfig& config) {
  try {
    ScenarioSpec spec = scenario_preset(config.preset.value_or("free"));
    if (config.t_min) spec.time_window.t_min = *config.t_min;
    if (config.t_max) spec.time_window.t_max = *config.t_max;
    if (!config.coefficients.empty()) {
      std::array<TimeFunction, 4> c = spec.c;
      std::optional<std::array<TimeFunction, 3>> linear_d;
      for (std::size_t j = 0; j < 4; ++j) {
        if (auto it = config.coefficients.find("c" + std::to_string(j + 1));
            it != config.coefficients.end()) {
          c[j] = parse_time_function(it->second);
        }
      }
      for (std::size_t j = 0; j < 3; ++j) {
        if (auto it = config.coefficients.find("d" + std::to_string(j + 7));
            it != config.coefficients.end()) {
          if (!linear_d) linear_d = std::array<TimeFunction, 3>{spec.d[6], spec.d[7], spec.d[8]};
          (*linear_d)[j] = parse_time_function(it->second);
        }
      }
      if (!linear_d && !spec.c[3].derivative().is_zero()) {
        linear_d = std::array<TimeFunction, 3>{spec.d[6], spec.d[7], spec.d[8]};
      }
      spec.c = c;
      spec.d = derive_gauge_d(c, linear_d, spec.time_window);
      spec.name = config.preset ? *config.preset + "+custom" : "custom";
    }
    if (config.G) spec.G = *config.G;
    if (config.v_convention) spec.v_convention = *config.v_convention;
    if (config.rho_convention) spec.rho_convention = *config.rho_convention;
    validate(spec);
    return spec;
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(std::string("invalid scenario: ") + e.what());
  }
}

}  // namespace breather
