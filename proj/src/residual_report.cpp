#include "breather/residual_report.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace breather {

const ResidualEntry& ResidualReport::entry(std::string_view name) const {
  for (const auto& e : entries) {
    if (e.name == name) return e;
  }
  throw std::out_of_range("no residual entry named " + std::string(name));
}

double ResidualReport::max_abs() const {
  double worst = 0.0;
  for (const auto& e : entries) worst = std::max(worst, e.max_abs);
  return worst;
}

void ResidualAccumulator::add(double value, const SpaceTimePoint& point) {
  double magnitude = std::abs(value);
  // A NaN residual sticks as the maximum so that it can never pass a gate.
  if (!std::isnan(max_abs_) && (count_ == 0 || !(magnitude <= max_abs_))) {
    max_abs_ = magnitude;
    worst_ = point;
  }
  sum_squares_ += magnitude * magnitude;
  ++count_;
}

void ResidualAccumulator::merge(const ResidualAccumulator& other) {
  if (other.count_ == 0) return;
  if (!std::isnan(max_abs_) && (count_ == 0 || !(other.max_abs_ <= max_abs_))) {
    max_abs_ = other.max_abs_;
    worst_ = other.worst_;
  }
  sum_squares_ += other.sum_squares_;
  count_ += other.count_;
}

ResidualEntry ResidualAccumulator::finish() const {
  ResidualEntry entry;
  entry.name = name_;
  entry.max_abs = max_abs_;
  entry.rms = count_ == 0 ? 0.0 : std::sqrt(sum_squares_ / static_cast<double>(count_));
  entry.worst_point = worst_;
  return entry;
}

nlohmann::json to_json(const ResidualReport& report) {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& e : report.entries) {
    entries.push_back({{"name", e.name},
                       {"max_abs", e.max_abs},
                       {"rms", e.rms},
                       {"worst_point",
                        {{"r", {e.worst_point.r[0], e.worst_point.r[1], e.worst_point.r[2]}},
                         {"t", e.worst_point.t}}}});
  }
  return {{"entries", entries},
          {"sample_count", report.sample_count},
          {"step_sizes",
           {{"h_space", report.step_sizes.h_space}, {"h_time", report.step_sizes.h_time}}}};
}

}  // namespace breather
