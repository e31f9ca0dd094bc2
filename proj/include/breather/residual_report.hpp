#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "breather/vec3.hpp"

namespace breather {

struct ResidualEntry {
  std::string name;
  double max_abs = 0.0;
  double rms = 0.0;
  SpaceTimePoint worst_point;
};

struct StepSizes {
  double h_space = 0.0;
  double h_time = 0.0;
};

/// Max / RMS residual statistics, one entry per checked equation.
struct ResidualReport {
  std::vector<ResidualEntry> entries;
  std::size_t sample_count = 0;
  StepSizes step_sizes;

  /// Throws std::out_of_range for an unknown name.
  const ResidualEntry& entry(std::string_view name) const;
  /// Largest max_abs across all entries.
  double max_abs() const;
};

/// Running max and sum of squares; merging two accumulators is associative.
class ResidualAccumulator {
 public:
  explicit ResidualAccumulator(std::string name) : name_(std::move(name)) {}

  void add(double value, const SpaceTimePoint& point);
  void merge(const ResidualAccumulator& other);
  ResidualEntry finish() const;
  std::size_t count() const { return count_; }

 private:
  std::string name_;
  double max_abs_ = 0.0;
  double sum_squares_ = 0.0;
  std::size_t count_ = 0;
  SpaceTimePoint worst_;
};

nlohmann::json to_json(const ResidualReport& report);

}  // namespace breather
