#include "breather/slice.hpp"

#include <cmath>
#include <cstdio>
#include <memory>
#include <numbers>

#include "breather/errors.hpp"

namespace breather {

SlicePlane parse_slice_plane(std::string_view text) {
  if (text == "x") return SlicePlane::x_t;
  if (text == "y") return SlicePlane::y_t;
  if (text == "z") return SlicePlane::z_t;
  if (text == "origin") return SlicePlane::origin_trace;
  throw ConfigError("unknown slice plane '" + std::string(text) + "'");
}

std::string_view slice_plane_name(SlicePlane plane) {
  switch (plane) {
    case SlicePlane::x_t: return "x";
    case SlicePlane::y_t: return "y";
    case SlicePlane::z_t: return "z";
    case SlicePlane::origin_trace: return "origin";
  }
  return "?";
}

namespace {

double instant(const SliceSampling& s, std::size_t i) {
  if (s.resolution < 2) return s.t_min;
  return s.t_min + (s.t_max - s.t_min) * static_cast<double>(i) /
                       static_cast<double>(s.resolution - 1);
}

std::size_t nearest_to_zero(const GridGeometry& g, std::size_t axis) {
  if (g.points(axis) == 1) return 0;
  std::size_t best = 0;
  for (std::size_t i = 1; i < g.points(axis); ++i) {
    if (std::abs(g.coordinate(axis, i)) < std::abs(g.coordinate(axis, best))) best = i;
  }
  return best;
}

}  // namespace

SliceTable analytic_slice(const BreatherField& field, SlicePlane plane,
                          const SliceSampling& sampling) {
  if (sampling.resolution == 0 || !(sampling.extent > 0.0) || sampling.t_max < sampling.t_min) {
    throw std::invalid_argument("slice sampling must have positive resolution and extent");
  }
  const TimeWindow window = field.bundle().time_window;
  if (!window.contains(sampling.t_min) || !window.contains(sampling.t_max)) {
    throw std::invalid_argument("slice times lie outside the scenario time window");
  }
  SliceTable table{plane, {}};
  for (std::size_t it = 0; it < sampling.resolution; ++it) {
    const double t = instant(sampling, it);
    const TransformSnapshot snap = field.bundle().snapshot(t);
    if (plane == SlicePlane::origin_trace) {
      table.rows.push_back({t, std::norm(field.evaluate(snap, Vec3{0.0, 0.0, 0.0}))});
      continue;
    }
    const auto axis = static_cast<std::size_t>(plane);
    for (std::size_t i = 0; i < sampling.resolution; ++i) {
      const double s = -sampling.extent +
                       2.0 * sampling.extent * static_cast<double>(i) /
                           static_cast<double>(sampling.resolution);
      Vec3 r{0.0, 0.0, 0.0};
      r[axis] = s;
      table.rows.push_back({s, t, std::norm(field.evaluate(snap, r))});
    }
  }
  return table;
}

SliceTable trajectory_slice(const Trajectory& trajectory, SlicePlane plane) {
  SliceTable table{plane, {}};
  if (trajectory.frames.empty()) return table;
  const GridGeometry& g = trajectory.frames.front().second.geometry;
  const auto axis = plane == SlicePlane::origin_trace ? 0 : static_cast<std::size_t>(plane);
  if (axis >= static_cast<std::size_t>(g.dims())) {
    throw std::invalid_argument("slice axis is not present in the trajectory grid");
  }
  const std::array<std::size_t, 3> centre{nearest_to_zero(g, 0), nearest_to_zero(g, 1),
                                          nearest_to_zero(g, 2)};
  for (const auto& [t, grid] : trajectory.frames) {
    if (plane == SlicePlane::origin_trace) {
      table.rows.push_back({t, std::norm(grid.samples[g.index(centre[0], centre[1], centre[2])])});
      continue;
    }
    for (std::size_t i = 0; i < g.points(axis); ++i) {
      auto idx = centre;
      idx[axis] = i;
      table.rows.push_back(
          {g.coordinate(axis, i), t, std::norm(grid.samples[g.index(idx[0], idx[1], idx[2])])});
    }
  }
  return table;
}

void write_slice(const std::filesystem::path& path, const SliceTable& table) {
  std::unique_ptr<std::FILE, int (*)(std::FILE*)> file(std::fopen(path.c_str(), "w"), &std::fclose);
  if (!file) throw IoError("cannot write slice " + path.string());
  const bool trace = table.plane == SlicePlane::origin_trace;
  if (trace) {
    std::fputs("t,abs_psi_sq\n", file.get());
  } else {
    std::fprintf(file.get(), "%s,t,abs_psi_sq\n", std::string(slice_plane_name(table.plane)).c_str());
  }
  const double* previous_t = nullptr;
  for (const auto& row : table.rows) {
    if (!trace) {
      if (previous_t && *previous_t != row[1]) std::fputc('\n', file.get());
      previous_t = &row[1];
    }
    for (std::size_t k = 0; k < row.size(); ++k) {
      std::fprintf(file.get(), k == 0 ? "%.17g" : ",%.17g", row[k]);
    }
    std::fputc('\n', file.get());
  }
  if (std::ferror(file.get())) throw IoError("write failed for " + path.string());
}

std::vector<std::pair<double, double>> origin_trace(const BreatherField& field, double t_min,
                                                    double t_max, std::size_t n) {
  const SliceTable table =
      analytic_slice(field, SlicePlane::origin_trace, SliceSampling{1.0, t_min, t_max, n});
  std::vector<std::pair<double, double>> trace;
  trace.reserve(table.rows.size());
  for (const auto& row : table.rows) trace.emplace_back(row[0], row[1]);
  return trace;
}

std::vector<double> trace_peaks(const std::vector<std::pair<double, double>>& trace) {
  std::vector<double> peaks;
  for (std::size_t i = 1; i + 1 < trace.size(); ++i) {
    if (trace[i].second > trace[i - 1].second && trace[i].second >= trace[i + 1].second) {
      peaks.push_back(trace[i].first);
    }
  }
  return peaks;
}

double trace_frequency(const std::vector<std::pair<double, double>>& trace) {
  const auto peaks = trace_peaks(trace);
  if (peaks.size() < 2) return 0.0;
  const double spacing = (peaks.back() - peaks.front()) / static_cast<double>(peaks.size() - 1);
  return 2.0 * std::numbers::pi / spacing;
}

}  // namespace breather
