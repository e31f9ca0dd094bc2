#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "breather/analytic.hpp"
#include "breather/propagate.hpp"

namespace breather {

enum class SlicePlane { x_t, y_t, z_t, origin_trace };

SlicePlane parse_slice_plane(std::string_view text);  // "x", "y", "z", "origin"
std::string_view slice_plane_name(SlicePlane plane);

/// Sampling of an analytic slice: `resolution` points on [-extent, extent)
/// along the chosen axis and `resolution` instants on [t_min, t_max].
struct SliceSampling {
  double extent = 10.0;
  double t_min = 0.0;
  double t_max = 6.283185307179586;
  std::size_t resolution = 512;
};

/// One row per sample: {coordinate, t, |psi|^2}, or {t, |psi|^2} for the
/// origin trace. Rows are grouped by t.
struct SliceTable {
  SlicePlane plane = SlicePlane::x_t;
  std::vector<std::vector<double>> rows;
};

SliceTable analytic_slice(const BreatherField& field, SlicePlane plane,
                          const SliceSampling& sampling);

/// Uses the recorded frames. The spatial coordinate runs over the native grid
/// nodes on the line through the node nearest the origin.
SliceTable trajectory_slice(const Trajectory& trajectory, SlicePlane plane);

/// gnuplot-friendly CSV: header line, %.17g values, blank line between t blocks.
void write_slice(const std::filesystem::path& path, const SliceTable& table);

/// |psi(0, t)|^2 at n uniform instants on [t_min, t_max].
std::vector<std::pair<double, double>> origin_trace(const BreatherField& field, double t_min,
                                                    double t_max, std::size_t n);

/// Times of strict local maxima of a sampled trace.
std::vector<double> trace_peaks(const std::vector<std::pair<double, double>>& trace);

/// Mean angular frequency 2 pi / (mean peak spacing); 0 with fewer than two peaks.
double trace_frequency(const std::vector<std::pair<double, double>>& trace);

}  // namespace breather
