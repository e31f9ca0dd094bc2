#pragma once

#include <filesystem>
#include <vector>

#include "breather/grid.hpp"
#include "breather/propagate.hpp"

namespace breather {

// Binary grid dump, all fields little-endian:
//   "BFGD" | u32 version | u32 dims | u32 points[dims] | f64 (min, max)[dims]
//   | f64 (re, im) per sample in row-major order
inline constexpr std::uint32_t kGridFormatVersion = 1;

void write_grid(const std::filesystem::path& path, const ComplexGrid& grid);

/// Throws IoError on a short read, bad magic or unsupported version.
ComplexGrid read_grid(const std::filesystem::path& path);

/// Writes frame_NNNNN.bfgd per recorded frame and frames.csv listing
/// `frame,t,file`. Returns every path written.
std::vector<std::filesystem::path> write_frames(const std::filesystem::path& directory,
                                                const Trajectory& trajectory);

}  // namespace breather
