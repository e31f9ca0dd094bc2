#include "breather/grid_io.hpp"

#include <bit>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "breather/errors.hpp"

namespace breather {

namespace {

constexpr char kMagic[4] = {'B', 'F', 'G', 'D'};

void put_u32(std::ostream& out, std::uint32_t value) {
  char bytes[4];
  for (int i = 0; i < 4; ++i) bytes[i] = static_cast<char>((value >> (8 * i)) & 0xFF);
  out.write(bytes, 4);
}

void put_f64(std::ostream& out, double value) {
  const auto bits = std::bit_cast<std::uint64_t>(value);
  char bytes[8];
  for (int i = 0; i < 8; ++i) bytes[i] = static_cast<char>((bits >> (8 * i)) & 0xFF);
  out.write(bytes, 8);
}

std::uint64_t get_bytes(std::istream& in, int count, const std::filesystem::path& path) {
  unsigned char bytes[8] = {};
  if (!in.read(reinterpret_cast<char*>(bytes), count)) {
    throw IoError("truncated grid file " + path.string());
  }
  std::uint64_t value = 0;
  for (int i = count - 1; i >= 0; --i) value = (value << 8) | bytes[i];
  return value;
}

std::uint32_t get_u32(std::istream& in, const std::filesystem::path& path) {
  return static_cast<std::uint32_t>(get_bytes(in, 4, path));
}

double get_f64(std::istream& in, const std::filesystem::path& path) {
  return std::bit_cast<double>(get_bytes(in, 8, path));
}

}  // namespace

void write_grid(const std::filesystem::path& path, const ComplexGrid& grid) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  const auto& g = grid.geometry;
  const auto dims = static_cast<std::size_t>(g.dims());
  out.write(kMagic, 4);
  put_u32(out, kGridFormatVersion);
  put_u32(out, static_cast<std::uint32_t>(dims));
  for (std::size_t axis = 0; axis < dims; ++axis) put_u32(out, static_cast<std::uint32_t>(g.points(axis)));
  for (std::size_t axis = 0; axis < dims; ++axis) {
    put_f64(out, g.extent(axis).min);
    put_f64(out, g.extent(axis).max);
  }
  for (const auto& z : grid.samples) {
    put_f64(out, z.real());
    put_f64(out, z.imag());
  }
  if (!out) throw IoError("write failed for " + path.string());
}

ComplexGrid read_grid(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  char magic[4];
  if (!in.read(magic, 4) || std::memcmp(magic, kMagic, 4) != 0) {
    throw IoError(path.string() + " is not a BFGD grid dump");
  }
  const std::uint32_t version = get_u32(in, path);
  if (version != kGridFormatVersion) {
    throw IoError("unsupported BFGD version " + std::to_string(version));
  }
  const std::uint32_t dims = get_u32(in, path);
  if (dims != 1 && dims != 3) throw IoError("BFGD dims must be 1 or 3");
  std::array<std::size_t, 3> points{1, 1, 1};
  std::array<AxisExtent, 3> extents{};
  for (std::size_t axis = 0; axis < dims; ++axis) points[axis] = get_u32(in, path);
  for (std::size_t axis = 0; axis < dims; ++axis) {
    extents[axis].min = get_f64(in, path);
    extents[axis].max = get_f64(in, path);
  }
  ComplexGrid grid(GridGeometry(static_cast<int>(dims), points, extents));
  for (auto& z : grid.samples) {
    const double re = get_f64(in, path);
    const double im = get_f64(in, path);
    z = {re, im};
  }
  return grid;
}

std::vector<std::filesystem::path> write_frames(const std::filesystem::path& directory,
                                                const Trajectory& trajectory) {
  std::filesystem::create_directories(directory);
  std::vector<std::filesystem::path> written;
  const auto manifest_path = directory / "frames.csv";
  std::ofstream manifest(manifest_path);
  if (!manifest) throw IoError("cannot open " + manifest_path.string());
  manifest << "frame,t,file\n";
  for (std::size_t i = 0; i < trajectory.frames.size(); ++i) {
    char name[32];
    std::snprintf(name, sizeof name, "frame_%05zu.bfgd", i);
    const auto& [t, grid] = trajectory.frames[i];
    write_grid(directory / name, grid);
    written.push_back(directory / name);
    char t_text[32];
    std::snprintf(t_text, sizeof t_text, "%.17g", t);
    manifest << i << ',' << t_text << ',' << name << '\n';
  }
  written.push_back(manifest_path);
  return written;
}

}  // namespace breather
