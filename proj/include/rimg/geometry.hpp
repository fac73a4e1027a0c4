#pragma once

#include <array>
#include <cstddef>
#include <string>

#include "rimg/tensor.hpp"

namespace rimg {

enum class TaskId { ScatteringDiagnosis = 1, PersonScreen = 2, ParcelScreen = 3 };

TaskId task_from_int(int id);
std::string to_string(TaskId task);

/// Planar monostatic aperture sampled on an nx-by-ny grid, stepped over nr
/// frequencies spanning [fc - bw/2, fc + bw/2). The image grid shares the
/// (nx, ny, nr) dims: transverse voxels sit under the aperture samples and
/// range bins are c/(2 bw) apart, centred on z0.
struct RadarGeometry {
  std::size_t nx = 32;
  std::size_t ny = 32;
  std::size_t nr = 64;
  double dx = 0.0;  ///< aperture spacing along x (m)
  double dy = 0.0;  ///< aperture spacing along y (m)
  double fc = 0.0;  ///< centre frequency (Hz)
  double bw = 0.0;  ///< bandwidth (Hz)
  double z0 = 0.0;  ///< centre range (m)
  double c = 2.99792458e8;

  /// Throws GeometryError when any invariant is violated.
  void validate() const;

  Dims dims() const { return {nx, ny, nr}; }
  double range_spacing() const { return c / (2.0 * bw); }
  /// Metres per voxel along (x, y, z).
  std::array<double, 3> voxel_spacing() const { return {dx, dy, range_spacing()}; }

  double frequency(std::size_t q) const;
  double wavenumber(std::size_t q) const;
  /// Transverse spatial frequencies (rad/m) of DFT bin u / v.
  double kx(std::size_t u) const;
  double ky(std::size_t v) const;

  /// Scene coordinates (m) of voxel / aperture sample (i, j, m).
  std::array<double, 3> voxel_position(std::size_t i, std::size_t j, std::size_t m) const;
  /// Nearest voxel to a scene position; throws GeometryError outside the grid.
  std::array<std::size_t, 3> nearest_voxel(const std::array<double, 3>& pos) const;
  /// Range of the first bin; the dechirp reference of the simulator.
  double range_start() const { return z0 - static_cast<double>(nr / 2) * range_spacing(); }

  bool operator==(const RadarGeometry&) const = default;
};

/// Table 1 system parameters for a task, discretised on an nx-by-ny-by-nr
/// grid (aperture spacing = array size / samples).
RadarGeometry table1_geometry(TaskId task, std::size_t nx = 32, std::size_t ny = 32,
                              std::size_t nr = 64);

/// Small, finely sampled aperture used for physical-oracle focus checks:
/// 30 GHz centre, 8 GHz bandwidth, 1 cm spacing, 0.5 m centre range.
RadarGeometry bench_geometry(std::size_t nx = 16, std::size_t ny = 16, std::size_t nr = 32);

/// Resolves "task1", "task2", "task3" or "bench".
RadarGeometry geometry_preset(const std::string& name, std::size_t nx = 32, std::size_t ny = 32,
                              std::size_t nr = 64);

}  // namespace rimg
