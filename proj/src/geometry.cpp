#include "rimg/geometry.hpp"

#include <cmath>
#include <numbers>

namespace rimg {

TaskId task_from_int(int id) {
  switch (id) {
    case 1: return TaskId::ScatteringDiagnosis;
    case 2: return TaskId::PersonScreen;
    case 3: return TaskId::ParcelScreen;
    default: throw ConfigError("unknown task " + std::to_string(id));
  }
}

std::string to_string(TaskId task) {
  switch (task) {
    case TaskId::ScatteringDiagnosis: return "scattering_diagnosis";
    case TaskId::PersonScreen: return "person_screen";
    case TaskId::ParcelScreen: return "parcel_screen";
  }
  return "unknown";
}

void RadarGeometry::validate() const {
  auto fail = [](const std::string& msg) { throw GeometryError("invalid geometry: " + msg); };
  if (nx < 2 || ny < 2 || nr < 2) fail("sample counts must be >= 2");
  if (!(bw > 0.0)) fail("bandwidth must be positive");
  if (!(fc > bw / 2.0)) fail("centre frequency must exceed half the bandwidth");
  if (!(dx > 0.0) || !(dy > 0.0)) fail("aperture spacing must be positive");
  if (!(z0 > 0.0)) fail("centre range must be positive");
  if (!(c > 0.0)) fail("propagation speed must be positive");
  for (double v : {dx, dy, fc, bw, z0, c}) {
    if (!std::isfinite(v)) fail("non-finite parameter");
  }
  (void)dims().count();
}

double RadarGeometry::frequency(std::size_t q) const {
  return fc - bw / 2.0 + static_cast<double>(q) * bw / static_cast<double>(nr);
}

double RadarGeometry::wavenumber(std::size_t q) const {
  return 2.0 * std::numbers::pi * frequency(q) / c;
}

namespace {
double fft_frequency(std::size_t u, std::size_t n) {
  const auto su = static_cast<double>(u);
  const auto sn = static_cast<double>(n);
  return (u < (n + 1) / 2 ? su : su - sn) / sn;
}
}  // namespace

double RadarGeometry::kx(std::size_t u) const {
  return 2.0 * std::numbers::pi * fft_frequency(u, nx) / dx;
}

double RadarGeometry::ky(std::size_t v) const {
  return 2.0 * std::numbers::pi * fft_frequency(v, ny) / dy;
}

std::array<double, 3> RadarGeometry::voxel_position(std::size_t i, std::size_t j,
                                                    std::size_t m) const {
  return {(static_cast<double>(i) - static_cast<double>(nx / 2)) * dx,
          (static_cast<double>(j) - static_cast<double>(ny / 2)) * dy,
          range_start() + static_cast<double>(m) * range_spacing()};
}

std::array<std::size_t, 3> RadarGeometry::nearest_voxel(const std::array<double, 3>& pos) const {
  const std::array<double, 3> fidx = {
      pos[0] / dx + static_cast<double>(nx / 2),
      pos[1] / dy + static_cast<double>(ny / 2),
      (pos[2] - range_start()) / range_spacing(),
  };
  const std::array<std::size_t, 3> n = {nx, ny, nr};
  std::array<std::size_t, 3> out{};
  for (int a = 0; a < 3; ++a) {
    const double r = std::round(fidx[a]);
    if (!std::isfinite(r) || r < 0.0 || r >= static_cast<double>(n[a])) {
      throw GeometryError("position outside the image grid");
    }
    out[a] = static_cast<std::size_t>(r);
  }
  return out;
}

RadarGeometry table1_geometry(TaskId task, std::size_t nx, std::size_t ny, std::size_t nr) {
  RadarGeometry g;
  g.nx = nx;
  g.ny = ny;
  g.nr = nr;
  double aperture = 0.0;
  switch (task) {
    case TaskId::ScatteringDiagnosis:
      g.fc = 11e9;
      g.bw = 2e9;
      aperture = 5.0;
      g.z0 = 15.0;
      break;
    case TaskId::PersonScreen:
    case TaskId::ParcelScreen:
      g.fc = 79e9;
      g.bw = 4e9;
      aperture = 0.4;
      g.z0 = 0.6;
      break;
  }
  g.dx = aperture / static_cast<double>(nx);
  g.dy = aperture / static_cast<double>(ny);
  g.validate();
  return g;
}

RadarGeometry bench_geometry(std::size_t nx, std::size_t ny, std::size_t nr) {
  RadarGeometry g;
  g.nx = nx;
  g.ny = ny;
  g.nr = nr;
  g.fc = 30e9;
  g.bw = 8e9;
  g.dx = 0.01;
  g.dy = 0.01;
  g.z0 = 0.5;
  g.validate();
  return g;
}

RadarGeometry geometry_preset(const std::string& name, std::size_t nx, std::size_t ny,
                              std::size_t nr) {
  if (name == "task1") return table1_geometry(TaskId::ScatteringDiagnosis, nx, ny, nr);
  if (name == "task2") return table1_geometry(TaskId::PersonScreen, nx, ny, nr);
  if (name == "task3") return table1_geometry(TaskId::ParcelScreen, nx, ny, nr);
  if (name == "bench") return bench_geometry(nx, ny, nr);
  throw ConfigError("unknown geometry preset '" + name + "'");
}

}  // namespace rimg
