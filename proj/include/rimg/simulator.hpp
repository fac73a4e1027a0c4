#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "rimg/geometry.hpp"
#include "rimg/operators.hpp"
#include "rimg/tensor.hpp"

namespace rimg {

struct Scatterer {
  std::array<double, 3> position{};  ///< scene coordinates (m)
  cdouble amplitude{0.0, 0.0};
  /// Part of an extended (distributed) target rather than an isolated point.
  bool distributed = false;
};

struct Scene {
  std::vector<Scatterer> scatterers;
  /// Additive image-domain interference, turned into echo by echo_generation.
  std::optional<ComplexTensor3> interference;
  std::size_t interference_rank = 0;
  double interference_energy_ratio = 0.0;
  /// Unset: noise-free.
  std::optional<double> snr_db;
  std::uint64_t seed = 0;
};

/// How scatterers become echoes.
enum class EchoModel {
  /// Exact spherical-wave stepped-frequency sum, then range compression.
  Physical,
  /// echo_generation applied to the voxelised scene.
  Approximated,
};

inline constexpr double kNoiseFree = std::numeric_limits<double>::infinity();

/// Raw stepped-frequency samples, sum_n a_n exp(-i 4 pi f_q R_n / c), with
/// R_n the distance from aperture sample (x_p, y_p, 0) to scatterer n.
ComplexTensor3 synthesize_spectrum(const Scene& scene, const RadarGeometry& g);

/// Dechirp against the first range bin, unitary inverse DFT over frequency,
/// and 1/sqrt(nx ny nr) scaling so a unit scatterer has a unit-energy echo.
ComplexTensor3 range_compress(const ComplexTensor3& spectrum, const RadarGeometry& g);

/// Range-compressed echo of a scene (operator echo domain), including
/// interference and noise when the scene declares them.
ComplexTensor3 synthesize_echo(const Scene& scene, const OperatorPair& op,
                               EchoModel model = EchoModel::Physical);
ComplexTensor3 synthesize_echo(const Scene& scene, const RadarGeometry& g,
                               EchoModel model = EchoModel::Physical);

/// Adds circular complex Gaussian noise at the requested SNR (dB, relative to
/// the input energy). snr_db = +inf returns the input unchanged.
ComplexTensor3 add_noise(const ComplexTensor3& y, double snr_db, std::uint64_t seed);

/// Scatterers accumulated onto their nearest voxels.
ComplexTensor3 voxelize(const std::vector<Scatterer>& scatterers, const RadarGeometry& g);

/// Count of singular values of frontal slice k above rel_tol * sigma_max.
std::size_t frontal_slice_rank(const ComplexTensor3& t, std::size_t k, double rel_tol = 1e-6);

struct Phantom {
  Scene scene;
  ComplexTensor3 truth;  ///< voxelised target (interference excluded)
};

/// Deterministic synthetic scene for a task:
///  - ScatteringDiagnosis: three isolated points with amplitudes 1, 0.5, 0.25.
///  - PersonScreen: a rifle-like silhouette of weak graded voxels with three
///    strong points on it.
///  - ParcelScreen: the PersonScreen target inside a rank-3-per-slice slab of
///    interference carrying 5x the target energy.
Phantom make_phantom(TaskId task, const RadarGeometry& g, std::uint64_t seed);

}  // namespace rimg
