#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "rimg/geometry.hpp"
#include "rimg/simulator.hpp"
#include "rimg/tensor.hpp"

namespace rimg {

/// Real 2D image, row-major.
struct Image2D {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> px;

  Image2D() = default;
  Image2D(std::size_t r, std::size_t c, double fill = 0.0) : rows(r), cols(c), px(r * c, fill) {}
  double& operator()(std::size_t r, std::size_t c) { return px[r * cols + c]; }
  double operator()(std::size_t r, std::size_t c) const { return px[r * cols + c]; }
  double max() const;
};

/// Per pixel max of |img| along `axis` (0 = x, 1 = y, 2 = z). The remaining
/// two indices keep their order: axis 2 gives an nx-by-ny image.
Image2D max_intensity_projection(const ComplexTensor3& img, int axis);

inline constexpr std::size_t kSsimWindow = 8;

/// Mean SSIM over all fully contained window-by-window patches (stride 1,
/// uniform weights, sample variances). Both images are divided by their
/// joint max first, so L = 1, C1 = 1e-4, C2 = 9e-4. Two all-zero images give 1.
double ssim(const Image2D& a, const Image2D& b, std::size_t window = kSsimWindow);

/// 20 log10(max_{mask} |img| / mean_{not mask} |img|) in dB; +inf when the
/// background mean is exactly zero.
double tbr(const ComplexTensor3& img, const Mask3& target);

/// Nonzero voxels of t.
Mask3 support_of(const ComplexTensor3& t);
/// Dilation by `radius` voxels over the 26-neighbourhood (Chebyshev ball).
Mask3 dilate(const Mask3& m, std::size_t radius = 1);

inline constexpr double kReeRadius = 3.0;

/// For every scatterer: the largest |est| within a Euclidean radius of
/// kReeRadius voxels of its nearest voxel, then | peak - |a| | / |a|.
/// Magnitudes, not squared magnitudes. Throws ConfigError for scenes with
/// distributed scatterers or interference.
std::vector<double> relative_energy_error(const ComplexTensor3& est, const Scene& truth,
                                          const RadarGeometry& g);

/// True when relative_energy_error accepts the scene.
bool is_point_scene(const Scene& scene);

/// Metric values plus the settings that produced them.
struct MetricReport {
  std::vector<double> ree;
  std::optional<double> mean_ree;
  std::optional<double> ssim;
  std::optional<double> tbr_db;

  std::string ree_convention = "magnitude";
  double ree_radius_voxels = kReeRadius;
  std::size_t ssim_window = kSsimWindow;
  std::string ssim_projection = "max_intensity";
  int ssim_axis = 2;
  std::string tbr_mask = "truth_support_dilated";
  std::size_t tbr_dilation = 1;

  bool operator==(const MetricReport&) const = default;
};

}  // namespace rimg
