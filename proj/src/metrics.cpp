#include "rimg/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace rimg {

double Image2D::max() const {
  double m = 0.0;
  for (double v : px) m = std::max(m, v);
  return m;
}

Image2D max_intensity_projection(const ComplexTensor3& img, int axis) {
  const Dims d = img.dims();
  Image2D out;
  switch (axis) {
    case 0: out = Image2D(d.ny, d.nz); break;
    case 1: out = Image2D(d.nx, d.nz); break;
    case 2: out = Image2D(d.nx, d.ny); break;
    default: throw ParameterError("projection axis must be 0, 1 or 2");
  }
  for (std::size_t i = 0; i < d.nx; ++i)
    for (std::size_t j = 0; j < d.ny; ++j)
      for (std::size_t k = 0; k < d.nz; ++k) {
        const double v = std::abs(img(i, j, k));
        double& p = axis == 0 ? out(j, k) : axis == 1 ? out(i, k) : out(i, j);
        p = std::max(p, v);
      }
  return out;
}

double ssim(const Image2D& a, const Image2D& b, std::size_t window) {
  if (a.rows != b.rows || a.cols != b.cols) {
    throw DimensionError("ssim: image sizes differ");
  }
  if (window < 2 || a.rows < window || a.cols < window) {
    throw DimensionError("ssim: images smaller than the window");
  }
  const double peak = std::max(a.max(), b.max());
  if (peak == 0.0) return 1.0;
  constexpr double c1 = 0.01 * 0.01;
  constexpr double c2 = 0.03 * 0.03;
  const double n = static_cast<double>(window * window);
  double total = 0.0;
  std::size_t count = 0;
  for (std::size_t r0 = 0; r0 + window <= a.rows; ++r0) {
    for (std::size_t c0 = 0; c0 + window <= a.cols; ++c0) {
      double sa = 0, sb = 0;
      for (std::size_t r = r0; r < r0 + window; ++r)
        for (std::size_t c = c0; c < c0 + window; ++c) {
          sa += a(r, c) / peak;
          sb += b(r, c) / peak;
        }
      const double ma = sa / n, mb = sb / n;
      double vaa = 0, vbb = 0, vab = 0;
      for (std::size_t r = r0; r < r0 + window; ++r)
        for (std::size_t c = c0; c < c0 + window; ++c) {
          const double da = a(r, c) / peak - ma;
          const double db = b(r, c) / peak - mb;
          vaa += da * da;
          vbb += db * db;
          vab += da * db;
        }
      vaa /= n - 1;
      vbb /= n - 1;
      vab /= n - 1;
      total += ((2 * ma * mb + c1) * (2 * vab + c2)) / ((ma * ma + mb * mb + c1) * (vaa + vbb + c2));
      ++count;
    }
  }
  return total / static_cast<double>(count);
}

double tbr(const ComplexTensor3& img, const Mask3& target) {
  require_same_dims(img.dims(), target.dims, "tbr");
  const std::size_t on = target.count();
  if (on == 0) throw ParameterError("tbr: target mask is empty");
  if (on == img.size()) throw ParameterError("tbr: target mask covers the whole image");
  double peak = 0.0, background = 0.0;
  for (std::size_t n = 0; n < img.size(); ++n) {
    const double v = std::abs(img[n]);
    if (target.on[n]) {
      peak = std::max(peak, v);
    } else {
      background += v;
    }
  }
  background /= static_cast<double>(img.size() - on);
  if (background == 0.0) return std::numeric_limits<double>::infinity();
  return 20.0 * std::log10(peak / background);
}

Mask3 support_of(const ComplexTensor3& t) {
  Mask3 m(t.dims());
  for (std::size_t n = 0; n < t.size(); ++n) m.on[n] = t[n] != cdouble{0.0, 0.0};
  return m;
}

Mask3 dilate(const Mask3& m, std::size_t radius) {
  const Dims d = m.dims;
  Mask3 out(d);
  const auto lo = [&](std::size_t v) { return v >= radius ? v - radius : 0; };
  const auto hi = [&](std::size_t v, std::size_t n) { return std::min(v + radius, n - 1); };
  for (std::size_t i = 0; i < d.nx; ++i)
    for (std::size_t j = 0; j < d.ny; ++j)
      for (std::size_t k = 0; k < d.nz; ++k) {
        if (!m(i, j, k)) continue;
        for (std::size_t a = lo(i); a <= hi(i, d.nx); ++a)
          for (std::size_t b = lo(j); b <= hi(j, d.ny); ++b)
            for (std::size_t c = lo(k); c <= hi(k, d.nz); ++c) out.on[(a * d.ny + b) * d.nz + c] = 1;
      }
  return out;
}

bool is_point_scene(const Scene& scene) {
  if (scene.interference || scene.interference_rank > 0) return false;
  return std::none_of(scene.scatterers.begin(), scene.scatterers.end(),
                      [](const Scatterer& s) { return s.distributed; });
}

std::vector<double> relative_energy_error(const ComplexTensor3& est, const Scene& truth,
                                          const RadarGeometry& g) {
  require_same_dims(est.dims(), g.dims(), "relative_energy_error");
  if (!is_point_scene(truth)) {
    throw ConfigError("relative energy error needs a point-scatterer scene without interference");
  }
  if (truth.scatterers.empty()) throw ConfigError("relative energy error: scene has no scatterers");
  const Dims d = est.dims();
  const long r = static_cast<long>(kReeRadius);
  std::vector<double> out;
  for (const Scatterer& s : truth.scatterers) {
    const double a = std::abs(s.amplitude);
    if (a == 0.0) throw ConfigError("relative energy error: scatterer with zero amplitude");
    const auto v = g.nearest_voxel(s.position);
    double peak = 0.0;
    for (long di = -r; di <= r; ++di)
      for (long dj = -r; dj <= r; ++dj)
        for (long dk = -r; dk <= r; ++dk) {
          if (static_cast<double>(di * di + dj * dj + dk * dk) > kReeRadius * kReeRadius) continue;
          const long i = static_cast<long>(v[0]) + di;
          const long j = static_cast<long>(v[1]) + dj;
          const long k = static_cast<long>(v[2]) + dk;
          if (i < 0 || j < 0 || k < 0 || i >= static_cast<long>(d.nx) || j >= static_cast<long>(d.ny) ||
              k >= static_cast<long>(d.nz))
            continue;
          peak = std::max(peak, std::abs(est(i, j, k)));
        }
    out.push_back(std::abs(peak - a) / a);
  }
  return out;
}

}  // namespace rimg
