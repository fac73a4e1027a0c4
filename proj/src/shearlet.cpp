#include "rimg/shearlet.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace rimg {

FrameTransform::FrameTransform(std::size_t nx, std::size_t ny,
                               std::vector<std::vector<double>> filters,
                               std::vector<Subband> subbands)
    : nx_(nx), ny_(ny), filters_(std::move(filters)), subbands_(std::move(subbands)) {
  if (filters_.size() != subbands_.size()) {
    throw ParameterError("frame filter and subband lists differ in length");
  }
  for (const auto& f : filters_) {
    if (f.size() != nx_ * ny_) throw DimensionError("frame filter size does not match the grid");
  }
}

FrameCoefficients FrameTransform::forward(const ComplexTensor3& x) const {
  const Dims& d = x.dims();
  if (d.nx != nx_ || d.ny != ny_) {
    throw DimensionError("frame built for " + std::to_string(nx_) + "x" + std::to_string(ny_) +
                         " slices, got " + d.str());
  }
  const ComplexTensor3 spectrum = fft_xy(x);
  FrameCoefficients out;
  out.reserve(filters_.size());
  for (const auto& f : filters_) {
    ComplexTensor3 band = spectrum;
    cdouble* v = band.values().data();
    for (std::size_t p = 0; p < f.size(); ++p, v += d.nz) {
      for (std::size_t k = 0; k < d.nz; ++k) v[k] *= f[p];
    }
    out.push_back(ifft_xy(band));
  }
  return out;
}

ComplexTensor3 FrameTransform::adjoint(const FrameCoefficients& coeffs) const {
  if (coeffs.size() != filters_.size()) {
    throw DimensionError("expected " + std::to_string(filters_.size()) + " coefficient bands, got " +
                         std::to_string(coeffs.size()));
  }
  const Dims d = coeffs.front().dims();
  if (d.nx != nx_ || d.ny != ny_) throw DimensionError("coefficient dims do not match the frame");
  ComplexTensor3 acc(d);
  for (std::size_t f = 0; f < filters_.size(); ++f) {
    require_same_dims(coeffs[f].dims(), d, "frame adjoint");
    const ComplexTensor3 spectrum = fft_xy(coeffs[f]);
    const auto& w = filters_[f];
    const cdouble* src = spectrum.values().data();
    cdouble* dst = acc.values().data();
    for (std::size_t p = 0; p < w.size(); ++p, src += d.nz, dst += d.nz) {
      for (std::size_t k = 0; k < d.nz; ++k) dst[k] += src[k] * w[p];
    }
  }
  return ifft_xy(acc);
}

double FrameTransform::parseval_error(std::size_t trials) const {
  std::mt19937_64 rng(0x5eed);
  std::normal_distribution<double> normal;
  double worst = 0.0;
  for (std::size_t t = 0; t < trials; ++t) {
    ComplexTensor3 x({nx_, ny_, 1});
    for (auto& v : x.values()) v = {normal(rng), normal(rng)};
    const ComplexTensor3 back = adjoint(forward(x));
    worst = std::max(worst, frob_norm(back - x) / frob_norm(x));
  }
  return worst;
}

namespace {

double meyer(double x) {
  x = std::clamp(x, 0.0, 1.0);
  return x * x * x * x * (35.0 - 84.0 * x + 70.0 * x * x - 20.0 * x * x * x);
}

// 1 below a, 0 above 2a, smooth in between.
double lowpass(double rho, double a) {
  if (rho <= a) return 1.0;
  if (rho >= 2.0 * a) return 0.0;
  return std::cos(std::numbers::pi / 2.0 * meyer((rho - a) / a));
}

double slope_window(double t, int shear, int half) {
  if (half == 0) return 1.0;
  const double centre = static_cast<double>(shear) / half;
  const double x = half * (t - centre);
  if (std::abs(x) >= 1.0) return 0.0;
  return std::cos(std::numbers::pi / 2.0 * x);
}

double fft_frequency(std::size_t u, std::size_t n) {
  const auto su = static_cast<double>(u), sn = static_cast<double>(n);
  return (u < (n + 1) / 2 ? su : su - sn) / sn;
}

}  // namespace

FrameTransform build_shearlet(std::size_t n, int scales, int shears) {
  if (n < 16 || (n & (n - 1)) != 0) {
    throw DimensionError("shearlet grid must be a power of two >= 16, got " + std::to_string(n));
  }
  if (scales < 1 || scales > 3) throw ParameterError("shearlet scales must be 1, 2 or 3");
  if (shears < 1 || shears % 2 == 0) throw ParameterError("shears per cone must be odd and >= 1");

  const int half = (shears - 1) / 2;
  std::vector<double> cutoff(scales);
  for (int j = 0; j < scales; ++j) cutoff[j] = 0.125 * std::pow(2.0, -(scales - 1 - j));

  std::vector<std::vector<double>> filters;
  std::vector<Subband> subbands;
  auto add = [&](Subband sb) {
    filters.emplace_back(n * n, 0.0);
    subbands.push_back(sb);
    return filters.size() - 1;
  };
  const std::size_t low = add({Subband::Cone::Low, 0, 0});
  std::vector<std::size_t> bands;
  for (int j = 1; j <= scales; ++j) {
    for (auto cone : {Subband::Cone::Horizontal, Subband::Cone::Vertical}) {
      for (int s = -half; s <= half; ++s) bands.push_back(add({cone, j, s}));
    }
  }

  for (std::size_t u = 0; u < n; ++u) {
    const double xi1 = fft_frequency(u, n);
    for (std::size_t v = 0; v < n; ++v) {
      const double xi2 = fft_frequency(v, n);
      const std::size_t at = u * n + v;
      const double rho = std::max(std::abs(xi1), std::abs(xi2));
      filters[low][at] = lowpass(rho, cutoff[0]);
      if (rho == 0.0) continue;

      const bool horizontal = std::abs(xi2) <= std::abs(xi1);
      const double t = horizontal ? xi2 / xi1 : xi1 / xi2;
      std::size_t b = 0;
      for (int j = 1; j <= scales; ++j) {
        const double outer = j == scales ? 1.0 : lowpass(rho, cutoff[j]);
        const double inner = lowpass(rho, cutoff[j - 1]);
        const double radial = std::sqrt(std::max(0.0, outer * outer - inner * inner));
        for (auto cone : {Subband::Cone::Horizontal, Subband::Cone::Vertical}) {
          const bool in_cone = (cone == Subband::Cone::Horizontal) == horizontal;
          for (int s = -half; s <= half; ++s, ++b) {
            if (in_cone) filters[bands[b]][at] = radial * slope_window(t, s, half);
          }
        }
      }
    }
  }

  // Pointwise normalisation to an exact partition of unity in squares.
  for (std::size_t at = 0; at < n * n; ++at) {
    double sum = 0.0;
    for (const auto& f : filters) sum += f[at] * f[at];
    if (sum <= 0.0) throw ParameterError("shearlet windows leave a frequency uncovered");
    const double scale = 1.0 / std::sqrt(sum);
    for (auto& f : filters) f[at] *= scale;
  }

  FrameTransform frame(n, n, std::move(filters), std::move(subbands));
  if (const double err = frame.parseval_error(); err > 1e-6) {
    throw Error("shearlet frame failed the Parseval check (error " + std::to_string(err) + ")");
  }
  return frame;
}

}  // namespace rimg
