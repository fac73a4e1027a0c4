#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "rimg/metrics.hpp"
#include "rimg/simulator.hpp"
#include "test_util.hpp"

using namespace rimg;
using rimg::testing::random_tensor;

namespace {

Image2D random_image(std::size_t r, std::size_t c, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Image2D img(r, c);
  for (double& v : img.px) v = u(rng);
  return img;
}

// SSIM of one window covering the whole image, straight from the definition.
double single_window_ssim(const Image2D& a, const Image2D& b) {
  const double peak = std::max(a.max(), b.max());
  const double n = static_cast<double>(a.px.size());
  double ma = 0, mb = 0;
  for (std::size_t p = 0; p < a.px.size(); ++p) {
    ma += a.px[p] / peak / n;
    mb += b.px[p] / peak / n;
  }
  double va = 0, vb = 0, cov = 0;
  for (std::size_t p = 0; p < a.px.size(); ++p) {
    const double x = a.px[p] / peak - ma, y = b.px[p] / peak - mb;
    va += x * x / (n - 1);
    vb += y * y / (n - 1);
    cov += x * y / (n - 1);
  }
  const double c1 = 1e-4, c2 = 9e-4;
  return (2 * ma * mb + c1) * (2 * cov + c2) / ((ma * ma + mb * mb + c1) * (va + vb + c2));
}

void set(Mask3& m, std::size_t i, std::size_t j, std::size_t k) {
  m.on[(i * m.dims.ny + j) * m.dims.nz + k] = 1;
}

Scene three_points(const RadarGeometry& g) {
  Scene s;
  s.scatterers.push_back({g.voxel_position(4, 4, 4), 1.0, false});
  s.scatterers.push_back({g.voxel_position(10, 10, 20), cdouble(0.0, 0.5), false});
  s.scatterers.push_back({g.voxel_position(3, 12, 26), 0.25, false});
  return s;
}

}  // namespace

TEST(Ree, ExactEstimateGivesZero) {
  const RadarGeometry g = bench_geometry(16, 16, 32);
  const Scene s = three_points(g);
  for (double e : relative_energy_error(voxelize(s.scatterers, g), s, g)) EXPECT_EQ(e, 0.0);
}

TEST(Ree, UniformScalingGivesScaleError) {
  const RadarGeometry g = bench_geometry(16, 16, 32);
  const Scene s = three_points(g);
  ComplexTensor3 est = voxelize(s.scatterers, g);
  est *= 1.1;
  for (double e : relative_energy_error(est, s, g)) EXPECT_NEAR(e, 0.1, 1e-12);
  est = voxelize(s.scatterers, g);
  est *= 2.0;
  for (double e : relative_energy_error(est, s, g)) EXPECT_NEAR(e, 1.0, 1e-12);
}

TEST(Ree, PeakSearchUsesRadiusThree) {
  const RadarGeometry g = bench_geometry(16, 16, 32);
  Scene s;
  s.scatterers.push_back({g.voxel_position(8, 8, 16), 1.0, false});
  ComplexTensor3 est(g.dims());
  est(8, 8, 19) = 0.9;  // distance 3: inside
  EXPECT_NEAR(relative_energy_error(est, s, g)[0], 0.1, 1e-12);
  est(8, 8, 19) = 0.0;
  est(10, 10, 17) = 0.8;  // distance 3: inside
  EXPECT_NEAR(relative_energy_error(est, s, g)[0], 0.2, 1e-12);
  est(10, 10, 17) = 0.0;
  est(10, 10, 18) = 0.8;  // distance sqrt(12): outside
  EXPECT_EQ(relative_energy_error(est, s, g)[0], 1.0);
}

TEST(Ree, EmptyNeighbourhoodGivesOne) {
  const RadarGeometry g = bench_geometry(16, 16, 32);
  const Scene s = three_points(g);
  for (double e : relative_energy_error(ComplexTensor3(g.dims()), s, g)) EXPECT_EQ(e, 1.0);
}

TEST(Ree, RejectsNonPointScenes) {
  const RadarGeometry g = bench_geometry(16, 16, 32);
  Scene s = three_points(g);
  s.scatterers[1].distributed = true;
  EXPECT_FALSE(is_point_scene(s));
  EXPECT_THROW(relative_energy_error(ComplexTensor3(g.dims()), s, g), ConfigError);
  s = three_points(g);
  s.interference = ComplexTensor3(g.dims());
  EXPECT_THROW(relative_energy_error(ComplexTensor3(g.dims()), s, g), ConfigError);
  EXPECT_TRUE(is_point_scene(three_points(g)));
}

TEST(Ssim, IdenticalImagesGiveOne) {
  const Image2D a = random_image(20, 24, 1);
  EXPECT_NEAR(ssim(a, a), 1.0, 1e-12);
  EXPECT_EQ(ssim(Image2D(8, 8), Image2D(8, 8)), 1.0);
}

TEST(Ssim, ComplementaryHalfPlanesScoreLow) {
  Image2D a(64, 64), b(64, 64);
  for (std::size_t r = 0; r < 64; ++r)
    for (std::size_t c = 0; c < 64; ++c) {
      a(r, c) = c < 32 ? 1.0 : 0.0;
      b(r, c) = 1.0 - a(r, c);
    }
  EXPECT_LT(ssim(a, b), 0.1);
}

TEST(Ssim, MatchesDefinitionOnOneWindow) {
  for (std::uint64_t s = 0; s < 5; ++s) {
    const Image2D a = random_image(8, 8, 10 + s), b = random_image(8, 8, 20 + s);
    EXPECT_NEAR(ssim(a, b), single_window_ssim(a, b), 1e-12);
  }
}

TEST(Ssim, AveragesAllWindows) {
  const Image2D a = random_image(9, 10, 3), b = random_image(9, 10, 4);
  const double peak = std::max(a.max(), b.max());
  double total = 0;
  int count = 0;
  for (std::size_t r0 = 0; r0 + 8 <= 9; ++r0)
    for (std::size_t c0 = 0; c0 + 8 <= 10; ++c0) {
      Image2D wa(8, 8), wb(8, 8);
      for (std::size_t r = 0; r < 8; ++r)
        for (std::size_t c = 0; c < 8; ++c) {
          wa(r, c) = a(r0 + r, c0 + c);
          wb(r, c) = b(r0 + r, c0 + c);
        }
      // Normalised by the joint max of the full images, not of the window.
      const double n = 64;
      double ma = 0, mb = 0;
      for (std::size_t p = 0; p < 64; ++p) {
        ma += wa.px[p] / peak / n;
        mb += wb.px[p] / peak / n;
      }
      double va = 0, vb = 0, cov = 0;
      for (std::size_t p = 0; p < 64; ++p) {
        const double x = wa.px[p] / peak - ma, y = wb.px[p] / peak - mb;
        va += x * x / 63;
        vb += y * y / 63;
        cov += x * y / 63;
      }
      total += (2 * ma * mb + 1e-4) * (2 * cov + 9e-4) / ((ma * ma + mb * mb + 1e-4) * (va + vb + 9e-4));
      ++count;
    }
  EXPECT_NEAR(ssim(a, b), total / count, 1e-12);
}

TEST(Ssim, SymmetricAndScaleFree) {
  const Image2D a = random_image(16, 16, 5), b = random_image(16, 16, 6);
  EXPECT_NEAR(ssim(a, b), ssim(b, a), 1e-12);
  Image2D a3 = a, b3 = b;
  for (double& v : a3.px) v *= 3;
  for (double& v : b3.px) v *= 3;
  EXPECT_NEAR(ssim(a3, b3), ssim(a, b), 1e-12);
  const double v = ssim(a, b);
  EXPECT_GE(v, -1.0);
  EXPECT_LE(v, 1.0);
}

TEST(Ssim, RejectsBadSizes) {
  EXPECT_THROW(ssim(Image2D(8, 8), Image2D(8, 9)), DimensionError);
  EXPECT_THROW(ssim(Image2D(7, 8), Image2D(7, 8)), DimensionError);
}

TEST(Tbr, MaskImageIsInfinite) {
  ComplexTensor3 img({4, 4, 4});
  Mask3 m({4, 4, 4});
  set(m, 1, 2, 3);
  set(m, 0, 0, 0);
  img(1, 2, 3) = 1.0;
  img(0, 0, 0) = 1.0;
  EXPECT_EQ(tbr(img, m), std::numeric_limits<double>::infinity());
}

TEST(Tbr, UniformMagnitudeIsZeroDb) {
  ComplexTensor3 img({4, 4, 4});
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> ph(0, 6.28);
  for (auto& z : img.values()) z = std::polar(2.0, ph(rng));
  Mask3 m({4, 4, 4});
  set(m, 2, 2, 2);
  EXPECT_NEAR(tbr(img, m), 0.0, 1e-12);
}

TEST(Tbr, MatchesDefinitionAndIsScaleInvariant) {
  const ComplexTensor3 img = random_tensor({6, 5, 4}, 3);
  Mask3 m({6, 5, 4});
  for (std::size_t k = 0; k < 4; ++k) set(m, 2, 2, k);
  double peak = 0, bg = 0;
  std::size_t nb = 0;
  for (std::size_t n = 0; n < img.size(); ++n) {
    if (m.on[n]) {
      peak = std::max(peak, std::abs(img[n]));
    } else {
      bg += std::abs(img[n]);
      ++nb;
    }
  }
  const double expected = 20 * std::log10(peak / (bg / double(nb)));
  EXPECT_NEAR(tbr(img, m), expected, 1e-12);
  ComplexTensor3 scaled = img;
  scaled *= 7.5;
  EXPECT_NEAR(tbr(scaled, m), tbr(img, m), 1e-10);
}

TEST(Tbr, RejectsDegenerateMasks) {
  const ComplexTensor3 img = random_tensor({2, 2, 2}, 3);
  Mask3 m({2, 2, 2});
  EXPECT_THROW(tbr(img, m), ParameterError);
  for (auto& v : m.on) v = 1;
  EXPECT_THROW(tbr(img, m), ParameterError);
}

TEST(Masks, SupportAndDilation) {
  ComplexTensor3 t({5, 5, 5});
  t(2, 2, 2) = cdouble(0.0, 1e-30);
  const Mask3 s = support_of(t);
  EXPECT_EQ(s.count(), 1u);
  EXPECT_EQ(dilate(s, 1).count(), 27u);
  EXPECT_EQ(dilate(s, 2).count(), 125u);
  ComplexTensor3 corner({5, 5, 5});
  corner(0, 0, 0) = 1.0;
  EXPECT_EQ(dilate(support_of(corner), 1).count(), 8u);
}

TEST(Projection, SingleVoxel) {
  ComplexTensor3 t({4, 5, 6});
  t(1, 3, 4) = cdouble(0.0, -2.0);
  const Image2D z = max_intensity_projection(t, 2);
  EXPECT_EQ(z.rows, 4u);
  EXPECT_EQ(z.cols, 5u);
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 5; ++c) EXPECT_EQ(z(r, c), (r == 1 && c == 3) ? 2.0 : 0.0);
  const Image2D x = max_intensity_projection(t, 0);
  EXPECT_EQ(x.rows, 5u);
  EXPECT_EQ(x.cols, 6u);
  EXPECT_EQ(x(3, 4), 2.0);
  const Image2D y = max_intensity_projection(t, 1);
  EXPECT_EQ(y.rows, 4u);
  EXPECT_EQ(y(1, 4), 2.0);
  EXPECT_THROW(max_intensity_projection(t, 3), ParameterError);
}

TEST(Projection, InvariantToPermutingCollapsedAxis) {
  const ComplexTensor3 t = random_tensor({4, 5, 6}, 2);
  ComplexTensor3 p(t.dims());
  const std::size_t perm[6] = {3, 0, 5, 1, 4, 2};
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 5; ++j)
      for (std::size_t k = 0; k < 6; ++k) p(i, j, perm[k]) = t(i, j, k);
  EXPECT_EQ(max_intensity_projection(p, 2).px, max_intensity_projection(t, 2).px);
}

TEST(Projection, ThreeAxesRecoverPhantomBoundingBox) {
  const RadarGeometry g = table1_geometry(TaskId::PersonScreen);
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    const Phantom p = make_phantom(TaskId::PersonScreen, g, seed);
    const Dims d = g.dims();
    std::array<std::size_t, 3> lo = {d.nx, d.ny, d.nz}, hi = {0, 0, 0};
    for (std::size_t i = 0; i < d.nx; ++i)
      for (std::size_t j = 0; j < d.ny; ++j)
        for (std::size_t k = 0; k < d.nz; ++k)
          if (p.truth(i, j, k) != cdouble{}) {
            const std::array<std::size_t, 3> v = {i, j, k};
            for (int a = 0; a < 3; ++a) {
              lo[a] = std::min(lo[a], v[a]);
              hi[a] = std::max(hi[a], v[a]);
            }
          }
    // Each index range from the projections that keep it.
    auto range = [](const Image2D& img, bool rows) {
      std::size_t a = SIZE_MAX, b = 0;
      for (std::size_t r = 0; r < img.rows; ++r)
        for (std::size_t c = 0; c < img.cols; ++c)
          if (img(r, c) > 0) {
            const std::size_t v = rows ? r : c;
            a = std::min(a, v);
            b = std::max(b, v);
          }
      return std::pair{a, b};
    };
    const Image2D px = max_intensity_projection(p.truth, 0), py = max_intensity_projection(p.truth, 1),
                  pz = max_intensity_projection(p.truth, 2);
    EXPECT_EQ(range(pz, true), (std::pair{lo[0], hi[0]}));
    EXPECT_EQ(range(py, true), (std::pair{lo[0], hi[0]}));
    EXPECT_EQ(range(pz, false), (std::pair{lo[1], hi[1]}));
    EXPECT_EQ(range(px, true), (std::pair{lo[1], hi[1]}));
    EXPECT_EQ(range(px, false), (std::pair{lo[2], hi[2]}));
    EXPECT_EQ(range(py, false), (std::pair{lo[2], hi[2]}));
  }
}
