#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "rimg/operators.hpp"
#include "test_util.hpp"

using namespace rimg;
using rimg::testing::random_tensor;
using rimg::testing::rel_err;

namespace {

std::size_t argmax_abs(const ComplexTensor3& t) {
  std::size_t best = 0;
  for (std::size_t n = 1; n < t.size(); ++n)
    if (std::abs(t[n]) > std::abs(t[best])) best = n;
  return best;
}

double fftfreq(std::size_t u, std::size_t n) {
  const double s = static_cast<double>(u);
  return (2 * u < n ? s : s - static_cast<double>(n)) / static_cast<double>(n);
}

}  // namespace

TEST(Operators, FilterDimsMatchGeometry) {
  const RadarGeometry g = table1_geometry(TaskId::PersonScreen, 16, 8, 32);
  const OperatorPair op = build_operator_pair(g);
  EXPECT_EQ(op.filter().dims(), (Dims{16, 8, 32}));
  EXPECT_EQ(op.support().dims, (Dims{16, 8, 32}));
}

TEST(Operators, FilterIsUnitModulusOnSupportAndZeroOff) {
  RadarGeometry g = bench_geometry();
  g.dx = g.dy = 0.002;  // fine sampling leaves part of the grid evanescent
  const OperatorPair op = build_operator_pair(g);
  ASSERT_LT(op.support_fraction(), 1.0);
  std::size_t off = 0;
  for (std::size_t n = 0; n < op.filter().size(); ++n) {
    if (op.support().on[n]) {
      EXPECT_NEAR(std::abs(op.filter()[n]), 1.0, 1e-12);
    } else {
      EXPECT_EQ(op.filter()[n], cdouble(0.0, 0.0));
      ++off;
    }
  }
  EXPECT_GT(off, 0u);
}

TEST(Operators, FilterAtZeroTransverseWavenumber) {
  // sqrt(4k^2) - 2k vanishes, so the filter is exactly 1 along kx = ky = 0.
  const RadarGeometry g = table1_geometry(TaskId::ScatteringDiagnosis);
  const OperatorPair op = build_operator_pair(g);
  for (std::size_t q = 0; q < g.nr; ++q) {
    EXPECT_NEAR(std::abs(op.filter()(0, 0, q) - cdouble(1.0, 0.0)), 0.0, 1e-12);
  }
}

TEST(Operators, FilterMatchesClosedForm) {
  const RadarGeometry g = bench_geometry();
  const OperatorPair op = build_operator_pair(g);
  const double c = 2.99792458e8;
  for (auto [u, v, q] : {std::array<std::size_t, 3>{3, 5, 7}, {15, 1, 0}, {8, 8, 31}, {1, 12, 20}}) {
    const double f = 30e9 - 4e9 + static_cast<double>(q) * 8e9 / 32.0;
    const double k = 2.0 * std::numbers::pi * f / c;
    const double kx = 2.0 * std::numbers::pi * fftfreq(u, 16) / 0.01;
    const double ky = 2.0 * std::numbers::pi * fftfreq(v, 16) / 0.01;
    const double kz2 = 4 * k * k - kx * kx - ky * ky;
    const cdouble expected = kz2 >= 0 ? std::polar(1.0, 0.5 * (std::sqrt(kz2) - 2 * k)) : cdouble{};
    EXPECT_NEAR(std::abs(op.filter()(u, v, q) - expected), 0.0, 1e-9) << u << "," << v << "," << q;
  }
}

TEST(Operators, SupportFractionMatchesBruteForceCount) {
  const double c = 2.99792458e8;
  RadarGeometry fine = bench_geometry();
  fine.dx = fine.dy = 0.002;
  for (const RadarGeometry& g : {table1_geometry(TaskId::ScatteringDiagnosis), table1_geometry(TaskId::PersonScreen),
                                 bench_geometry(), fine}) {
    std::size_t count = 0;
    for (std::size_t u = 0; u < g.nx; ++u)
      for (std::size_t v = 0; v < g.ny; ++v)
        for (std::size_t q = 0; q < g.nr; ++q) {
          const double f = g.fc - g.bw / 2 + static_cast<double>(q) * g.bw / static_cast<double>(g.nr);
          const double k = 2 * std::numbers::pi * f / c;
          const double kx = 2 * std::numbers::pi * fftfreq(u, g.nx) / g.dx;
          const double ky = 2 * std::numbers::pi * fftfreq(v, g.ny) / g.dy;
          if (4 * k * k >= kx * kx + ky * ky) ++count;
        }
    const OperatorPair op = build_operator_pair(g);
    EXPECT_EQ(op.support().count(), count);
    EXPECT_DOUBLE_EQ(op.support_fraction(), static_cast<double>(count) / static_cast<double>(g.dims().count()));
  }
}

TEST(Operators, Task1GeometryIsFullyPropagating) {
  const OperatorPair op = build_operator_pair(table1_geometry(TaskId::ScatteringDiagnosis));
  EXPECT_EQ(op.support_fraction(), 1.0);
}

TEST(Operators, ZeroMapsToZero) {
  const OperatorPair op = build_operator_pair(bench_geometry());
  const ComplexTensor3 zero(op.dims());
  EXPECT_EQ(frob_norm(imaging(op, zero)), 0.0);
  EXPECT_EQ(frob_norm(echo_generation(op, zero)), 0.0);
}

TEST(Operators, IdentityFilterIsIdentity) {
  const RadarGeometry g = bench_geometry();
  Mask3 all(g.dims());
  std::fill(all.on.begin(), all.on.end(), 1);
  const OperatorPair op(g, ComplexTensor3(g.dims(), 1.0), all);
  const ComplexTensor3 y = random_tensor(g.dims(), 1);
  EXPECT_LT(rel_err(imaging(op, y), y), 1e-12);
  EXPECT_LT(rel_err(echo_generation(op, y), y), 1e-12);
}

TEST(Operators, Adjointness) {
  RadarGeometry g = bench_geometry();
  g.dx = g.dy = 0.002;
  const OperatorPair op = build_operator_pair(g);
  for (std::uint64_t s = 0; s < 5; ++s) {
    const ComplexTensor3 x = random_tensor(g.dims(), 10 + s), y = random_tensor(g.dims(), 20 + s);
    const cdouble lhs = inner(imaging(op, y), x);
    const cdouble rhs = inner(y, echo_generation(op, x));
    EXPECT_LE(std::abs(lhs - rhs), 1e-10 * frob_norm(x) * frob_norm(y));
  }
}

TEST(Operators, BandLimitedRoundTripAndProjection) {
  RadarGeometry g = bench_geometry();
  g.dx = g.dy = 0.002;
  const OperatorPair op = build_operator_pair(g);
  const ComplexTensor3 x = random_tensor(g.dims(), 3);
  const ComplexTensor3 xp = ifft3(hadamard(fft3(x), [&] {
    ComplexTensor3 m(g.dims());
    for (std::size_t n = 0; n < m.size(); ++n) m[n] = op.support().on[n] ? 1.0 : 0.0;
    return m;
  }()));
  EXPECT_LT(rel_err(project_to_support(op, x), xp), 1e-12);
  EXPECT_LE(frob_norm(imaging(op, echo_generation(op, xp)) - xp), 1e-10 * frob_norm(xp));
  // f_ig o f_eg is the spectral projection: idempotent, and a strict projection here.
  const ComplexTensor3 once = imaging(op, echo_generation(op, x));
  const ComplexTensor3 twice = imaging(op, echo_generation(op, once));
  EXPECT_LE(frob_norm(twice - once), 1e-10 * frob_norm(once));
  EXPECT_LT(frob_norm(once), frob_norm(x));
}

TEST(Operators, Linearity) {
  const OperatorPair op = build_operator_pair(bench_geometry());
  const ComplexTensor3 a = random_tensor(op.dims(), 4), b = random_tensor(op.dims(), 5);
  const cdouble alpha{1.5, -0.5}, beta{-0.2, 3.0};
  EXPECT_LT(rel_err(imaging(op, alpha * a + beta * b), alpha * imaging(op, a) + beta * imaging(op, b)), 1e-12);
  EXPECT_LT(rel_err(echo_generation(op, alpha * a + beta * b),
                    alpha * echo_generation(op, a) + beta * echo_generation(op, b)),
            1e-12);
}

TEST(Operators, CentredPointRefocuses) {
  const RadarGeometry g = bench_geometry(16, 16, 32);
  const OperatorPair op = build_operator_pair(g);
  ComplexTensor3 x(g.dims());
  x(8, 8, 16) = 1.0;
  const ComplexTensor3 img = imaging(op, echo_generation(op, x));
  EXPECT_EQ(argmax_abs(img), x.offset(8, 8, 16));
}

TEST(Operators, DimensionMismatchThrows) {
  const OperatorPair op = build_operator_pair(bench_geometry());
  EXPECT_THROW(imaging(op, ComplexTensor3({16, 16, 16})), DimensionError);
  EXPECT_THROW(echo_generation(op, ComplexTensor3({8, 16, 32})), DimensionError);
}

TEST(Operators, InvalidGeometryThrows) {
  RadarGeometry g = bench_geometry();
  g.bw = 80e9;  // fc <= bw / 2
  EXPECT_THROW(build_operator_pair(g), GeometryError);
  g = bench_geometry();
  g.dx = 0.0;
  EXPECT_THROW(build_operator_pair(g), GeometryError);
  g = bench_geometry();
  g.nx = 1;
  EXPECT_THROW(build_operator_pair(g), GeometryError);
}
