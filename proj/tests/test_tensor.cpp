#include <gtest/gtest.h>

#include "rimg/tensor.hpp"
#include "test_util.hpp"

using namespace rimg;
using rimg::testing::random_tensor;
using rimg::testing::rel_err;

TEST(Tensor, LayoutIsKFastest) {
  ComplexTensor3 t({2, 3, 4});
  EXPECT_EQ(t.offset(0, 0, 1), 1u);
  EXPECT_EQ(t.offset(0, 1, 0), 4u);
  EXPECT_EQ(t.offset(1, 0, 0), 12u);
  EXPECT_EQ(t.size(), 24u);
}

TEST(Tensor, DataLengthMustMatchDims) {
  EXPECT_THROW(ComplexTensor3({2, 2, 2}, std::vector<cdouble>(7)), DimensionError);
}

TEST(Tensor, OverflowingDimsAreRejected) {
  const std::size_t big = std::size_t{1} << 40;
  EXPECT_THROW((Dims{big, big, big}.count()), DimensionError);
}

TEST(Fft3, DeltaGivesFlatSpectrum) {
  ComplexTensor3 t({4, 4, 4});
  t(0, 0, 0) = 1.0;
  const ComplexTensor3 f = fft3(t);
  for (const auto& z : f.values()) {
    EXPECT_NEAR(z.real(), 0.125, 1e-15);
    EXPECT_NEAR(z.imag(), 0.0, 1e-15);
  }
}

TEST(Fft3, RoundTrip) {
  const ComplexTensor3 t = random_tensor({8, 8, 16}, 1);
  EXPECT_LT(rel_err(ifft3(fft3(t)), t), 1e-12);
  EXPECT_LT(rel_err(fft3(ifft3(t)), t), 1e-12);
}

TEST(Fft3, RoundTripAtFullSize) {
  const ComplexTensor3 t = random_tensor({32, 32, 64}, 2);
  EXPECT_LT(rel_err(ifft3(fft3(t)), t), 1e-12);
}

TEST(Fft3, Parseval) {
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    const ComplexTensor3 t = random_tensor({8, 6, 10}, seed);
    EXPECT_LT(std::abs(frob_norm(fft3(t)) - frob_norm(t)) / frob_norm(t), 1e-12);
    EXPECT_LT(std::abs(frob_norm(ifft3(t)) - frob_norm(t)) / frob_norm(t), 1e-12);
  }
}

TEST(Fft3, ConstantGivesScaledDelta) {
  const cdouble c{0.7, -1.3};
  const std::size_t n = 6;
  const ComplexTensor3 f = ifft3(ComplexTensor3({n, n, n}, c));
  const cdouble expected = c * std::pow(static_cast<double>(n), 1.5);
  EXPECT_NEAR(std::abs(f(0, 0, 0) - expected), 0.0, 1e-12);
  double rest = 0.0;
  for (std::size_t k = 1; k < f.size(); ++k) rest = std::max(rest, std::abs(f[k]));
  EXPECT_LT(rest, 1e-12);
}

TEST(Fft3, Linearity) {
  const ComplexTensor3 a = random_tensor({8, 4, 6}, 3), b = random_tensor({8, 4, 6}, 4);
  const cdouble alpha{0.3, 2.0}, beta{-1.5, 0.25};
  const ComplexTensor3 lhs = fft3(alpha * a + beta * b);
  const ComplexTensor3 rhs = alpha * fft3(a) + beta * fft3(b);
  EXPECT_LT(rel_err(lhs, rhs), 1e-12);
}

TEST(Fft3, MatchesDirectDft) {
  const ComplexTensor3 t = random_tensor({2, 2, 2}, 5);
  const ComplexTensor3 f = fft3(t);
  const ComplexTensor3 ref = rimg::testing::naive_dft3(t);
  for (std::size_t n = 0; n < t.size(); ++n) EXPECT_LT(std::abs(f[n] - ref[n]), 1e-12);
}

TEST(Fft3, MatchesDirectDftOnOddDims) {
  const ComplexTensor3 t = random_tensor({3, 5, 4}, 6);
  EXPECT_LT(frob_norm(fft3(t) - rimg::testing::naive_dft3(t)), 1e-12);
  EXPECT_LT(frob_norm(ifft3(t) - rimg::testing::naive_dft3(t, +1)), 1e-12);
}

TEST(Fft3, SeparableTransformsCompose) {
  const ComplexTensor3 t = random_tensor({8, 8, 8}, 7);
  EXPECT_LT(rel_err(fft_z(fft_xy(t)), fft3(t)), 1e-12);
  EXPECT_LT(rel_err(ifft_xy(fft_xy(t)), t), 1e-12);
  EXPECT_LT(rel_err(ifft_z(fft_z(t)), t), 1e-12);
}

TEST(Hadamard, OnesIsIdentity) {
  const ComplexTensor3 t = random_tensor({3, 4, 5}, 8);
  EXPECT_EQ(hadamard(t, ComplexTensor3(t.dims(), 1.0)), t);
}

TEST(Hadamard, WithConjugateIsSquaredModulus) {
  const ComplexTensor3 t = random_tensor({3, 4, 5}, 9);
  const ComplexTensor3 h = hadamard(t, conj(t));
  for (std::size_t n = 0; n < t.size(); ++n) {
    EXPECT_EQ(h[n].imag(), 0.0);
    EXPECT_GE(h[n].real(), 0.0);
    EXPECT_NEAR(h[n].real(), std::norm(t[n]), 1e-12);
  }
}

TEST(Hadamard, ScalarProduct) {
  const ComplexTensor3 a({1, 1, 1}, cdouble{1.0, 1.0});
  const ComplexTensor3 b({1, 1, 1}, cdouble{2.0, -1.0});
  EXPECT_EQ(hadamard(a, b)(0, 0, 0), cdouble(3.0, 1.0));
}

TEST(Hadamard, DimensionMismatchThrows) {
  EXPECT_THROW(hadamard(ComplexTensor3({2, 2, 2}), ComplexTensor3({2, 2, 3})), DimensionError);
  EXPECT_THROW(inner(ComplexTensor3({2, 2, 2}), ComplexTensor3({2, 3, 2})), DimensionError);
}

TEST(Inner, SelfInnerIsSquaredNorm) {
  const ComplexTensor3 t = random_tensor({4, 4, 4}, 10);
  const cdouble ip = inner(t, t);
  EXPECT_EQ(ip.imag(), 0.0);
  EXPECT_NEAR(ip.real(), frob_norm(t) * frob_norm(t), 1e-10);
}

TEST(Inner, HermitianSymmetry) {
  const ComplexTensor3 a = random_tensor({4, 3, 2}, 11), b = random_tensor({4, 3, 2}, 12);
  EXPECT_LT(std::abs(inner(a, b) - std::conj(inner(b, a))), 1e-12);
}

TEST(Inner, ZeroNorm) { EXPECT_EQ(frob_norm(ComplexTensor3({3, 3, 3})), 0.0); }

TEST(Tensor, FiniteAfterOperations) {
  const ComplexTensor3 t = random_tensor({4, 4, 8}, 13);
  EXPECT_TRUE(all_finite(fft3(t)));
  EXPECT_TRUE(all_finite(hadamard(t, t)));
  ComplexTensor3 bad = t;
  bad[3] = {std::nan(""), 0.0};
  EXPECT_FALSE(all_finite(bad));
}
