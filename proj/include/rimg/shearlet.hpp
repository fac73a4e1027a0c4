#pragma once

#include <cstddef>
#include <vector>

#include "rimg/tensor.hpp"

namespace rimg {

/// Where a frame filter sits in the frequency plane.
struct Subband {
  enum class Cone { Low, Horizontal, Vertical };
  Cone cone = Cone::Low;
  int scale = 0;  ///< 0 for the low-pass filter, 1..J from coarse to fine
  int shear = 0;  ///< -S..S within the cone
};

using FrameCoefficients = std::vector<ComplexTensor3>;

/// A Parseval tight frame acting on every frontal slice of a tensor. Each
/// filter is a real non-negative window on the 2D DFT grid and the squared
/// windows sum to one at every frequency, so adjoint(forward(x)) == x.
class FrameTransform {
 public:
  FrameTransform(std::size_t nx, std::size_t ny, std::vector<std::vector<double>> filters,
                 std::vector<Subband> subbands);

  FrameCoefficients forward(const ComplexTensor3& x) const;
  ComplexTensor3 adjoint(const FrameCoefficients& coeffs) const;

  std::size_t redundancy() const { return filters_.size(); }
  const std::vector<Subband>& subbands() const { return subbands_; }
  const std::vector<double>& filter(std::size_t f) const { return filters_[f]; }
  std::size_t nx() const { return nx_; }
  std::size_t ny() const { return ny_; }

  /// max relative error of adjoint(forward(x)) - x over a few random slices.
  double parseval_error(std::size_t trials = 3) const;

 private:
  std::size_t nx_, ny_;
  std::vector<std::vector<double>> filters_;  // nx*ny each, row-major (u*ny + v)
  std::vector<Subband> subbands_;
};

/// Band-limited cone-adapted shearlet-type frame on an n-by-n DFT grid.
/// Radial bands use Meyer transitions on max(|xi1|, |xi2|); each cone is
/// split into `shears` overlapping cosine windows in slope. n must be a power
/// of two >= 16, scales in {1, 2, 3}, shears odd. Throws DimensionError or
/// ParameterError; the Parseval property is checked before returning.
FrameTransform build_shearlet(std::size_t n, int scales = 2, int shears = 3);

}  // namespace rimg
