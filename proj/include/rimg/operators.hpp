#pragma once

#include "rimg/geometry.hpp"
#include "rimg/tensor.hpp"

namespace rimg {

/// The approximated observation pair sharing one phase-compensation filter.
///
/// The echo domain is the range-compressed echo (aperture x, aperture y,
/// range bin). After fft3, the third spectral index q is the stepped
/// frequency f_q of the geometry, and the filter is
///
///   pc(u, v, q) = exp(i z0 (sqrt(4 k_q^2 - kx_u^2 - ky_v^2) - 2 k_q))
///
/// on the propagating region 4 k^2 >= kx^2 + ky^2 and exactly zero elsewhere.
/// imaging and echo_generation are mutually adjoint and their composition is
/// the spectral projection onto that region.
class OperatorPair {
 public:
  OperatorPair(RadarGeometry geometry, ComplexTensor3 pc, Mask3 support);

  const RadarGeometry& geometry() const { return geometry_; }
  const ComplexTensor3& filter() const { return pc_; }
  const Mask3& support() const { return support_; }
  Dims dims() const { return pc_.dims(); }
  double support_fraction() const;

 private:
  RadarGeometry geometry_;
  ComplexTensor3 pc_;
  Mask3 support_;
};

OperatorPair build_operator_pair(const RadarGeometry& g);

/// f_ig(y) = ifft3(fft3(y) .* pc)
ComplexTensor3 imaging(const OperatorPair& op, const ComplexTensor3& y);
/// f_eg(x) = ifft3(fft3(x) .* conj(pc))
ComplexTensor3 echo_generation(const OperatorPair& op, const ComplexTensor3& x);

/// ifft3(fft3(x) .* support), the range of f_ig o f_eg.
ComplexTensor3 project_to_support(const OperatorPair& op, const ComplexTensor3& x);

}  // namespace rimg
