#pragma once

#include <cstddef>
#include <string>

#include "rimg/shearlet.hpp"
#include "rimg/tensor.hpp"

namespace rimg {

enum class CognitionKind { L1, Lp, L2, TransformL1, Nuclear };

/// How a cognition weight is scaled before solving. Data-scaled weights keep
/// the presets meaningful across echo amplitudes.
enum class BetaScale {
  Absolute,
  MaxAbs,         ///< beta * max |f_ig(y)|
  SliceSigmaMax,  ///< beta * largest singular value over the unfolding slices of f_ig(y)
};

std::string to_string(CognitionKind kind);
CognitionKind cognition_kind_from_string(const std::string& s);
std::string to_string(BetaScale scale);
BetaScale beta_scale_from_string(const std::string& s);

/// One cognition regularizer beta * g(S_component).
struct CognitionSpec {
  CognitionKind kind = CognitionKind::L1;
  double beta = 0.0;
  BetaScale scale = BetaScale::Absolute;
  double p = 0.5;           ///< Lp exponent, 0 < p < 1
  int shearlet_scales = 2;  ///< TransformL1
  int shearlet_shears = 3;  ///< TransformL1, per cone
  int axis = 2;             ///< Nuclear: index held fixed per slice (2 = frontal slices)
  std::size_t component = 0;

  /// Throws ParameterError on an out-of-domain field.
  void validate() const;
  bool convex() const { return kind != CognitionKind::Lp; }
  bool operator==(const CognitionSpec&) const = default;
};

/// Complex soft threshold: (v/|v|) max(|v| - tau, 0); phase preserved.
ComplexTensor3 prox_l1(const ComplexTensor3& v, double tau);

/// Generalized soft-thresholding threshold for lambda |x|^p.
double gst_threshold(double lambda, double p);
/// argmin_m 1/2 (m - mag)^2 + lambda m^p over m >= 0 by GST fixed-point
/// iteration (tolerance 1e-10, at most 64 iterations). Throws
/// ConvergenceError when the iteration stalls.
double gst_magnitude(double mag, double lambda, double p);
/// Pointwise GST on magnitudes, phase preserved.
ComplexTensor3 prox_lp(const ComplexTensor3& v, double lambda, double p);

/// Proximal map of (beta/gamma) * 1/2 ||x||_F^2: v / (1 + beta_over_gamma).
ComplexTensor3 prox_l2(const ComplexTensor3& v, double beta_over_gamma);

/// adjoint(soft_threshold(forward(v), tau)); tau = 0 is allowed.
ComplexTensor3 prox_transform_l1(const ComplexTensor3& v, double tau, const FrameTransform& t);

/// Singular value thresholding applied to every slice that holds index
/// `axis` fixed (axis 2: frontal slices). When nuclear_out is given it
/// receives the nuclear norm of the result.
ComplexTensor3 prox_nuclear(const ComplexTensor3& v, double tau, int axis = 2,
                            double* nuclear_out = nullptr);

/// Sum over slices of the slice nuclear norms.
double nuclear_norm(const ComplexTensor3& v, int axis = 2);
/// Largest singular value over all slices.
double max_slice_sigma(const ComplexTensor3& v, int axis = 2);

double l1_norm(const ComplexTensor3& v);
double lp_quasi_norm(const ComplexTensor3& v, double p);
double transform_l1_norm(const ComplexTensor3& v, const FrameTransform& t);

}  // namespace rimg
