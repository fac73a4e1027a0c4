#include "rimg/regularizers.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>

namespace rimg {

std::string to_string(CognitionKind kind) {
  switch (kind) {
    case CognitionKind::L1: return "L1";
    case CognitionKind::Lp: return "Lp";
    case CognitionKind::L2: return "L2";
    case CognitionKind::TransformL1: return "TransformL1";
    case CognitionKind::Nuclear: return "Nuclear";
  }
  return "?";
}

CognitionKind cognition_kind_from_string(const std::string& s) {
  if (s == "L1") return CognitionKind::L1;
  if (s == "Lp") return CognitionKind::Lp;
  if (s == "L2") return CognitionKind::L2;
  if (s == "TransformL1") return CognitionKind::TransformL1;
  if (s == "Nuclear") return CognitionKind::Nuclear;
  throw ConfigError("unknown cognition kind '" + s + "'");
}

std::string to_string(BetaScale scale) {
  switch (scale) {
    case BetaScale::Absolute: return "abs";
    case BetaScale::MaxAbs: return "max_abs";
    case BetaScale::SliceSigmaMax: return "sigma_max";
  }
  return "?";
}

BetaScale beta_scale_from_string(const std::string& s) {
  if (s == "abs") return BetaScale::Absolute;
  if (s == "max_abs") return BetaScale::MaxAbs;
  if (s == "sigma_max") return BetaScale::SliceSigmaMax;
  throw ConfigError("unknown beta scale '" + s + "'");
}

void CognitionSpec::validate() const {
  if (!(beta > 0.0) || !std::isfinite(beta)) {
    throw ParameterError(to_string(kind) + ": beta must be positive and finite");
  }
  if (kind == CognitionKind::Lp && !(p > 0.0 && p < 1.0)) {
    throw ParameterError("Lp: exponent must lie in (0, 1)");
  }
  if (kind == CognitionKind::Nuclear && (axis < 0 || axis > 2)) {
    throw ParameterError("Nuclear: unfolding axis must be 0, 1 or 2");
  }
}

namespace {

void require_positive(double tau, const char* what) {
  if (!(tau > 0.0) || !std::isfinite(tau)) {
    throw ParameterError(std::string(what) + ": threshold must be positive and finite");
  }
}

// sqrt(re^2 + im^2); hypot's overflow guard is not needed at these scales
// and dominates the cost of thresholding.
double magnitude(cdouble z) { return std::sqrt(std::norm(z)); }

cdouble shrink(cdouble z, double tau) {
  const double mag = magnitude(z);
  if (mag <= tau) return {0.0, 0.0};
  return z * ((mag - tau) / mag);
}

}  // namespace

ComplexTensor3 prox_l1(const ComplexTensor3& v, double tau) {
  require_positive(tau, "prox_l1");
  ComplexTensor3 out = v;
  for (auto& z : out.values()) z = shrink(z, tau);
  return out;
}

double gst_threshold(double lambda, double p) {
  const double base = 2.0 * lambda * (1.0 - p);
  return std::pow(base, 1.0 / (2.0 - p)) + lambda * p * std::pow(base, (p - 1.0) / (2.0 - p));
}

double gst_magnitude(double mag, double lambda, double p) {
  if (mag <= gst_threshold(lambda, p)) return 0.0;
  constexpr int kMaxIters = 64;
  constexpr double kTol = 1e-10;
  double m = mag;
  for (int it = 0; it < kMaxIters; ++it) {
    const double next = mag - lambda * p * std::pow(m, p - 1.0);
    if (!(next > 0.0) || !std::isfinite(next)) {
      throw ConvergenceError("GST iteration left the positive half-line at |v| = " +
                             std::to_string(mag));
    }
    if (std::abs(next - m) <= kTol * std::max(1.0, m)) return next;
    m = next;
  }
  throw ConvergenceError("GST iteration did not converge in 64 steps at |v| = " +
                         std::to_string(mag) + ", lambda = " + std::to_string(lambda) +
                         ", p = " + std::to_string(p));
}

ComplexTensor3 prox_lp(const ComplexTensor3& v, double lambda, double p) {
  require_positive(lambda, "prox_lp");
  if (!(p > 0.0 && p < 1.0)) throw ParameterError("prox_lp: exponent must lie in (0, 1)");
  const double threshold = gst_threshold(lambda, p);
  ComplexTensor3 out = v;
  for (auto& z : out.values()) {
    const double mag = std::abs(z);
    if (mag <= threshold) {
      z = 0.0;
    } else {
      z *= gst_magnitude(mag, lambda, p) / mag;
    }
  }
  return out;
}

ComplexTensor3 prox_l2(const ComplexTensor3& v, double beta_over_gamma) {
  if (!(beta_over_gamma >= 0.0) || !std::isfinite(beta_over_gamma)) {
    throw ParameterError("prox_l2: weight must be non-negative and finite");
  }
  ComplexTensor3 out = v;
  out *= 1.0 / (1.0 + beta_over_gamma);
  return out;
}

ComplexTensor3 prox_transform_l1(const ComplexTensor3& v, double tau, const FrameTransform& t) {
  if (!(tau >= 0.0) || !std::isfinite(tau)) {
    throw ParameterError("prox_transform_l1: threshold must be non-negative and finite");
  }
  FrameCoefficients coeffs = t.forward(v);
  if (tau > 0.0) {
    for (auto& band : coeffs)
      for (auto& z : band.values()) z = shrink(z, tau);
  }
  return t.adjoint(coeffs);
}

namespace {

struct SliceView {
  std::size_t count, rows, cols;
};

SliceView slice_view(const Dims& d, int axis) {
  switch (axis) {
    case 0: return {d.nx, d.ny, d.nz};
    case 1: return {d.ny, d.nx, d.nz};
    case 2: return {d.nz, d.nx, d.ny};
    default: throw ParameterError("unfolding axis must be 0, 1 or 2");
  }
}

// Element (r, c) of slice s under the given unfolding.
std::size_t slice_offset(const ComplexTensor3& t, int axis, std::size_t s, std::size_t r,
                         std::size_t c) {
  switch (axis) {
    case 0: return t.offset(s, r, c);
    case 1: return t.offset(r, s, c);
    default: return t.offset(r, c, s);
  }
}

Eigen::MatrixXcd gather(const ComplexTensor3& t, int axis, std::size_t s, const SliceView& sv) {
  Eigen::MatrixXcd m(sv.rows, sv.cols);
  for (std::size_t r = 0; r < sv.rows; ++r)
    for (std::size_t c = 0; c < sv.cols; ++c) m(r, c) = t[slice_offset(t, axis, s, r, c)];
  return m;
}

template <typename Svd>
void check_svd(const Svd& svd, std::size_t slice) {
  if (svd.info() != Eigen::Success) {
    throw ConvergenceError("SVD failed on slice " + std::to_string(slice));
  }
}

}  // namespace

ComplexTensor3 prox_nuclear(const ComplexTensor3& v, double tau, int axis, double* nuclear_out) {
  require_positive(tau, "prox_nuclear");
  const SliceView sv = slice_view(v.dims(), axis);
  ComplexTensor3 out(v.dims());
  double nuclear = 0.0;
  for (std::size_t s = 0; s < sv.count; ++s) {
    const Eigen::MatrixXcd m = gather(v, axis, s, sv);
    if (m.cwiseAbs().maxCoeff() == 0.0) continue;
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    check_svd(svd, s);
    Eigen::VectorXd sigma = svd.singularValues();
    for (Eigen::Index n = 0; n < sigma.size(); ++n) sigma(n) = std::max(sigma(n) - tau, 0.0);
    nuclear += sigma.sum();
    if (sigma.sum() == 0.0) continue;
    const Eigen::MatrixXcd r = svd.matrixU() * sigma.asDiagonal() * svd.matrixV().adjoint();
    for (std::size_t a = 0; a < sv.rows; ++a)
      for (std::size_t b = 0; b < sv.cols; ++b) out[slice_offset(out, axis, s, a, b)] = r(a, b);
  }
  if (!all_finite(out)) throw ConvergenceError("singular value thresholding produced non-finite values");
  if (nuclear_out != nullptr) *nuclear_out = nuclear;
  return out;
}

double nuclear_norm(const ComplexTensor3& v, int axis) {
  const SliceView sv = slice_view(v.dims(), axis);
  double total = 0.0;
  for (std::size_t s = 0; s < sv.count; ++s) {
    const Eigen::MatrixXcd m = gather(v, axis, s, sv);
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(m);
    check_svd(svd, s);
    total += svd.singularValues().sum();
  }
  return total;
}

double max_slice_sigma(const ComplexTensor3& v, int axis) {
  const SliceView sv = slice_view(v.dims(), axis);
  double best = 0.0;
  for (std::size_t s = 0; s < sv.count; ++s) {
    const Eigen::MatrixXcd m = gather(v, axis, s, sv);
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(m);
    check_svd(svd, s);
    if (svd.singularValues().size() > 0) best = std::max(best, svd.singularValues()(0));
  }
  return best;
}

double l1_norm(const ComplexTensor3& v) {
  double acc = 0.0;
  for (const auto& z : v.values()) acc += magnitude(z);
  return acc;
}

double lp_quasi_norm(const ComplexTensor3& v, double p) {
  double acc = 0.0;
  for (const auto& z : v.values()) acc += std::pow(std::abs(z), p);
  return acc;
}

double transform_l1_norm(const ComplexTensor3& v, const FrameTransform& t) {
  double acc = 0.0;
  for (const auto& band : t.forward(v)) acc += l1_norm(band);
  return acc;
}

}  // namespace rimg
