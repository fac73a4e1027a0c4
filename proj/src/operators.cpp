#include "rimg/operators.hpp"

#include <cmath>

namespace rimg {

OperatorPair::OperatorPair(RadarGeometry geometry, ComplexTensor3 pc, Mask3 support)
    : geometry_(geometry), pc_(std::move(pc)), support_(std::move(support)) {
  require_same_dims(pc_.dims(), geometry_.dims(), "OperatorPair filter");
  require_same_dims(support_.dims, geometry_.dims(), "OperatorPair support");
}

double OperatorPair::support_fraction() const {
  return static_cast<double>(support_.count()) / static_cast<double>(support_.on.size());
}

OperatorPair build_operator_pair(const RadarGeometry& g) {
  g.validate();
  const Dims d = g.dims();
  ComplexTensor3 pc(d);
  Mask3 support(d);
  for (std::size_t u = 0; u < d.nx; ++u) {
    const double kx = g.kx(u);
    for (std::size_t v = 0; v < d.ny; ++v) {
      const double ky = g.ky(v);
      for (std::size_t q = 0; q < d.nz; ++q) {
        const double k = g.wavenumber(q);
        const double kz2 = 4.0 * k * k - kx * kx - ky * ky;
        if (kz2 < 0.0) continue;  // evanescent: hard zero
        const double phase = g.z0 * (std::sqrt(kz2) - 2.0 * k);
        const std::size_t n = pc.offset(u, v, q);
        pc[n] = std::polar(1.0, phase);
        support.on[n] = 1;
      }
    }
  }
  return OperatorPair(g, std::move(pc), std::move(support));
}

ComplexTensor3 imaging(const OperatorPair& op, const ComplexTensor3& y) {
  require_same_dims(y.dims(), op.dims(), "imaging");
  ComplexTensor3 spec = fft3(y);
  const auto& pc = op.filter();
  for (std::size_t n = 0; n < spec.size(); ++n) spec[n] *= pc[n];
  return ifft3(spec);
}

ComplexTensor3 echo_generation(const OperatorPair& op, const ComplexTensor3& x) {
  require_same_dims(x.dims(), op.dims(), "echo_generation");
  ComplexTensor3 spec = fft3(x);
  const auto& pc = op.filter();
  for (std::size_t n = 0; n < spec.size(); ++n) spec[n] *= std::conj(pc[n]);
  return ifft3(spec);
}

ComplexTensor3 project_to_support(const OperatorPair& op, const ComplexTensor3& x) {
  require_same_dims(x.dims(), op.dims(), "project_to_support");
  ComplexTensor3 spec = fft3(x);
  const auto& mask = op.support().on;
  for (std::size_t n = 0; n < spec.size(); ++n) {
    if (mask[n] == 0) spec[n] = 0.0;
  }
  return ifft3(spec);
}

}  // namespace rimg
