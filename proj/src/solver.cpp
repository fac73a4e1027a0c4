#include "rimg/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <utility>

namespace rimg {

void SolverParams::validate() const {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) throw ParameterError("gamma must be positive");
  if (max_iters < 1) throw ParameterError("max_iters must be >= 1");
  if (!(rel_tol > 0.0)) throw ParameterError("rel_tol must be positive");
  if (component_count < 1) throw ParameterError("component_count must be >= 1");
}

ComplexTensor3 matched_filter(const OperatorPair& op, const ComplexTensor3& y) {
  return imaging(op, y);
}

std::vector<double> resolve_betas(std::span<const CognitionSpec> cognitions, const ComplexTensor3& mf) {
  std::optional<double> peak;
  std::map<int, double> sigma;
  std::vector<double> out;
  for (const auto& spec : cognitions) {
    double ref = 1.0;
    switch (spec.scale) {
      case BetaScale::Absolute: break;
      case BetaScale::MaxAbs:
        if (!peak) peak = max_abs(mf);
        ref = *peak;
        break;
      case BetaScale::SliceSigmaMax: {
        const int axis = spec.kind == CognitionKind::Nuclear ? spec.axis : 2;
        if (!sigma.contains(axis)) sigma[axis] = max_slice_sigma(mf, axis);
        ref = sigma[axis];
        break;
      }
    }
    out.push_back(spec.beta * ref);
  }
  return out;
}

void xupdate_voxel(cdouble m, double gamma, std::span<const std::size_t> split_counts,
                   std::span<const cdouble> xn_sums, std::span<cdouble> out) {
  const std::size_t count = split_counts.size();
  if (count == 1) {
    const double inv = 1.0 / (1.0 + gamma * static_cast<double>(split_counts[0]));
    out[0] = inv * (m + gamma * xn_sums[0]);
    return;
  }
  // (11^T + L) s = r with L = diag(gamma m_c): Sherman-Morrison.
  cdouble weighted{0.0, 0.0};
  double trace_inv = 0.0;
  for (std::size_t c = 0; c < count; ++c) {
    const double lambda = gamma * static_cast<double>(split_counts[c]);
    weighted += (m + gamma * xn_sums[c]) / lambda;
    trace_inv += 1.0 / lambda;
  }
  const cdouble total = weighted / (1.0 + trace_inv);
  for (std::size_t c = 0; c < count; ++c) {
    const double lambda = gamma * static_cast<double>(split_counts[c]);
    out[c] = (m + gamma * xn_sums[c] - total) / lambda;
  }
}

namespace {

struct Wiring {
  std::vector<std::size_t> split_counts;
  std::map<std::pair<int, int>, std::shared_ptr<FrameTransform>> frames;

  const FrameTransform& frame(const CognitionSpec& s) const {
    return *frames.at({s.shearlet_scales, s.shearlet_shears});
  }
};

Wiring wire(std::span<const CognitionSpec> cognitions, const SolverParams& params, const Dims& d) {
  if (cognitions.empty()) throw ConfigError("admm_solve needs at least one cognition");
  Wiring w;
  w.split_counts.assign(params.component_count, 0);
  for (const auto& spec : cognitions) {
    spec.validate();
    if (spec.component >= params.component_count) {
      throw ConfigError(to_string(spec.kind) + " cognition targets component " +
                        std::to_string(spec.component) + " but only " +
                        std::to_string(params.component_count) + " exist");
    }
    ++w.split_counts[spec.component];
    if (spec.kind == CognitionKind::TransformL1) {
      if (d.nx != d.ny) throw DimensionError("TransformL1 needs square frontal slices, got " + d.str());
      const auto key = std::make_pair(spec.shearlet_scales, spec.shearlet_shears);
      if (!w.frames.contains(key)) {
        w.frames[key] = std::make_shared<FrameTransform>(
            build_shearlet(d.nx, spec.shearlet_scales, spec.shearlet_shears));
      }
    }
  }
  for (std::size_t c = 0; c < w.split_counts.size(); ++c) {
    if (w.split_counts[c] == 0) {
      throw ConfigError("component " + std::to_string(c) + " has no cognition attached");
    }
  }
  return w;
}

ComplexTensor3 apply_prox(const CognitionSpec& spec, const ComplexTensor3& v, double weight,
                          const Wiring& w, double* value) {
  switch (spec.kind) {
    case CognitionKind::L1: {
      ComplexTensor3 z = prox_l1(v, weight);
      *value = l1_norm(z);
      return z;
    }
    case CognitionKind::Lp: {
      ComplexTensor3 z = prox_lp(v, weight, spec.p);
      *value = lp_quasi_norm(z, spec.p);
      return z;
    }
    case CognitionKind::L2: {
      ComplexTensor3 z = prox_l2(v, weight);
      *value = 0.5 * std::pow(frob_norm(z), 2);
      return z;
    }
    case CognitionKind::TransformL1: {
      const FrameTransform& frame = w.frame(spec);
      ComplexTensor3 z = prox_transform_l1(v, weight, frame);
      *value = transform_l1_norm(z, frame);
      return z;
    }
    case CognitionKind::Nuclear:
      return prox_nuclear(v, weight, spec.axis, value);
  }
  throw ConfigError("unhandled cognition kind");
}

double cognition_value(const CognitionSpec& spec, const ComplexTensor3& x, const Wiring& w) {
  switch (spec.kind) {
    case CognitionKind::L1: return l1_norm(x);
    case CognitionKind::Lp: return lp_quasi_norm(x, spec.p);
    case CognitionKind::L2: return 0.5 * std::pow(frob_norm(x), 2);
    case CognitionKind::TransformL1: return transform_l1_norm(x, w.frame(spec));
    case CognitionKind::Nuclear: return nuclear_norm(x, spec.axis);
  }
  throw ConfigError("unhandled cognition kind");
}

}  // namespace

std::vector<ComplexTensor3> xupdate(const ComplexTensor3& mf,
                                    std::span<const CognitionSpec> cognitions,
                                    std::span<const ComplexTensor3> splits,
                                    std::span<const ComplexTensor3> duals,
                                    const SolverParams& params) {
  const std::size_t nc = params.component_count;
  const std::size_t ns = cognitions.size();
  const double gamma = params.gamma;
  if (splits.size() != ns || duals.size() != ns) {
    throw ConfigError("xupdate: one split and one dual per cognition required");
  }
  std::vector<std::size_t> counts(nc, 0);
  for (const auto& spec : cognitions) {
    if (spec.component >= nc) throw ConfigError("xupdate: cognition component out of range");
    ++counts[spec.component];
  }
  for (std::size_t i = 0; i < ns; ++i) {
    require_same_dims(splits[i].dims(), mf.dims(), "xupdate split");
    require_same_dims(duals[i].dims(), mf.dims(), "xupdate dual");
  }

  std::vector<ComplexTensor3> out(nc, ComplexTensor3(mf.dims()));
  std::vector<cdouble> xn(nc), s(nc);
  std::vector<bool> seen(nc);
  for (std::size_t n = 0; n < mf.size(); ++n) {
    std::fill(seen.begin(), seen.end(), false);
    for (std::size_t i = 0; i < ns; ++i) {
      const std::size_t c = cognitions[i].component;
      const cdouble term = splits[i][n] - duals[i][n] / gamma;
      xn[c] = seen[c] ? xn[c] + term : term;
      seen[c] = true;
    }
    xupdate_voxel(mf[n], gamma, counts, xn, s);
    for (std::size_t c = 0; c < nc; ++c) out[c][n] = s[c];
  }
  return out;
}

SolverState admm_solve_image(const ComplexTensor3& mf, std::span<const CognitionSpec> cognitions,
                             const SolverParams& params) {
  params.validate();
  const Dims d = mf.dims();
  const Wiring w = wire(cognitions, params, d);
  const double gamma = params.gamma;
  const std::size_t nc = params.component_count;
  const std::size_t ns = cognitions.size();

  SolverState st;
  try {
    st.betas = resolve_betas(cognitions, mf);
  } catch (const ConvergenceError& e) {
    throw ConvergenceError(std::string("before iteration 1, resolving weights: ") + e.what());
  }
  st.components.assign(nc, ComplexTensor3(d));
  st.splits.assign(ns, ComplexTensor3(d));
  st.duals.assign(ns, ComplexTensor3(d));

  for (int k = 0; k < params.max_iters; ++k) {
    const std::vector<ComplexTensor3> previous = st.components;
    st.components = xupdate(mf, cognitions, st.splits, st.duals, params);

    // Z- and dual updates, one proximal step per cognition.
    IterationRecord rec;
    for (std::size_t i = 0; i < ns; ++i) {
      const CognitionSpec& spec = cognitions[i];
      const ComplexTensor3& sc = st.components[spec.component];
      ComplexTensor3 point = st.duals[i];
      point *= 1.0 / gamma;
      point += sc;
      double g = 0.0;
      try {
        st.splits[i] = apply_prox(spec, point, st.betas[i] / gamma, w, &g);
      } catch (const ConvergenceError& e) {
        throw ConvergenceError("iteration " + std::to_string(k + 1) + ", cognition " +
                               std::to_string(i) + " (" + to_string(spec.kind) + "): " + e.what());
      }
      ComplexTensor3 gap = sc - st.splits[i];
      rec.primal_residuals.push_back(frob_norm(gap));
      gap *= gamma;
      st.duals[i] += gap;
      rec.split_values.push_back(st.betas[i] * g);
      rec.regularizer_values.push_back(st.betas[i] * cognition_value(spec, sc, w));
    }

    ComplexTensor3 residual = mf;
    double change2 = 0.0, prev2 = 0.0;
    for (std::size_t c = 0; c < nc; ++c) {
      residual -= st.components[c];
      change2 += std::pow(frob_norm(st.components[c] - previous[c]), 2);
      prev2 += std::pow(frob_norm(previous[c]), 2);
    }
    rec.data_fidelity = 0.5 * std::pow(frob_norm(residual), 2);
    rec.objective = rec.data_fidelity;
    for (double v : rec.split_values) rec.objective += v;
    rec.primal_objective = rec.data_fidelity;
    for (double v : rec.regularizer_values) rec.primal_objective += v;
    rec.rel_change = prev2 > 0.0 ? std::sqrt(change2 / prev2) : std::numeric_limits<double>::infinity();
    st.history.push_back(std::move(rec));
    st.iterations = k + 1;

    if (st.history.back().rel_change < params.rel_tol) {
      st.converged = true;
      break;
    }
  }
  return st;
}

SolverState admm_solve(const OperatorPair& op, const ComplexTensor3& y,
                       std::span<const CognitionSpec> cognitions, const SolverParams& params) {
  return admm_solve_image(matched_filter(op, y), cognitions, params);
}

}  // namespace rimg
