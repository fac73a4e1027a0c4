#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "rimg/operators.hpp"
#include "rimg/regularizers.hpp"
#include "rimg/tensor.hpp"

namespace rimg {

struct SolverParams {
  double gamma = 1.0;
  int max_iters = 100;
  /// Stop once ||S^{k+1} - S^k||_F / ||S^k||_F (all components stacked) drops below this.
  double rel_tol = 1e-4;
  std::size_t component_count = 1;

  void validate() const;
};

struct IterationRecord {
  double data_fidelity = 0.0;              ///< 1/2 ||M - sum_c S_c||_F^2
  std::vector<double> split_values;        ///< beta_i g_i(Z_i), per cognition
  std::vector<double> regularizer_values;  ///< beta_i g_i(S_c), per cognition
  std::vector<double> primal_residuals;    ///< ||S_c - Z_i||_F, per cognition
  /// Surrogate objective data_fidelity + sum of split_values. It mixes S and
  /// Z, so it is a value of the objective at a single point only once S = Z.
  double objective = 0.0;
  /// data_fidelity + sum of regularizer_values: the objective at S itself.
  double primal_objective = 0.0;
  double rel_change = 0.0;
};

struct SolverState {
  std::vector<ComplexTensor3> components;  ///< S_c; their sum is the model image
  std::vector<ComplexTensor3> splits;      ///< Z_i, one per cognition
  std::vector<ComplexTensor3> duals;       ///< D_i, one per cognition
  std::vector<double> betas;               ///< resolved absolute weights
  int iterations = 0;
  bool converged = false;
  std::vector<IterationRecord> history;
};

/// The matched-filter baseline: imaging(op, y).
ComplexTensor3 matched_filter(const OperatorPair& op, const ComplexTensor3& y);

/// Absolute weights for the cognitions given the matched-filter image.
std::vector<double> resolve_betas(std::span<const CognitionSpec> cognitions, const ComplexTensor3& mf);

/// Closed-form X-update at one voxel. Minimises over s in C^C
///   1/2 |m - sum_c s_c|^2 + sum_{(c,i)} gamma/2 |s_c - xn_{c,i}|^2
/// given split_counts[c] = number of splits on component c and
/// xn_sums[c] = sum_i xn_{c,i}, where xn = Z - D/gamma. With a single
/// component this is (m + gamma * xn_sum) / (1 + gamma * count).
void xupdate_voxel(cdouble m, double gamma, std::span<const std::size_t> split_counts,
                   std::span<const cdouble> xn_sums, std::span<cdouble> out);

/// X-update over the whole grid: new components from the current splits and
/// duals (one of each per cognition).
std::vector<ComplexTensor3> xupdate(const ComplexTensor3& mf,
                                    std::span<const CognitionSpec> cognitions,
                                    std::span<const ComplexTensor3> splits,
                                    std::span<const ComplexTensor3> duals,
                                    const SolverParams& params);

/// Multi-split ADMM on the surrogate data term 1/2 ||M - sum_c S_c||_F^2
/// with M = f_ig(y) precomputed.
SolverState admm_solve_image(const ComplexTensor3& mf, std::span<const CognitionSpec> cognitions,
                             const SolverParams& params);

SolverState admm_solve(const OperatorPair& op, const ComplexTensor3& y,
                       std::span<const CognitionSpec> cognitions, const SolverParams& params);

}  // namespace rimg
