#pragma once

#include <optional>
#include <vector>

#include "rimg/geometry.hpp"
#include "rimg/operators.hpp"
#include "rimg/regularizers.hpp"
#include "rimg/solver.hpp"

namespace rimg {

/// The cognition set chosen for a task:
///  - ScatteringDiagnosis: Lp (low-bias amplitudes) + L2 (noise and clutter).
///  - PersonScreen: L1 (point scatterers) + shearlet L1 (distributed shape).
///  - ParcelScreen: the PersonScreen pair on the target component plus a
///    nuclear norm on a second, interference component.
struct TaskPreset {
  TaskId task = TaskId::ScatteringDiagnosis;
  std::vector<CognitionSpec> cognitions;
  std::size_t component_count = 1;
  std::size_t output_component = 0;
  RadarGeometry geometry_default;
  /// Echo SNR of the task's synthetic phantom: 20 dB for the point scene,
  /// 0 dB for the screening scenes.
  double default_snr_db = 20.0;
  SolverParams solver;
};

TaskPreset task_preset(TaskId task);

/// Weight of the single-L1 "sparse-oriented" baseline, relative to max |f_ig(y)|.
inline constexpr double kSparseBaselineBeta = 0.1;

/// The sparse-oriented baseline: one L1 cognition on a single component.
std::vector<CognitionSpec> sparse_baseline_cognitions(double beta = kSparseBaselineBeta);

/// Runs a preset's solver and returns the full state.
SolverState solve_preset(const TaskPreset& preset, const OperatorPair& op, const ComplexTensor3& y);

/// Runs the task preset (optionally with different solver parameters) and
/// returns its designated output component.
ComplexTensor3 run_task(TaskId task, const OperatorPair& op, const ComplexTensor3& y,
                        const std::optional<SolverParams>& overrides = std::nullopt);

/// Single-L1 sparse baseline image.
ComplexTensor3 run_sparse_baseline(const OperatorPair& op, const ComplexTensor3& y,
                                   double beta = kSparseBaselineBeta,
                                   const std::optional<SolverParams>& overrides = std::nullopt);

}  // namespace rimg
