#include "rimg/tasks.hpp"

namespace rimg {

namespace {

CognitionSpec cognition(CognitionKind kind, double beta, BetaScale scale, std::size_t component = 0) {
  CognitionSpec s;
  s.kind = kind;
  s.beta = beta;
  s.scale = scale;
  s.component = component;
  return s;
}

}  // namespace

TaskPreset task_preset(TaskId task) {
  TaskPreset p;
  p.task = task;
  p.geometry_default = table1_geometry(task);
  switch (task) {
    case TaskId::ScatteringDiagnosis:
      p.cognitions = {cognition(CognitionKind::Lp, 0.01, BetaScale::MaxAbs),
                      cognition(CognitionKind::L2, 0.01, BetaScale::Absolute)};
      break;
    case TaskId::PersonScreen:
      p.cognitions = {cognition(CognitionKind::L1, 0.03, BetaScale::MaxAbs),
                      cognition(CognitionKind::TransformL1, 0.005, BetaScale::MaxAbs)};
      break;
    case TaskId::ParcelScreen:
      p.cognitions = {cognition(CognitionKind::L1, 0.03, BetaScale::MaxAbs),
                      cognition(CognitionKind::TransformL1, 0.005, BetaScale::MaxAbs),
                      cognition(CognitionKind::Nuclear, 0.15, BetaScale::SliceSigmaMax, 1)};
      p.component_count = 2;
      break;
  }
  if (task != TaskId::ScatteringDiagnosis) {
    p.default_snr_db = 0.0;
    p.solver.gamma = 20.0;
  }
  p.solver.component_count = p.component_count;
  return p;
}

std::vector<CognitionSpec> sparse_baseline_cognitions(double beta) {
  return {cognition(CognitionKind::L1, beta, BetaScale::MaxAbs)};
}

SolverState solve_preset(const TaskPreset& preset, const OperatorPair& op, const ComplexTensor3& y) {
  SolverParams params = preset.solver;
  params.component_count = preset.component_count;
  return admm_solve(op, y, preset.cognitions, params);
}

ComplexTensor3 run_task(TaskId task, const OperatorPair& op, const ComplexTensor3& y,
                        const std::optional<SolverParams>& overrides) {
  TaskPreset preset = task_preset(task);
  if (overrides) preset.solver = *overrides;
  SolverState st = solve_preset(preset, op, y);
  return std::move(st.components.at(preset.output_component));
}

ComplexTensor3 run_sparse_baseline(const OperatorPair& op, const ComplexTensor3& y, double beta,
                                   const std::optional<SolverParams>& overrides) {
  SolverParams params = overrides.value_or(SolverParams{});
  params.component_count = 1;
  const auto cogs = sparse_baseline_cognitions(beta);
  SolverState st = admm_solve(op, y, cogs, params);
  return std::move(st.components.front());
}

}  // namespace rimg
