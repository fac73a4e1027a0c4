#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "rimg/geometry.hpp"
#include "rimg/metrics.hpp"
#include "rimg/regularizers.hpp"
#include "rimg/simulator.hpp"
#include "rimg/solver.hpp"
#include "rimg/tasks.hpp"
#include "rimg/tensor.hpp"

namespace rimg {

using Json = nlohmann::json;

/// TensorFile: "RIT3", u32 version (1), u64 nx, ny, nz, then nx*ny*nz
/// (re, im) float64 pairs, k fastest. All integers and floats little-endian.
inline constexpr std::uint32_t kTensorFileVersion = 1;
/// Largest element count the reader accepts (4 GiB of payload).
inline constexpr std::uint64_t kMaxTensorElements = std::uint64_t{1} << 28;

std::string encode_tensor(const ComplexTensor3& t);
/// Throws FormatError on bad magic, version, dims or length.
ComplexTensor3 decode_tensor(std::string_view bytes);

void write_tensor(const std::string& path, const ComplexTensor3& t);
ComplexTensor3 read_tensor(const std::string& path);

/// Writes to a sibling temp file and renames it into place.
void write_file_atomic(const std::string& path, std::string_view bytes);
std::string read_file(const std::string& path);

/// Parses text as JSON; syntax errors become FormatError.
Json parse_json(const std::string& text, const std::string& what);

Json geometry_to_json(const RadarGeometry& g);
/// A preset name, or an object with an optional "preset" and any geometry
/// fields overriding it. Validated before returning.
RadarGeometry geometry_from_json(const Json& j);

Json cognition_to_json(const CognitionSpec& s);
CognitionSpec cognition_from_json(const Json& j);

/// Scene JSON. The interference tensor itself lives in the echo; the file
/// records its presence, rank and energy ratio.
struct SceneFile {
  Scene scene;
  std::optional<RadarGeometry> geometry;
  bool has_interference = false;

  /// The scene as metrics see it (interference flagged).
  bool point_scene() const;
};

Json scene_to_json(const Scene& scene, const std::optional<RadarGeometry>& g);
SceneFile scene_from_json(const Json& j);

/// Batch configuration. Unknown keys are rejected.
struct RunConfig {
  std::optional<RadarGeometry> geometry;  ///< unset: Table 1 geometry of the task
  std::optional<TaskId> task;
  std::uint64_t seed = 0;
  std::optional<double> snr_db;  ///< unset: the task default; +inf for noise-free echoes
  EchoModel echo_model = EchoModel::Approximated;
  /// Solver keys present in the config; unset keys keep the preset values.
  struct SolverOverrides {
    std::optional<double> gamma;
    std::optional<int> max_iters;
    std::optional<double> rel_tol;
    std::optional<std::size_t> component_count;

    SolverParams apply(SolverParams base) const;
  } solver;
  std::optional<std::vector<CognitionSpec>> cognitions;  ///< replaces the task preset list
  std::optional<std::size_t> output_component;
  double sparse_beta = kSparseBaselineBeta;
  struct Paths {
    std::optional<std::string> echo, truth, scene, image;
  } paths;

  RadarGeometry geometry_for(TaskId task) const;
  double snr_for(TaskId task) const;
  /// The task preset with this config's solver and cognition overrides applied.
  TaskPreset preset_for(TaskId task) const;
};

RunConfig run_config_from_json(const Json& j);
RunConfig load_run_config(const std::string& path);

std::string to_string(EchoModel m);
EchoModel echo_model_from_string(const std::string& s);

Json report_to_json(const MetricReport& r);
/// Validates the report schema; throws FormatError on any violation.
MetricReport report_from_json(const Json& j);

/// 8-bit grayscale PNG, pixel = round(255 * v / scale_max), scale_max <= 0
/// renders black.
void write_png(const std::string& path, const Image2D& img, double scale_max);
void write_csv(const std::string& path, const Image2D& img);

/// Max-intensity projections of |img| along x, y and z: "<base>.mip_<axis>.png",
/// "<base>.mip_<axis>.csv" and the "<base>.mip.json" sidecar with the global max.
std::vector<std::string> export_projections(const std::string& base, const ComplexTensor3& img);

}  // namespace rimg
