#include "rimg/io.hpp"

#include <png.h>

#include <algorithm>
#include <bit>
#include <csetjmp>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <random>
#include <set>
#include <sstream>

namespace rimg {

namespace fs = std::filesystem;

namespace {

constexpr char kMagic[4] = {'R', 'I', 'T', '3'};
constexpr std::size_t kHeaderBytes = 4 + 4 + 3 * 8;

void put_u32(std::string& out, std::uint32_t v) {
  for (int b = 0; b < 4; ++b) out.push_back(static_cast<char>((v >> (8 * b)) & 0xFF));
}

void put_u64(std::string& out, std::uint64_t v) {
  for (int b = 0; b < 8; ++b) out.push_back(static_cast<char>((v >> (8 * b)) & 0xFF));
}

std::uint64_t get_le(std::string_view bytes, std::size_t at, int width) {
  std::uint64_t v = 0;
  for (int b = 0; b < width; ++b) {
    v |= static_cast<std::uint64_t>(static_cast<unsigned char>(bytes[at + b])) << (8 * b);
  }
  return v;
}

}  // namespace

std::string encode_tensor(const ComplexTensor3& t) {
  const Dims d = t.dims();
  std::string out;
  out.reserve(kHeaderBytes + 16 * t.size());
  out.append(kMagic, 4);
  put_u32(out, kTensorFileVersion);
  put_u64(out, d.nx);
  put_u64(out, d.ny);
  put_u64(out, d.nz);
  for (const cdouble& z : t.values()) {
    put_u64(out, std::bit_cast<std::uint64_t>(z.real()));
    put_u64(out, std::bit_cast<std::uint64_t>(z.imag()));
  }
  return out;
}

ComplexTensor3 decode_tensor(std::string_view bytes) {
  if (bytes.size() < kHeaderBytes) throw FormatError("tensor file: truncated header");
  if (!std::equal(kMagic, kMagic + 4, bytes.begin())) throw FormatError("tensor file: bad magic");
  const auto version = get_le(bytes, 4, 4);
  if (version != kTensorFileVersion) {
    throw FormatError("tensor file: unsupported version " + std::to_string(version));
  }
  const std::uint64_t nx = get_le(bytes, 8, 8), ny = get_le(bytes, 16, 8), nz = get_le(bytes, 24, 8);
  if (nx == 0 || ny == 0 || nz == 0) throw FormatError("tensor file: zero dimension");
  if (nx > kMaxTensorElements || ny > kMaxTensorElements / nx ||
      nz > kMaxTensorElements / (nx * ny)) {
    throw FormatError("tensor file: declared dims exceed the size limit");
  }
  const std::uint64_t count = nx * ny * nz;
  const std::uint64_t payload = bytes.size() - kHeaderBytes;
  if (payload < 16 * count) {
    throw FormatError("tensor file: truncated payload (" + std::to_string(payload) + " of " +
                      std::to_string(16 * count) + " bytes)");
  }
  if (payload > 16 * count) throw FormatError("tensor file: trailing bytes after payload");
  std::vector<cdouble> data(count);
  std::size_t at = kHeaderBytes;
  for (auto& z : data) {
    const double re = std::bit_cast<double>(get_le(bytes, at, 8));
    const double im = std::bit_cast<double>(get_le(bytes, at + 8, 8));
    z = {re, im};
    at += 16;
  }
  return ComplexTensor3({nx, ny, nz}, std::move(data));
}

void write_file_atomic(const std::string& path, std::string_view bytes) {
  const fs::path target(path);
  std::random_device rd;
  const fs::path tmp = target.string() + ".tmp" + std::to_string(rd());
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot open " + tmp.string() + " for writing");
    f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    f.close();
    if (!f) {
      std::error_code ec;
      fs::remove(tmp, ec);
      throw IoError("write failed for " + path);
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw IoError("cannot move output into place at " + path);
  }
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  if (f.bad()) throw IoError("read failed for " + path);
  return ss.str();
}

void write_tensor(const std::string& path, const ComplexTensor3& t) {
  write_file_atomic(path, encode_tensor(t));
}

ComplexTensor3 read_tensor(const std::string& path) {
  const std::string bytes = read_file(path);
  try {
    return decode_tensor(bytes);
  } catch (const FormatError& e) {
    throw FormatError(path + ": " + e.what());
  }
}

Json parse_json(const std::string& text, const std::string& what) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw FormatError(what + ": invalid JSON: " + e.what());
  }
}

namespace {

// Config-level JSON access. Type errors become ConfigError.
void reject_unknown(const Json& j, std::initializer_list<const char*> allowed, const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + ": expected an object");
  const std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [key, value] : j.items()) {
    if (!ok.contains(key)) throw ConfigError(where + ": unknown key '" + key + "'");
  }
}

double number(const Json& j, const std::string& where) {
  if (!j.is_number()) throw ConfigError(where + ": expected a number");
  return j.get<double>();
}

double number_or_inf(const Json& j, const std::string& where) {
  if (j.is_null()) return std::numeric_limits<double>::infinity();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    throw ConfigError(where + ": expected a number or \"inf\"");
  }
  return number(j, where);
}

std::uint64_t unsigned_int(const Json& j, const std::string& where) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0)) {
    throw ConfigError(where + ": expected a non-negative integer");
  }
  return j.get<std::uint64_t>();
}

std::string text(const Json& j, const std::string& where) {
  if (!j.is_string()) throw ConfigError(where + ": expected a string");
  return j.get<std::string>();
}

Json number_to_json(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

}  // namespace

Json geometry_to_json(const RadarGeometry& g) {
  return {{"nx", g.nx}, {"ny", g.ny}, {"nr", g.nr}, {"dx", g.dx}, {"dy", g.dy},
          {"fc", g.fc}, {"bw", g.bw}, {"z0", g.z0}, {"c", g.c}};
}

RadarGeometry geometry_from_json(const Json& j) {
  if (j.is_string()) {
    RadarGeometry g = geometry_preset(j.get<std::string>());
    g.validate();
    return g;
  }
  reject_unknown(j, {"preset", "nx", "ny", "nr", "dx", "dy", "fc", "bw", "z0", "c"}, "geometry");
  const auto size = [&](const char* key, std::size_t fallback) {
    return j.contains(key) ? unsigned_int(j[key], std::string("geometry.") + key) : fallback;
  };
  RadarGeometry g;
  g.nx = size("nx", g.nx);
  g.ny = size("ny", g.ny);
  g.nr = size("nr", g.nr);
  if (j.contains("preset")) g = geometry_preset(text(j["preset"], "geometry.preset"), g.nx, g.ny, g.nr);
  for (auto [key, field] : {std::pair{"dx", &g.dx}, {"dy", &g.dy}, {"fc", &g.fc}, {"bw", &g.bw},
                            {"z0", &g.z0}, {"c", &g.c}}) {
    if (j.contains(key)) *field = number(j[key], std::string("geometry.") + key);
  }
  g.validate();
  return g;
}

Json cognition_to_json(const CognitionSpec& s) {
  Json j = {{"kind", to_string(s.kind)},
            {"beta", s.beta},
            {"scale", to_string(s.scale)},
            {"component", s.component}};
  if (s.kind == CognitionKind::Lp) j["p"] = s.p;
  if (s.kind == CognitionKind::TransformL1) {
    j["transform"] = "shearlet";
    j["shearlet_scales"] = s.shearlet_scales;
    j["shearlet_shears"] = s.shearlet_shears;
  }
  if (s.kind == CognitionKind::Nuclear) j["axis"] = s.axis;
  return j;
}

CognitionSpec cognition_from_json(const Json& j) {
  reject_unknown(j, {"kind", "beta", "scale", "p", "transform", "shearlet_scales", "shearlet_shears", "axis",
                     "component"},
                 "cognition");
  if (j.contains("transform") && text(j["transform"], "cognition.transform") != "shearlet") {
    throw ConfigError("cognition.transform: only 'shearlet' is available");
  }
  if (!j.contains("kind") || !j.contains("beta")) throw ConfigError("cognition: 'kind' and 'beta' are required");
  CognitionSpec s;
  s.kind = cognition_kind_from_string(text(j["kind"], "cognition.kind"));
  s.beta = number(j["beta"], "cognition.beta");
  if (j.contains("scale")) s.scale = beta_scale_from_string(text(j["scale"], "cognition.scale"));
  if (j.contains("p")) s.p = number(j["p"], "cognition.p");
  if (j.contains("shearlet_scales")) {
    s.shearlet_scales = static_cast<int>(unsigned_int(j["shearlet_scales"], "cognition.shearlet_scales"));
  }
  if (j.contains("shearlet_shears")) {
    s.shearlet_shears = static_cast<int>(unsigned_int(j["shearlet_shears"], "cognition.shearlet_shears"));
  }
  if (j.contains("axis")) s.axis = static_cast<int>(unsigned_int(j["axis"], "cognition.axis"));
  if (j.contains("component")) s.component = unsigned_int(j["component"], "cognition.component");
  s.validate();
  return s;
}

bool SceneFile::point_scene() const { return !has_interference && is_point_scene(scene); }

Json scene_to_json(const Scene& scene, const std::optional<RadarGeometry>& g) {
  Json scatterers = Json::array();
  for (const auto& s : scene.scatterers) {
    scatterers.push_back({{"x", s.position[0]},
                          {"y", s.position[1]},
                          {"z", s.position[2]},
                          {"amp_re", s.amplitude.real()},
                          {"amp_im", s.amplitude.imag()},
                          {"kind", s.distributed ? "distributed" : "point"}});
  }
  Json j = {{"scatterers", scatterers},
            {"seed", scene.seed},
            {"snr_db", number_to_json(scene.snr_db.value_or(kNoiseFree))},
            {"interference", scene.interference.has_value() || scene.interference_rank > 0},
            {"interference_rank", scene.interference_rank},
            {"interference_energy_ratio", scene.interference_energy_ratio}};
  if (g) j["geometry"] = geometry_to_json(*g);
  return j;
}

SceneFile scene_from_json(const Json& j) {
  reject_unknown(j, {"scatterers", "seed", "snr_db", "interference", "interference_rank",
                     "interference_energy_ratio", "geometry"},
                 "scene");
  SceneFile f;
  if (!j.contains("scatterers") || !j["scatterers"].is_array()) {
    throw ConfigError("scene: 'scatterers' array is required");
  }
  for (const auto& e : j["scatterers"]) {
    reject_unknown(e, {"x", "y", "z", "amp_re", "amp_im", "kind"}, "scene.scatterers[]");
    for (const char* key : {"x", "y", "z", "amp_re"}) {
      if (!e.contains(key)) throw ConfigError(std::string("scene.scatterers[]: '") + key + "' is required");
    }
    Scatterer s;
    s.position = {number(e["x"], "scene.scatterers[].x"), number(e["y"], "scene.scatterers[].y"),
                  number(e["z"], "scene.scatterers[].z")};
    const double im = e.contains("amp_im") ? number(e["amp_im"], "scene.scatterers[].amp_im") : 0.0;
    s.amplitude = {number(e["amp_re"], "scene.scatterers[].amp_re"), im};
    if (e.contains("kind")) {
      const std::string kind = text(e["kind"], "scene.scatterers[].kind");
      if (kind != "point" && kind != "distributed") {
        throw ConfigError("scene.scatterers[]: kind must be 'point' or 'distributed'");
      }
      s.distributed = kind == "distributed";
    }
    f.scene.scatterers.push_back(s);
  }
  if (j.contains("seed")) f.scene.seed = unsigned_int(j["seed"], "scene.seed");
  if (j.contains("snr_db")) {
    const double snr = number_or_inf(j["snr_db"], "scene.snr_db");
    if (!std::isinf(snr)) f.scene.snr_db = snr;
  }
  if (j.contains("interference")) {
    if (!j["interference"].is_boolean()) throw ConfigError("scene.interference: expected a boolean");
    f.has_interference = j["interference"].get<bool>();
  }
  if (j.contains("interference_rank")) {
    f.scene.interference_rank = unsigned_int(j["interference_rank"], "scene.interference_rank");
  }
  if (j.contains("interference_energy_ratio")) {
    f.scene.interference_energy_ratio =
        number(j["interference_energy_ratio"], "scene.interference_energy_ratio");
  }
  if (j.contains("geometry")) f.geometry = geometry_from_json(j["geometry"]);
  return f;
}

std::string to_string(EchoModel m) { return m == EchoModel::Physical ? "physical" : "approximated"; }

EchoModel echo_model_from_string(const std::string& s) {
  if (s == "physical") return EchoModel::Physical;
  if (s == "approximated") return EchoModel::Approximated;
  throw ConfigError("unknown echo model '" + s + "'");
}

RadarGeometry RunConfig::geometry_for(TaskId t) const {
  return geometry ? *geometry : table1_geometry(t);
}

double RunConfig::snr_for(TaskId t) const { return snr_db ? *snr_db : task_preset(t).default_snr_db; }

SolverParams RunConfig::SolverOverrides::apply(SolverParams base) const {
  if (gamma) base.gamma = *gamma;
  if (max_iters) base.max_iters = *max_iters;
  if (rel_tol) base.rel_tol = *rel_tol;
  if (component_count) base.component_count = *component_count;
  return base;
}

TaskPreset RunConfig::preset_for(TaskId t) const {
  TaskPreset p = task_preset(t);
  p.solver = solver.apply(p.solver);
  if (cognitions) {
    p.cognitions = *cognitions;
    std::size_t needed = 1;
    for (const auto& c : p.cognitions) needed = std::max(needed, c.component + 1);
    p.component_count = solver.component_count.value_or(needed);
    p.output_component = 0;
  } else if (solver.component_count) {
    p.component_count = *solver.component_count;
  }
  if (output_component) p.output_component = *output_component;
  if (p.output_component >= p.component_count) {
    throw ConfigError("output_component " + std::to_string(p.output_component) + " is out of range");
  }
  p.solver.component_count = p.component_count;
  p.geometry_default = geometry_for(t);
  return p;
}

RunConfig run_config_from_json(const Json& j) {
  reject_unknown(j, {"geometry", "task", "seed", "snr_db", "echo_model", "solver", "cognitions",
                     "output_component", "sparse_beta", "paths"},
                 "config");
  RunConfig c;
  if (j.contains("geometry")) c.geometry = geometry_from_json(j["geometry"]);
  if (j.contains("task")) {
    if (!j["task"].is_number_integer()) throw ConfigError("config.task: expected an integer");
    c.task = task_from_int(j["task"].get<int>());
  }
  if (j.contains("seed")) c.seed = unsigned_int(j["seed"], "config.seed");
  if (j.contains("snr_db")) {
    c.snr_db = number_or_inf(j["snr_db"], "config.snr_db");
    if (std::isnan(*c.snr_db) || *c.snr_db == -std::numeric_limits<double>::infinity()) {
      throw ConfigError("config.snr_db must be finite or +inf");
    }
  }
  if (j.contains("echo_model")) c.echo_model = echo_model_from_string(text(j["echo_model"], "config.echo_model"));
  if (j.contains("solver")) {
    const Json& s = j["solver"];
    reject_unknown(s, {"gamma", "max_iters", "rel_tol", "component_count"}, "config.solver");
    if (s.contains("gamma")) c.solver.gamma = number(s["gamma"], "config.solver.gamma");
    if (s.contains("max_iters")) {
      const auto iters = unsigned_int(s["max_iters"], "config.solver.max_iters");
      if (iters > 1000000) throw ConfigError("config.solver.max_iters is too large");
      c.solver.max_iters = static_cast<int>(iters);
    }
    if (s.contains("rel_tol")) c.solver.rel_tol = number(s["rel_tol"], "config.solver.rel_tol");
    if (s.contains("component_count")) {
      c.solver.component_count = unsigned_int(s["component_count"], "config.solver.component_count");
    }
    try {
      c.solver.apply(SolverParams{}).validate();
    } catch (const ParameterError& e) {
      throw ConfigError(std::string("config.solver: ") + e.what());
    }
  }
  if (j.contains("cognitions")) {
    if (!j["cognitions"].is_array() || j["cognitions"].empty()) {
      throw ConfigError("config.cognitions: expected a non-empty array");
    }
    std::vector<CognitionSpec> list;
    for (const auto& e : j["cognitions"]) list.push_back(cognition_from_json(e));
    c.cognitions = std::move(list);
  }
  if (j.contains("output_component")) {
    c.output_component = unsigned_int(j["output_component"], "config.output_component");
  }
  if (j.contains("sparse_beta")) {
    c.sparse_beta = number(j["sparse_beta"], "config.sparse_beta");
    if (!(c.sparse_beta > 0.0) || !std::isfinite(c.sparse_beta)) {
      throw ConfigError("config.sparse_beta must be positive");
    }
  }
  if (j.contains("paths")) {
    const Json& p = j["paths"];
    reject_unknown(p, {"echo", "truth", "scene", "image"}, "config.paths");
    for (auto [key, field] : {std::pair{"echo", &c.paths.echo}, {"truth", &c.paths.truth},
                              {"scene", &c.paths.scene}, {"image", &c.paths.image}}) {
      if (p.contains(key)) *field = text(p[key], std::string("config.paths.") + key);
    }
  }
  return c;
}

RunConfig load_run_config(const std::string& path) {
  const std::string body = read_file(path);
  Json j;
  try {
    j = Json::parse(body);
  } catch (const Json::parse_error& e) {
    throw ConfigError(path + ": invalid JSON: " + e.what());
  }
  return run_config_from_json(j);
}

Json report_to_json(const MetricReport& r) {
  Json j = Json::object();
  if (!r.ree.empty()) {
    j["ree"] = {{"values", r.ree},
                {"mean", r.mean_ree ? Json(*r.mean_ree) : Json(nullptr)},
                {"convention", r.ree_convention},
                {"radius_voxels", r.ree_radius_voxels}};
  }
  if (r.ssim) {
    j["ssim"] = {{"value", *r.ssim},
                 {"window", r.ssim_window},
                 {"projection", r.ssim_projection},
                 {"axis", r.ssim_axis}};
  }
  if (r.tbr_db) {
    j["tbr"] = {{"value_db", number_to_json(*r.tbr_db)},
                {"mask", r.tbr_mask},
                {"dilation", r.tbr_dilation}};
  }
  return j;
}

MetricReport report_from_json(const Json& j) {
  try {
    MetricReport r;
    reject_unknown(j, {"ree", "ssim", "tbr"}, "report");
    if (j.empty()) throw ConfigError("report: no metric present");
    if (j.contains("ree")) {
      const Json& e = j["ree"];
      reject_unknown(e, {"values", "mean", "convention", "radius_voxels"}, "report.ree");
      if (!e.contains("values") || !e["values"].is_array() || e["values"].empty()) {
        throw ConfigError("report.ree.values: expected a non-empty array");
      }
      for (const auto& v : e["values"]) {
        const double x = number(v, "report.ree.values[]");
        if (!(x >= 0.0)) throw ConfigError("report.ree.values[]: must be >= 0");
        r.ree.push_back(x);
      }
      if (!e.contains("mean")) throw ConfigError("report.ree.mean is required");
      if (!e["mean"].is_null()) r.mean_ree = number(e["mean"], "report.ree.mean");
      r.ree_convention = text(e.at("convention"), "report.ree.convention");
      r.ree_radius_voxels = number(e.at("radius_voxels"), "report.ree.radius_voxels");
    }
    if (j.contains("ssim")) {
      const Json& e = j["ssim"];
      reject_unknown(e, {"value", "window", "projection", "axis"}, "report.ssim");
      const double v = number(e.at("value"), "report.ssim.value");
      if (!(v >= -1.0 && v <= 1.0)) throw ConfigError("report.ssim.value: must lie in [-1, 1]");
      r.ssim = v;
      r.ssim_window = unsigned_int(e.at("window"), "report.ssim.window");
      r.ssim_projection = text(e.at("projection"), "report.ssim.projection");
      r.ssim_axis = static_cast<int>(unsigned_int(e.at("axis"), "report.ssim.axis"));
    }
    if (j.contains("tbr")) {
      const Json& e = j["tbr"];
      reject_unknown(e, {"value_db", "mask", "dilation"}, "report.tbr");
      const double v = number_or_inf(e.at("value_db"), "report.tbr.value_db");
      if (std::isnan(v)) throw ConfigError("report.tbr.value_db: NaN");
      r.tbr_db = v;
      r.tbr_mask = text(e.at("mask"), "report.tbr.mask");
      r.tbr_dilation = unsigned_int(e.at("dilation"), "report.tbr.dilation");
    }
    return r;
  } catch (const ConfigError& e) {
    throw FormatError(e.what());
  } catch (const Json::exception& e) {
    throw FormatError(std::string("report: ") + e.what());
  }
}

namespace {

struct PngWriter {
  png_structp png = nullptr;
  png_infop info = nullptr;
  ~PngWriter() { png_destroy_write_struct(&png, &info); }
};

void append_png_bytes(png_structp png, png_bytep data, png_size_t len) {
  auto* out = static_cast<std::string*>(png_get_io_ptr(png));
  out->append(reinterpret_cast<const char*>(data), len);
}

void png_warning_handler(png_structp, png_const_charp) {}

}  // namespace

void write_png(const std::string& path, const Image2D& img, double scale_max) {
  if (img.rows == 0 || img.cols == 0) throw DimensionError("write_png: empty image");
  std::vector<png_byte> pixels(img.rows * img.cols, 0);
  if (scale_max > 0.0) {
    for (std::size_t n = 0; n < pixels.size(); ++n) {
      const double v = std::clamp(img.px[n] / scale_max, 0.0, 1.0);
      pixels[n] = static_cast<png_byte>(std::lround(255.0 * v));
    }
  }
  std::string bytes;
  {
    PngWriter w;
    w.png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, png_warning_handler);
    if (w.png == nullptr) throw IoError("libpng: cannot create writer");
    w.info = png_create_info_struct(w.png);
    if (w.info == nullptr) throw IoError("libpng: cannot create info");
    if (setjmp(png_jmpbuf(w.png))) throw IoError("libpng: encoding failed for " + path);
    png_set_write_fn(w.png, &bytes, append_png_bytes, nullptr);
    png_set_IHDR(w.png, w.info, static_cast<png_uint_32>(img.cols), static_cast<png_uint_32>(img.rows), 8,
                 PNG_COLOR_TYPE_GRAY, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
                 PNG_FILTER_TYPE_DEFAULT);
    png_write_info(w.png, w.info);
    for (std::size_t r = 0; r < img.rows; ++r) png_write_row(w.png, &pixels[r * img.cols]);
    png_write_end(w.png, nullptr);
  }
  write_file_atomic(path, bytes);
}

void write_csv(const std::string& path, const Image2D& img) {
  std::ostringstream ss;
  ss.precision(17);
  for (std::size_t r = 0; r < img.rows; ++r) {
    for (std::size_t c = 0; c < img.cols; ++c) {
      if (c) ss << ',';
      ss << img(r, c);
    }
    ss << '\n';
  }
  write_file_atomic(path, ss.str());
}

std::vector<std::string> export_projections(const std::string& base, const ComplexTensor3& img) {
  const double global_max = max_abs(img);
  const char* names[3] = {"x", "y", "z"};
  std::vector<std::string> written;
  Json sidecar = {{"global_max", global_max}, {"mapping", "round(255 * value / global_max)"},
                  {"dims", {img.dims().nx, img.dims().ny, img.dims().nz}}};
  for (int axis = 0; axis < 3; ++axis) {
    const Image2D mip = max_intensity_projection(img, axis);
    const std::string stem = base + ".mip_" + names[axis];
    write_png(stem + ".png", mip, global_max);
    write_csv(stem + ".csv", mip);
    written.push_back(stem + ".png");
    written.push_back(stem + ".csv");
    sidecar["projections"][names[axis]] = {{"png", fs::path(stem + ".png").filename().string()},
                                           {"csv", fs::path(stem + ".csv").filename().string()},
                                           {"rows", mip.rows},
                                           {"cols", mip.cols}};
  }
  write_file_atomic(base + ".mip.json", sidecar.dump(2) + "\n");
  written.push_back(base + ".mip.json");
  return written;
}

}  // namespace rimg
