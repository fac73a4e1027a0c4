#include "rimg/cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <iomanip>
#include <numeric>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "rimg/io.hpp"
#include "rimg/metrics.hpp"
#include "rimg/operators.hpp"
#include "rimg/simulator.hpp"
#include "rimg/solver.hpp"
#include "rimg/tasks.hpp"

namespace rimg {

namespace {

struct SimulateArgs {
  std::optional<int> task;
  std::string config, out_echo, out_truth, out_scene;
};

struct ImageArgs {
  std::string method;
  std::optional<int> task;
  std::string config, echo, out;
  bool export_png = false;
};

struct MetricsArgs {
  std::string truth, est, scene, metric = "all", out;
};

RunConfig config_or_default(const std::string& path) {
  return path.empty() ? RunConfig{} : load_run_config(path);
}

TaskId resolve_task(const std::optional<int>& flag, const RunConfig& cfg) {
  if (flag) return task_from_int(*flag);
  if (cfg.task) return *cfg.task;
  throw ConfigError("no task given (use --task or the config 'task' key)");
}

std::string pick_path(const std::string& flag, const std::optional<std::string>& cfg, const char* what) {
  if (!flag.empty()) return flag;
  if (cfg) return *cfg;
  throw ConfigError(std::string("no ") + what + " path given");
}

std::string format_snr(double snr) {
  if (std::isinf(snr)) return "inf";
  std::ostringstream ss;
  ss << snr;
  return ss.str();
}

int cmd_simulate(const SimulateArgs& a, std::ostream& out) {
  const RunConfig cfg = config_or_default(a.config);
  const TaskId task = resolve_task(a.task, cfg);
  const std::string echo_path = pick_path(a.out_echo, cfg.paths.echo, "--out-echo");
  const std::string truth_path = pick_path(a.out_truth, cfg.paths.truth, "--out-truth");
  std::string scene_path = a.out_scene;
  if (scene_path.empty()) {
    scene_path = cfg.paths.scene ? *cfg.paths.scene
                                 : std::filesystem::path(truth_path).replace_extension(".scene.json").string();
  }

  const RadarGeometry g = cfg.geometry_for(task);
  const OperatorPair op = build_operator_pair(g);
  Phantom ph = make_phantom(task, g, cfg.seed);
  ph.scene.seed = cfg.seed;
  const double snr = cfg.snr_for(task);
  if (std::isinf(snr)) {
    ph.scene.snr_db.reset();
  } else {
    ph.scene.snr_db = snr;
  }
  const ComplexTensor3 echo = synthesize_echo(ph.scene, op, cfg.echo_model);
  const std::string scene_text = scene_to_json(ph.scene, g).dump(2) + "\n";

  write_tensor(echo_path, echo);
  write_tensor(truth_path, ph.truth);
  write_file_atomic(scene_path, scene_text);
  out << "simulate: task " << static_cast<int>(task) << " (" << to_string(task) << "), dims "
      << g.dims().str() << ", snr_db " << format_snr(snr) << ", seed " << cfg.seed << ", model "
      << to_string(cfg.echo_model) << ", " << ph.scene.scatterers.size() << " scatterers\n";
  return kExitOk;
}

int cmd_image(const ImageArgs& a, std::ostream& out) {
  const RunConfig cfg = config_or_default(a.config);
  const std::string echo_path = pick_path(a.echo, cfg.paths.echo, "--echo");
  const std::string out_path = pick_path(a.out, cfg.paths.image, "--out");

  std::optional<TaskId> task;
  if (a.task || cfg.task) task = resolve_task(a.task, cfg);
  if (a.method == "task" && !task) throw ConfigError("--method task needs a task");
  if (!task && !cfg.geometry) throw ConfigError("no geometry: give --task or a config 'geometry'");
  const RadarGeometry g = task ? cfg.geometry_for(*task) : *cfg.geometry;

  const ComplexTensor3 y = read_tensor(echo_path);
  if (y.dims() != g.dims()) {
    throw DimensionError("echo dims " + y.dims().str() + " do not match geometry dims " + g.dims().str());
  }
  const OperatorPair op = build_operator_pair(g);

  ComplexTensor3 image;
  std::string detail;
  if (a.method == "mf") {
    image = matched_filter(op, y);
  } else {
    SolverState st;
    std::size_t output = 0;
    if (a.method == "sparse") {
      SolverParams params = cfg.solver.apply(SolverParams{});
      params.component_count = 1;
      st = admm_solve(op, y, sparse_baseline_cognitions(cfg.sparse_beta), params);
    } else {
      const TaskPreset preset = cfg.preset_for(*task);
      output = preset.output_component;
      st = solve_preset(preset, op, y);
    }
    image = std::move(st.components.at(output));
    std::ostringstream ss;
    ss << ", " << st.iterations << " iterations, " << (st.converged ? "converged" : "stopped at max_iters");
    detail = ss.str();
  }

  write_tensor(out_path, image);
  std::size_t exported = 0;
  if (a.export_png) exported = export_projections(out_path, image).size();
  out << "image: method " << a.method;
  if (task) out << ", task " << static_cast<int>(*task);
  out << ", dims " << image.dims().str() << detail;
  if (exported) out << ", " << exported << " projection files";
  out << "\n";
  return kExitOk;
}

int cmd_metrics(const MetricsArgs& a, std::ostream& out) {
  const bool want_ree = a.metric == "ree" || a.metric == "all";
  const bool want_ssim = a.metric == "ssim" || a.metric == "all";
  const bool want_tbr = a.metric == "tbr" || a.metric == "all";
  if (a.metric == "ree" && a.scene.empty()) {
    throw ConfigError("--metric ree needs --scene (point-scatterer ground truth)");
  }

  const ComplexTensor3 truth = read_tensor(a.truth);
  const ComplexTensor3 est = read_tensor(a.est);
  require_same_dims(est.dims(), truth.dims(), "metrics: estimate vs truth");

  std::optional<SceneFile> scene;
  if (!a.scene.empty()) {
    scene = scene_from_json(parse_json(read_file(a.scene), a.scene));
  }

  MetricReport r;
  if (want_ree && scene) {
    const bool usable = scene->point_scene();
    if (!usable && a.metric == "ree") {
      throw ConfigError("REE is defined for point-scatterer scenes; " + a.scene + " has extended content");
    }
    if (usable) {
      if (!scene->geometry) throw ConfigError(a.scene + ": REE needs the scene geometry");
      r.ree = relative_energy_error(est, scene->scene, *scene->geometry);
      r.mean_ree = std::accumulate(r.ree.begin(), r.ree.end(), 0.0) / static_cast<double>(r.ree.size());
    }
  }
  if (want_ssim) {
    r.ssim = ssim(max_intensity_projection(truth, r.ssim_axis), max_intensity_projection(est, r.ssim_axis));
  }
  if (want_tbr) r.tbr_db = tbr(est, dilate(support_of(truth), r.tbr_dilation));

  const Json j = report_to_json(r);
  report_from_json(j);
  write_file_atomic(a.out, j.dump(2) + "\n");

  std::ostringstream line;
  line << "metrics:";
  if (r.mean_ree) line << " mean REE " << std::fixed << std::setprecision(2) << 100.0 * *r.mean_ree << "%";
  if (r.ssim) line << " SSIM " << std::fixed << std::setprecision(4) << *r.ssim;
  if (r.tbr_db) {
    if (std::isinf(*r.tbr_db)) {
      line << " TBR inf dB";
    } else {
      line << " TBR " << std::fixed << std::setprecision(2) << *r.tbr_db << " dB";
    }
  }
  out << line.str() << "\n";
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"3D radar imaging toolkit", "rimg"};
  app.require_subcommand(1);

  SimulateArgs sa;
  auto* sim = app.add_subcommand("simulate", "Synthesize a task phantom and its echo");
  sim->add_option("--task", sa.task, "task id (1, 2 or 3)");
  sim->add_option("--config", sa.config, "run config JSON");
  sim->add_option("--out-echo", sa.out_echo, "echo tensor file");
  sim->add_option("--out-truth", sa.out_truth, "ground-truth image tensor file");
  sim->add_option("--out-scene", sa.out_scene, "scene JSON (default: next to the truth file)");

  ImageArgs ia;
  auto* img = app.add_subcommand("image", "Reconstruct an image from an echo");
  img->add_option("--method", ia.method, "mf, sparse or task")
      ->required()
      ->check(CLI::IsMember({"mf", "sparse", "task"}));
  img->add_option("--task", ia.task, "task id (1, 2 or 3)");
  img->add_option("--config", ia.config, "run config JSON");
  img->add_option("--echo", ia.echo, "echo tensor file");
  img->add_option("--out", ia.out, "output image tensor file");
  img->add_flag("--export-png", ia.export_png, "also write max-intensity projections (PNG + CSV)");

  MetricsArgs ma;
  auto* met = app.add_subcommand("metrics", "Score an estimate against ground truth");
  met->add_option("--truth", ma.truth, "ground-truth image tensor file")->required();
  met->add_option("--est", ma.est, "estimated image tensor file")->required();
  met->add_option("--scene", ma.scene, "scene JSON");
  met->add_option("--metric", ma.metric, "ree, ssim, tbr or all")
      ->check(CLI::IsMember({"ree", "ssim", "tbr", "all"}));
  met->add_option("--out", ma.out, "report JSON")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitConfig;
  }

  try {
    if (sim->parsed()) return cmd_simulate(sa, out);
    if (img->parsed()) return cmd_image(ia, out);
    return cmd_metrics(ma, out);
  } catch (const DimensionError& e) {
    err << "error: dimension mismatch: " << e.what() << "\n";
    return kExitDimension;
  } catch (const ConvergenceError& e) {
    err << "error: solver failure: " << e.what() << "\n";
    return kExitSolver;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const ParameterError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const GeometryError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const FormatError& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInternal;
  }
}

}  // namespace rimg
