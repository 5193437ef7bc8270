// Copyright 2026 The raysift Authors
// SPDX-License-Identifier: Apache-2.0

#include "raysift/harness.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <set>
#include <sstream>

#include "raysift/map_io.hpp"

namespace raysift {

using json = nlohmann::json;

namespace {

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys = {
      "scene.preset",       "scene.frames",         "scene.motion_scale",
      "cloth.shell_offset", "cloth.falloff",        "cloth.sigma_max",
      "camera.width",       "camera.height",        "camera.x_min",
      "camera.x_max",       "camera.y_min",         "camera.y_max",
      "camera.t_near",      "camera.t_far",         "ero.enabled",
      "ero.tau",            "ero.k1",               "ero.k2",
      "ero.mode",           "ero.binarize_threshold", "eio.enabled",
      "eio.n_patch",        "eio.shift",            "eio.margin",
      "eio.wide_threshold", "eio.ns_reduced",       "eio.ns_full",
      "render.sampler",     "render.stub_work",     "render.threads",
      "render.background",  "run.seed",             "run.output",
      "run.sweep",          "run.write_images",     "coverage.weight_threshold",
      "coverage.density_threshold", "check.min_psnr", "check.max_coverage_errors",
      "check.max_sampling_ratio",
  };
  return keys;
}

template <typename F>
auto wrap(const std::string& key, F&& f) {
  try {
    return f();
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError("key '" + key + "': " + e.what());
  }
}

Rgb parse_rgb(const KeyValueConfig& kv, const std::string& key, Rgb fallback) {
  if (!kv.has(key)) return fallback;
  const auto parts = kv.get_list(key);
  if (parts.size() != 3) throw ConfigError("key '" + key + "': expected 'r, g, b'");
  Rgb c;
  double* slots[3] = {&c.r, &c.g, &c.b};
  for (int i = 0; i < 3; ++i) {
    try {
      *slots[i] = std::stod(parts[static_cast<std::size_t>(i)]);
    } catch (const std::exception&) {
      throw ConfigError("key '" + key + "': bad colour component '" + parts[static_cast<std::size_t>(i)] + "'");
    }
  }
  return c;
}

json number_or_inf(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  return v;
}

std::string frame_stem(int frame) {
  std::ostringstream ss;
  ss << "frame_" << std::setw(4) << std::setfill('0') << frame;
  return ss.str();
}

json frame_json(const FrameReport& f, bool with_timing) {
  json j;
  j["frame"] = f.frame;
  j["candidates"] = f.training_candidates ? "train" : "infer";
  j["rays_rendered"] = f.rays_rendered;
  j["points_sampled"] = f.points_sampled;
  j["points_deformed"] = f.points_deformed;
  j["wide_rays"] = f.wide_rays;
  j["stub_checksum"] = f.stub_checksum;
  j["sampling_ratio"] = f.sampling_ratio;
  j["sampling_volume"] = f.sampling_volume;
  j["psnr"] = number_or_inf(f.comparison.psnr);
  j["max_abs_error"] = f.comparison.max_abs_error;
  j["ero_misses"] = f.comparison.ero_misses;
  j["eio_misses"] = f.comparison.eio_misses;
  j["coverage_errors"] = f.comparison.coverage_errors;
  j["candidate_violations"] = f.candidate_violations;
  if (with_timing) {
    j["timing"] = {{"render_seconds", f.timing.render_seconds},
                   {"oracle_seconds", f.timing.oracle_seconds}};
  }
  return j;
}

json label_summary_json(const LabelReport& r) {
  json j;
  j["label"] = r.label;
  j["ero"] = r.ero;
  j["eio"] = r.eio;
  j["n_s"] = r.n_s;
  j["candidate_mode"] = r.candidate_mode;
  j["shift"] = r.shift;
  j["n_patch"] = r.n_patch;
  j["margin"] = r.margin;
  j["frames"] = r.frames.size();
  j["sampling_ratio"] = r.mean_sampling_ratio();
  j["sampling_volume"] = r.mean_sampling_volume();
  j["points_sampled"] = r.total_points();
  j["psnr"] = number_or_inf(r.pooled_psnr());
  j["psnr_min"] = number_or_inf(r.min_psnr());
  j["coverage_errors"] = r.total_coverage_errors();
  j["candidate_violations"] = r.total_candidate_violations();
  return j;
}

void ensure_directory(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir)) {
    throw std::runtime_error("cannot create output directory '" + dir.string() + "'");
  }
  const auto probe = dir / ".write_probe";
  {
    std::ofstream out(probe);
    if (!out) throw std::runtime_error("output directory '" + dir.string() + "' is not writable");
  }
  std::filesystem::remove(probe, ec);
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << text;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

void RunConfig::validate() const {
  if (frames < 1) throw ConfigError("scene.frames must be >= 1");
  try {
    camera.validate();
    ero.validate();
    eio.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  if (render.threads < 1) throw ConfigError("render.threads must be >= 1");
  if (render.stub.work_units < 0) throw ConfigError("render.stub_work must be >= 0");
}

RunConfig parse_run_config(const KeyValueConfig& kv) {
  const auto unknown = kv.unknown_keys(known_keys());
  if (!unknown.empty()) {
    std::string msg = "unknown config key(s):";
    for (const auto& k : unknown) msg += " " + k;
    throw ConfigError(msg);
  }

  RunConfig cfg;
  cfg.scene = wrap("scene.preset", [&] { return parse_scene_preset(kv.get_string("scene.preset", "default")); });
  cfg.frames = kv.get_int("scene.frames", cfg.frames);
  cfg.motion_scale = kv.get_double("scene.motion_scale", cfg.motion_scale);
  if (kv.has("cloth.shell_offset")) cfg.cloth_shell_offset = kv.get_double("cloth.shell_offset", 0.0);
  if (kv.has("cloth.falloff")) cfg.cloth_falloff = kv.get_double("cloth.falloff", 0.0);
  if (kv.has("cloth.sigma_max")) cfg.cloth_sigma_max = kv.get_double("cloth.sigma_max", 0.0);

  auto& cam = cfg.camera;
  cam.width = kv.get_int("camera.width", cam.width);
  cam.height = kv.get_int("camera.height", cam.height);
  cam.x_min = kv.get_double("camera.x_min", cam.x_min);
  cam.x_max = kv.get_double("camera.x_max", cam.x_max);
  cam.y_min = kv.get_double("camera.y_min", cam.y_min);
  cam.y_max = kv.get_double("camera.y_max", cam.y_max);
  cam.t_near = kv.get_double("camera.t_near", cam.t_near);
  cam.t_far = kv.get_double("camera.t_far", cam.t_far);

  cfg.ero_enabled = kv.get_bool("ero.enabled", cfg.ero_enabled);
  cfg.ero.tau = kv.get_double("ero.tau", cfg.ero.tau);
  cfg.ero.k1 = kv.get_int("ero.k1", cfg.ero.k1);
  cfg.ero.k2 = kv.get_int("ero.k2", cfg.ero.k2);
  cfg.ero.mode = wrap("ero.mode", [&] { return parse_candidate_mode(kv.get_string("ero.mode", "averaging")); });
  cfg.ero.binarize_threshold =
      static_cast<float>(kv.get_double("ero.binarize_threshold", cfg.ero.binarize_threshold));

  cfg.eio_enabled = kv.get_bool("eio.enabled", cfg.eio_enabled);
  cfg.eio.n_patch = kv.get_int("eio.n_patch", cfg.eio.n_patch);
  cfg.eio.shift = kv.get_bool("eio.shift", cfg.eio.shift);
  const std::string margin = kv.get_string("eio.margin", "default");
  if (margin == "scene") {
    cfg.margin_from_scene = true;
  } else if (margin != "default") {
    cfg.eio.margin = kv.get_double("eio.margin", 0.0);
  }
  if (kv.get_string("eio.wide_threshold", "default") != "default") {
    cfg.eio.wide_threshold = kv.get_double("eio.wide_threshold", 0.0);
  }
  cfg.eio.ns_reduced = kv.get_int("eio.ns_reduced", cfg.eio.ns_reduced);
  cfg.eio.ns_full = kv.get_int("eio.ns_full", cfg.eio.ns_full);

  cfg.render.sampler = wrap("render.sampler", [&] { return parse_sampler_mode(kv.get_string("render.sampler", "midpoint")); });
  cfg.render.stub.work_units = kv.get_int("render.stub_work", 0);
  cfg.render.threads = kv.get_int("render.threads", 1);
  cfg.render.background = parse_rgb(kv, "render.background", cfg.render.background);

  const double seed = kv.get_double("run.seed", 0.0);
  if (seed < 0.0 || seed != std::floor(seed)) throw ConfigError("key 'run.seed': expected a non-negative integer");
  cfg.render.seed = static_cast<std::uint64_t>(seed);
  cfg.output_dir = kv.get_string("run.output", cfg.output_dir.string());
  cfg.sweep = kv.get_list("run.sweep");
  cfg.write_images = kv.get_bool("run.write_images", cfg.write_images);

  cfg.coverage.weight = kv.get_double("coverage.weight_threshold", cfg.coverage.weight);
  cfg.coverage.density = kv.get_double("coverage.density_threshold", cfg.coverage.density);

  cfg.check.min_psnr = kv.get_double("check.min_psnr", cfg.check.min_psnr);
  const int max_cov = kv.get_int("check.max_coverage_errors", 0);
  if (max_cov < 0) throw ConfigError("key 'check.max_coverage_errors' must be >= 0");
  cfg.check.max_coverage_errors = static_cast<std::uint64_t>(max_cov);
  cfg.check.max_sampling_ratio = kv.get_double("check.max_sampling_ratio", cfg.check.max_sampling_ratio);

  cfg.validate();
  for (const auto& letter : cfg.sweep) (void)apply_preset(cfg, letter);
  return cfg;
}

RunConfig load_run_config(const std::string& path) {
  return parse_run_config(KeyValueConfig::load(path));
}

RunConfig apply_preset(const RunConfig& base, const std::string& letter) {
  RunConfig cfg = base;
  cfg.sweep.clear();
  cfg.eio.ns_full = 96;
  if (letter == "F") {
    cfg.ero_enabled = false;
    cfg.eio_enabled = false;
  } else if (letter == "G") {
    cfg.ero_enabled = true;
    cfg.eio_enabled = false;
  } else if (letter == "H") {
    cfg.ero_enabled = false;
    cfg.eio_enabled = true;
    cfg.eio.ns_reduced = 48;
  } else if (letter == "I") {
    cfg.ero_enabled = true;
    cfg.eio_enabled = true;
    cfg.eio.ns_reduced = 48;
  } else if (letter == "J") {
    cfg.ero_enabled = true;
    cfg.eio_enabled = true;
    cfg.eio.ns_reduced = 28;
  } else {
    throw ConfigError("unknown sweep label '" + letter + "' (expected one of F, G, H, I, J)");
  }
  return cfg;
}

std::string config_label(const RunConfig& cfg) {
  const int n_s = cfg.eio_enabled ? cfg.eio.ns_reduced : cfg.eio.ns_full;
  std::string label;
  if (cfg.eio.ns_full == 96) {
    if (!cfg.ero_enabled && !cfg.eio_enabled) label = "F";
    if (cfg.ero_enabled && !cfg.eio_enabled) label = "G";
    if (!cfg.ero_enabled && cfg.eio_enabled && n_s == 48) label = "H";
    if (cfg.ero_enabled && cfg.eio_enabled && n_s == 48) label = "I";
    if (cfg.ero_enabled && cfg.eio_enabled && n_s == 28) label = "J";
  }
  if (label.empty()) {
    if (cfg.ero_enabled) label += "ero-";
    if (cfg.eio_enabled) label += "eio-";
    if (label.empty()) label = "dense-";
    label += "ns" + std::to_string(n_s);
    if (cfg.eio.ns_full != 96) label += "-full" + std::to_string(cfg.eio.ns_full);
  }
  if (cfg.ero_enabled && cfg.ero.mode == CandidateMode::binary) label += "+binary";
  if (cfg.eio_enabled && !cfg.eio.shift) label += "+noshift";
  if (cfg.eio_enabled && cfg.eio.n_patch != 2) label += "+np" + std::to_string(cfg.eio.n_patch);
  return label;
}

Scene build_scene(const RunConfig& cfg) {
  Scene base = make_scene(cfg.scene, cfg.frames, cfg.motion_scale, cfg.render.background);
  if (!cfg.cloth_shell_offset && !cfg.cloth_falloff && !cfg.cloth_sigma_max) return base;
  ClothField cloth = base.cloth();
  if (cfg.cloth_shell_offset) cloth.shell_offset = *cfg.cloth_shell_offset;
  if (cfg.cloth_falloff) cloth.falloff = *cfg.cloth_falloff;
  if (cfg.cloth_sigma_max) cloth.sigma_max = *cfg.cloth_sigma_max;
  return Scene(base.body(), cloth, cfg.frames, cfg.render.background);
}

double LabelReport::mean_sampling_ratio() const {
  if (frames.empty()) return 0.0;
  double s = 0.0;
  for (const auto& f : frames) s += f.sampling_ratio;
  return s / static_cast<double>(frames.size());
}

double LabelReport::mean_sampling_volume() const {
  if (frames.empty()) return 0.0;
  double s = 0.0;
  for (const auto& f : frames) s += f.sampling_volume;
  return s / static_cast<double>(frames.size());
}

double LabelReport::pooled_psnr() const {
  if (frames.empty()) return std::numeric_limits<double>::infinity();
  double mse = 0.0;
  for (const auto& f : frames) {
    if (!std::isinf(f.comparison.psnr)) mse += std::pow(10.0, -f.comparison.psnr / 10.0);
  }
  mse /= static_cast<double>(frames.size());
  return mse == 0.0 ? std::numeric_limits<double>::infinity() : 10.0 * std::log10(1.0 / mse);
}

double LabelReport::min_psnr() const {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& f : frames) m = std::min(m, f.comparison.psnr);
  return m;
}

std::uint64_t LabelReport::total_coverage_errors() const {
  std::uint64_t n = 0;
  for (const auto& f : frames) n += f.comparison.coverage_errors;
  return n;
}

std::uint64_t LabelReport::total_candidate_violations() const {
  std::uint64_t n = 0;
  for (const auto& f : frames) n += f.candidate_violations;
  return n;
}

std::uint64_t LabelReport::total_points() const {
  std::uint64_t n = 0;
  for (const auto& f : frames) n += f.points_sampled;
  return n;
}

double LabelReport::render_seconds() const {
  double s = 0.0;
  for (const auto& f : frames) s += f.timing.render_seconds;
  return s;
}

double LabelReport::oracle_seconds() const {
  double s = 0.0;
  for (const auto& f : frames) s += f.timing.oracle_seconds;
  return s;
}

double LabelReport::seconds_per_frame() const {
  return frames.empty() ? 0.0 : render_seconds() / static_cast<double>(frames.size());
}

double LabelReport::speedup() const {
  const double r = render_seconds();
  return r > 0.0 ? oracle_seconds() / r : 0.0;
}

SequenceReport run_sequence(const RunConfig& cfg, bool write_artifacts) {
  cfg.validate();
  const Scene scene = build_scene(cfg);
  const CameraSpec& cam = cfg.camera;
  scene.validate(cam);

  std::vector<RunConfig> runs;
  if (cfg.sweep.empty()) {
    runs.push_back(cfg);
  } else {
    for (const auto& letter : cfg.sweep) runs.push_back(apply_preset(cfg, letter));
  }
  const double scene_margin = scene.cloth_depth_margin(cam);
  SequenceReport report;
  std::set<std::string> seen;
  for (auto& run : runs) {
    if (cfg.margin_from_scene) run.eio.margin = scene_margin;
    LabelReport lr;
    lr.label = config_label(run);
    if (!seen.insert(lr.label).second) throw ConfigError("duplicate run label '" + lr.label + "'");
    lr.ero = run.ero_enabled;
    lr.eio = run.eio_enabled;
    lr.n_s = run.eio_enabled ? run.eio.ns_reduced : run.eio.ns_full;
    lr.candidate_mode = to_string(run.ero.mode);
    lr.shift = run.eio.shift;
    lr.n_patch = run.eio.n_patch;
    lr.margin = run.eio.resolved_margin(cam);
    report.labels.push_back(std::move(lr));
  }

  if (write_artifacts) {
    ensure_directory(cfg.output_dir);
    for (const auto& lr : report.labels) ensure_directory(cfg.output_dir / lr.label);
  }

  const int oracle_ns = cfg.eio.ns_full;
  std::vector<std::optional<ScalarMap>> prev_weight(runs.size());

  for (int t = 1; t <= cfg.frames; ++t) {
    const ScalarMap depth = rasterize_depth(scene, cam, t);
    const ScalarMap silhouette = silhouette_from_depth(depth, cam);

    auto oracle_start = std::chrono::steady_clock::now();
    const RenderOutput oracle = render_oracle(scene, cam, t, depth, oracle_ns, cfg.render);
    const double oracle_seconds = seconds_since(oracle_start);

    for (std::size_t r = 0; r < runs.size(); ++r) {
      const RunConfig& run = runs[r];
      FrameReport fr;
      fr.frame = t;
      fr.training_candidates = t == 1 || !prev_weight[r];

      std::optional<ScalarMap> cand;
      RaySet rays = RaySet::full(cam.width, cam.height);
      if (run.ero_enabled) {
        cand = candidate_for_frame(t, prev_weight[r] ? &*prev_weight[r] : nullptr, silhouette, run.ero);
        rays = threshold_rays(*cand, run.ero.tau);
      }
      const RayIntervals intervals = run.eio_enabled ? compute_intervals(depth, run.eio, cam)
                                                     : full_intervals(cam, run.eio.ns_full);

      auto start = std::chrono::steady_clock::now();
      RenderOutput out = render_frame(scene, cam, t, depth, rays, intervals, run.render);
      fr.timing.render_seconds = seconds_since(start);
      fr.timing.oracle_seconds = oracle_seconds;

      PruningTrace trace;
      trace.scene = &scene;
      trace.camera = &cam;
      trace.frame = t;
      trace.depth = &depth;
      trace.rays = &rays;
      trace.intervals = &intervals;
      trace.oracle_ns = oracle_ns;
      trace.oracle_config = cfg.render;
      fr.comparison = compare(out, oracle, trace, run.coverage);

      fr.rays_rendered = out.counters.rays_rendered;
      fr.points_sampled = out.counters.points_sampled;
      fr.points_deformed = out.counters.points_deformed;
      fr.stub_checksum = out.counters.stub_checksum;
      fr.sampling_ratio = fr.comparison.sampling_ratio;
      fr.sampling_volume = sampling_volume_ratio(intervals, rays);
      if (run.eio_enabled) {
        for (std::size_t i = 0; i < intervals.size(); ++i) {
          if (rays.contains(i) && intervals.samples(i) == run.eio.ns_full) ++fr.wide_rays;
        }
      }
      if (cand && t >= 2) {
        for (std::size_t i = 0; i < cand->size(); ++i) {
          if (oracle.weight[i] > 1e-3f && !((*cand)[i] > 0.0f)) ++fr.candidate_violations;
        }
      }

      if (write_artifacts) {
        const auto dir = cfg.output_dir / report.labels[r].label;
        const auto stem = frame_stem(t);
        if (cfg.write_images) {
          write_ppm(dir / (stem + ".ppm"), out.image);
          write_epsm(dir / (stem + ".weight.epsm"), out.weight);
        }
        write_text(dir / (stem + ".json"), frame_json(fr, true).dump(2) + "\n");
      }

      // Feed forward only after this frame's render is complete.
      prev_weight[r] = std::move(out.weight);
      report.labels[r].frames.push_back(fr);
    }
  }

  if (write_artifacts) {
    write_text(cfg.output_dir / "report.json", report_json(cfg, report));
    write_text(cfg.output_dir / "table.txt", emit_table(report.labels));
  }
  return report;
}

std::string report_json(const RunConfig& cfg, const SequenceReport& report) {
  json root;
  root["config"] = {
      {"scene", to_string(cfg.scene)},
      {"frames", cfg.frames},
      {"motion_scale", cfg.motion_scale},
      {"width", cfg.camera.width},
      {"height", cfg.camera.height},
      {"t_near", cfg.camera.t_near},
      {"t_far", cfg.camera.t_far},
      {"tau", cfg.ero.tau},
      {"k1", cfg.ero.k1},
      {"k2", cfg.ero.k2},
      {"ns_full", cfg.eio.ns_full},
      {"sampler", to_string(cfg.render.sampler)},
      {"seed", cfg.render.seed},
      {"stub_work", cfg.render.stub.work_units},
  };
  json labels = json::array();
  json timing = json::object();
  for (const auto& lr : report.labels) {
    json entry = label_summary_json(lr);
    json frames = json::array();
    for (const auto& f : lr.frames) frames.push_back(frame_json(f, false));
    entry["per_frame"] = std::move(frames);
    labels.push_back(std::move(entry));

    json per_frame = json::array();
    for (const auto& f : lr.frames) {
      per_frame.push_back({{"render_seconds", f.timing.render_seconds},
                           {"oracle_seconds", f.timing.oracle_seconds}});
    }
    timing[lr.label] = {{"render_seconds", lr.render_seconds()},
                        {"oracle_seconds", lr.oracle_seconds()},
                        {"seconds_per_frame", lr.seconds_per_frame()},
                        {"speedup", lr.speedup()},
                        {"threads", cfg.render.threads},
                        {"per_frame", std::move(per_frame)}};
  }
  root["labels"] = std::move(labels);
  root["timing"] = std::move(timing);
  return root.dump(2) + "\n";
}

namespace {

void require_unique(const std::vector<LabelReport>& reports) {
  std::set<std::string> seen;
  for (const auto& r : reports) {
    if (!seen.insert(r.label).second) throw std::invalid_argument("duplicate label '" + r.label + "'");
  }
}

std::string format_psnr(double v) {
  if (std::isinf(v)) return "inf";
  std::ostringstream ss;
  ss << std::fixed << std::setprecision(2) << v;
  return ss.str();
}

}  // namespace

std::string emit_table(const std::vector<LabelReport>& reports) {
  require_unique(reports);
  std::ostringstream ss;
  ss << std::left << std::setw(30) << "config" << std::setw(5) << "ERO" << std::setw(5) << "EIO"
     << std::right << std::setw(5) << "n_s" << std::setw(12) << "ratio%" << std::setw(10) << "PSNR"
     << std::setw(10) << "errors" << std::setw(12) << "s/frame" << std::setw(10) << "speedup" << "\n";
  for (const auto& r : reports) {
    ss << std::left << std::setw(30) << r.label << std::setw(5) << (r.ero ? "yes" : "-")
       << std::setw(5) << (r.eio ? "yes" : "-") << std::right << std::setw(5) << r.n_s
       << std::setw(12) << std::fixed << std::setprecision(2) << 100.0 * r.mean_sampling_ratio()
       << std::setw(10) << format_psnr(r.pooled_psnr()) << std::setw(10) << r.total_coverage_errors()
       << std::setw(12) << std::setprecision(4) << r.seconds_per_frame() << std::setw(10)
       << std::setprecision(2) << r.speedup() << "\n";
  }
  return ss.str();
}

std::string emit_table_json(const std::vector<LabelReport>& reports) {
  require_unique(reports);
  json arr = json::array();
  for (const auto& r : reports) {
    arr.push_back({{"config", r.label},
                   {"ero", r.ero},
                   {"eio", r.eio},
                   {"n_s", r.n_s},
                   {"sampling_ratio_percent", 100.0 * r.mean_sampling_ratio()},
                   {"psnr", number_or_inf(r.pooled_psnr())},
                   {"coverage_errors", r.total_coverage_errors()},
                   {"seconds_per_frame", r.seconds_per_frame()},
                   {"speedup", r.speedup()}});
  }
  return arr.dump(2);
}

std::vector<std::string> check_report(const RunConfig& cfg, const SequenceReport& report) {
  std::vector<std::string> failures;
  for (const auto& r : report.labels) {
    std::ostringstream why;
    if (r.min_psnr() < cfg.check.min_psnr) why << " psnr_min " << r.min_psnr() << " < " << cfg.check.min_psnr;
    if (r.total_coverage_errors() > cfg.check.max_coverage_errors) {
      why << " coverage_errors " << r.total_coverage_errors() << " > " << cfg.check.max_coverage_errors;
    }
    if (r.mean_sampling_ratio() > cfg.check.max_sampling_ratio) {
      why << " sampling_ratio " << r.mean_sampling_ratio() << " > " << cfg.check.max_sampling_ratio;
    }
    if (!why.str().empty()) failures.push_back(r.label + ":" + why.str());
  }
  return failures;
}

}  // namespace raysift
