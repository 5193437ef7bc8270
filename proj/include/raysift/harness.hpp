// Copyright 2026 The raysift Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "raysift/config.hpp"
#include "raysift/eio.hpp"
#include "raysift/ero.hpp"
#include "raysift/oracle.hpp"
#include "raysift/render.hpp"
#include "raysift/scene.hpp"

namespace raysift {

struct CheckThresholds {
  double min_psnr = 40.0;
  std::uint64_t max_coverage_errors = 0;
  double max_sampling_ratio = 1.0;
};

struct RunConfig {
  ScenePreset scene = ScenePreset::standard;
  int frames = 30;
  double motion_scale = 1.0;
  std::optional<double> cloth_shell_offset;
  std::optional<double> cloth_falloff;
  std::optional<double> cloth_sigma_max;

  CameraSpec camera;
  bool ero_enabled = true;
  EroConfig ero;
  bool eio_enabled = true;
  EioConfig eio;
  // Use Scene::cloth_depth_margin for eio.margin.
  bool margin_from_scene = false;
  RenderConfig render;

  std::filesystem::path output_dir = "out";
  bool write_images = true;
  std::vector<std::string> sweep;
  CoverageThresholds coverage;
  CheckThresholds check;

  void validate() const;
};

/// Parses the key-value text form; unknown keys raise ConfigError naming
/// each offending key.
RunConfig parse_run_config(const KeyValueConfig& kv);
RunConfig load_run_config(const std::string& path);

/// Preset letters for the non-hierarchical ablation rows:
///   F  no ERO, no EIO, n_s 96
///   G  ERO,    no EIO, n_s 96
///   H  no ERO, EIO,    n_s 48
///   I  ERO,    EIO,    n_s 48
///   J  ERO,    EIO,    n_s 28
RunConfig apply_preset(const RunConfig& base, const std::string& letter);

/// Unique name for the flag combination. Preset letters when the sampling
/// flags match one, followed by "+binary", "+noshift" and "+np<n>" where the
/// config departs from the averaging / shifted / n_patch 2 defaults.
std::string config_label(const RunConfig& cfg);

Scene build_scene(const RunConfig& cfg);

struct FrameTiming {
  double render_seconds = 0.0;
  double oracle_seconds = 0.0;
};

struct FrameReport {
  int frame = 1;
  bool training_candidates = true;
  std::uint64_t rays_rendered = 0;
  std::uint64_t points_sampled = 0;
  std::uint64_t points_deformed = 0;
  std::uint64_t wide_rays = 0;
  std::uint64_t stub_checksum = 0;
  double sampling_ratio = 0.0;
  double sampling_volume = 0.0;
  ComparisonReport comparison;
  // Oracle content (weight > 1e-3) outside cand > 0, frames >= 2 only.
  std::uint64_t candidate_violations = 0;
  FrameTiming timing;
};

struct LabelReport {
  std::string label;
  bool ero = false;
  bool eio = false;
  int n_s = 0;
  std::string candidate_mode;
  bool shift = true;
  int n_patch = 2;
  double margin = 0.0;
  std::vector<FrameReport> frames;

  double mean_sampling_ratio() const;
  double mean_sampling_volume() const;
  double pooled_psnr() const;  // from the mean MSE over all frames
  double min_psnr() const;
  std::uint64_t total_coverage_errors() const;
  std::uint64_t total_candidate_violations() const;
  std::uint64_t total_points() const;
  double render_seconds() const;
  double oracle_seconds() const;
  double seconds_per_frame() const;
  double speedup() const;  // oracle time / render time
};

struct SequenceReport {
  std::vector<LabelReport> labels;
};

/// Frame loop: rasterize, candidates (training branch at t = 1, previous
/// weights afterwards), rays, intervals, render, compare against the oracle,
/// feed the weight map forward. One sequence per sweep label (or a single
/// one for the config itself), sharing the per-frame oracle.
SequenceReport run_sequence(const RunConfig& cfg, bool write_artifacts = true);

/// JSON mirror of the reports. Wall-clock values live only under "timing".
std::string report_json(const RunConfig& cfg, const SequenceReport& report);

/// Fixed-column text table, one row per label. Throws on duplicate labels.
std::string emit_table(const std::vector<LabelReport>& reports);
/// JSON array with one object per label (same columns as the table).
std::string emit_table_json(const std::vector<LabelReport>& reports);

/// Labels whose aggregate violates cfg.check; empty means pass.
std::vector<std::string> check_report(const RunConfig& cfg, const SequenceReport& report);

}  // namespace raysift
