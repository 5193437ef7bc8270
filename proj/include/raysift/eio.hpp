// Copyright 2026 The raysift Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <vector>

#include "raysift/ero.hpp"
#include "raysift/maps.hpp"
#include "raysift/scene.hpp"

namespace raysift {

// Empty interval omission: per-pixel sampling intervals narrowed to the
// depth range of the mesh in the surrounding patch and shifted window.

struct EioConfig {
  int n_patch = 2;
  bool shift = true;
  // Unset means 0.05 * (t_far - t_near).
  std::optional<double> margin;
  // Unset means 0.25 * (t_far - t_near).
  std::optional<double> wide_threshold;
  int ns_reduced = 28;
  int ns_full = 96;

  void validate() const;
  double resolved_margin(const CameraSpec& cam) const;
  double resolved_wide_threshold(const CameraSpec& cam) const;
};

struct PatchCell {
  double near = 0.0;
  double far = 0.0;
  bool valid = false;
};

/// Grid of depth extrema. Window (i, j) covers pixel columns
/// [i * cell_width - offset_x, (i + 1) * cell_width - offset_x), clipped to
/// the image, and likewise for rows.
struct PatchBounds {
  int cols = 0;
  int rows = 0;
  int cell_width = 0;
  int cell_height = 0;
  int offset_x = 0;
  int offset_y = 0;
  std::vector<PatchCell> cells;

  const PatchCell& cell(int i, int j) const { return cells[static_cast<std::size_t>(j) * cols + i]; }
  const PatchCell& cell_for_pixel(int x, int y) const {
    return cell((x + offset_x) / cell_width, (y + offset_y) / cell_height);
  }
};

/// Per-patch min/max over non-sentinel depths; a patch without any mesh pixel
/// is invalid and carries (t_near, t_far).
PatchBounds patch_minmax(const ScalarMap& depth, int n_patch, const CameraSpec& cam);

/// Same over the grid offset by half a patch in both axes.
PatchBounds shifted_patch_minmax(const ScalarMap& depth, int n_patch, const CameraSpec& cam);

class RayIntervals {
 public:
  RayIntervals(int width, int height, double t_near, double t_far);

  int width() const { return width_; }
  int height() const { return height_; }
  double t_near() const { return t_near_; }
  double t_far() const { return t_far_; }
  std::size_t size() const { return near_.size(); }

  double near(std::size_t i) const { return near_[i]; }
  double far(std::size_t i) const { return far_[i]; }
  int samples(std::size_t i) const { return samples_[i]; }

  void set(std::size_t i, double near, double far, int samples);
  void set_samples(std::size_t i, int samples) { samples_[i] = samples; }

  /// T_n and T_f as float maps for export.
  ScalarMap near_map() const;
  ScalarMap far_map() const;

 private:
  int width_;
  int height_;
  double t_near_;
  double t_far_;
  std::vector<double> near_;
  std::vector<double> far_;
  std::vector<int> samples_;
};

/// Every pixel gets (t_near, t_far) and `samples` points: no narrowing.
RayIntervals full_intervals(const CameraSpec& cam, int samples);

/// Fuses base and (optionally) shifted bounds into per-pixel intervals with
/// the margin applied. A window without mesh pixels takes part in the
/// min/max as (t_near, t_far), so such a window always yields the full
/// interval and adding shifted windows can only widen. Sample counts are set to
/// cfg.ns_full; see assign_sample_counts.
RayIntervals fuse_bounds(const PatchBounds& base, const PatchBounds* shifted,
                         const ScalarMap& depth, const EioConfig& cfg, const CameraSpec& cam);

/// ns_full for intervals wider than the wide threshold, ns_reduced otherwise.
void assign_sample_counts(RayIntervals& intervals, const EioConfig& cfg, const CameraSpec& cam);

/// patch_minmax, optional shifted windows, fuse_bounds, assign_sample_counts.
RayIntervals compute_intervals(const ScalarMap& depth, const EioConfig& cfg, const CameraSpec& cam);

/// Sum of active interval lengths over (pixel count * (t_far - t_near)).
double sampling_volume_ratio(const RayIntervals& intervals, const RaySet& rays);

}  // namespace raysift
