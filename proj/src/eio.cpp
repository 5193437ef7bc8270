// Copyright 2026 The raysift Authors
// SPDX-License-Identifier: Apache-2.0

#include "raysift/eio.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace raysift {

void EioConfig::validate() const {
  if (n_patch < 1) throw std::invalid_argument("eio: n_patch must be >= 1");
  if (ns_reduced < 2 || ns_full < 2) throw std::invalid_argument("eio: sample counts must be >= 2");
  if (ns_reduced > ns_full) throw std::invalid_argument("eio: ns_reduced must not exceed ns_full");
  if (margin && !(*margin >= 0.0)) throw std::invalid_argument("eio: margin must be >= 0");
  if (wide_threshold && !(*wide_threshold >= 0.0)) {
    throw std::invalid_argument("eio: wide threshold must be >= 0");
  }
}

double EioConfig::resolved_margin(const CameraSpec& cam) const {
  return margin.value_or(0.05 * (cam.t_far - cam.t_near));
}

double EioConfig::resolved_wide_threshold(const CameraSpec& cam) const {
  return wide_threshold.value_or(0.25 * (cam.t_far - cam.t_near));
}

namespace {

PatchBounds minmax_on_grid(const ScalarMap& depth, int n_patch, const CameraSpec& cam, bool shifted) {
  if (n_patch < 1) throw std::invalid_argument("patch_minmax: n_patch must be >= 1");
  const int w = depth.width();
  const int h = depth.height();
  if (w % n_patch != 0 || h % n_patch != 0) {
    throw std::invalid_argument("patch_minmax: image " + std::to_string(w) + "x" +
                                std::to_string(h) + " not divisible by n_patch " +
                                std::to_string(n_patch));
  }
  PatchBounds pb;
  pb.cell_width = w / n_patch;
  pb.cell_height = h / n_patch;
  pb.offset_x = shifted ? pb.cell_width / 2 : 0;
  pb.offset_y = shifted ? pb.cell_height / 2 : 0;
  pb.cols = (w + pb.offset_x + pb.cell_width - 1) / pb.cell_width;
  pb.rows = (h + pb.offset_y + pb.cell_height - 1) / pb.cell_height;
  pb.cells.assign(static_cast<std::size_t>(pb.cols) * pb.rows, PatchCell{cam.t_near, cam.t_far, false});

  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const float d = depth(x, y);
      if (!cam.is_hit(d)) continue;
      auto& c = pb.cells[static_cast<std::size_t>((y + pb.offset_y) / pb.cell_height) * pb.cols +
                         (x + pb.offset_x) / pb.cell_width];
      if (!c.valid) {
        c = {d, d, true};
      } else {
        c.near = std::min(c.near, static_cast<double>(d));
        c.far = std::max(c.far, static_cast<double>(d));
      }
    }
  }
  return pb;
}

}  // namespace

PatchBounds patch_minmax(const ScalarMap& depth, int n_patch, const CameraSpec& cam) {
  return minmax_on_grid(depth, n_patch, cam, false);
}

PatchBounds shifted_patch_minmax(const ScalarMap& depth, int n_patch, const CameraSpec& cam) {
  return minmax_on_grid(depth, n_patch, cam, true);
}

RayIntervals::RayIntervals(int width, int height, double t_near, double t_far)
    : width_(width), height_(height), t_near_(t_near), t_far_(t_far) {
  const auto n = static_cast<std::size_t>(width) * height;
  near_.assign(n, t_near);
  far_.assign(n, t_far);
  samples_.assign(n, 2);
}

void RayIntervals::set(std::size_t i, double near, double far, int samples) {
  if (!(near <= far)) throw std::invalid_argument("RayIntervals: near must not exceed far");
  near_[i] = near;
  far_[i] = far;
  samples_[i] = samples;
}

ScalarMap RayIntervals::near_map() const {
  ScalarMap out(width_, height_);
  for (std::size_t i = 0; i < near_.size(); ++i) out[i] = static_cast<float>(near_[i]);
  return out;
}

ScalarMap RayIntervals::far_map() const {
  ScalarMap out(width_, height_);
  for (std::size_t i = 0; i < far_.size(); ++i) out[i] = static_cast<float>(far_[i]);
  return out;
}

RayIntervals full_intervals(const CameraSpec& cam, int samples) {
  RayIntervals iv(cam.width, cam.height, cam.t_near, cam.t_far);
  for (std::size_t i = 0; i < iv.size(); ++i) iv.set(i, cam.t_near, cam.t_far, samples);
  return iv;
}

RayIntervals fuse_bounds(const PatchBounds& base, const PatchBounds* shifted,
                         const ScalarMap& depth, const EioConfig& cfg, const CameraSpec& cam) {
  const double eps = cfg.resolved_margin(cam);
  RayIntervals iv(depth.width(), depth.height(), cam.t_near, cam.t_far);
  for (int y = 0; y < depth.height(); ++y) {
    for (int x = 0; x < depth.width(); ++x) {
      const std::size_t i = static_cast<std::size_t>(y) * depth.width() + x;
      const PatchCell& p = base.cell_for_pixel(x, y);
      const PatchCell* ps = shifted ? &shifted->cell_for_pixel(x, y) : nullptr;
      const bool any_valid = p.valid || (ps && ps->valid);
      if (!any_valid) {
        iv.set(i, cam.t_near, cam.t_far, cfg.ns_full);
        continue;
      }
      double pn = p.valid ? p.near : cam.t_near;
      double pf = p.valid ? p.far : cam.t_far;
      if (ps) {
        pn = std::min(pn, ps->valid ? static_cast<double>(ps->near) : cam.t_near);
        pf = std::max(pf, ps->valid ? static_cast<double>(ps->far) : cam.t_far);
      }
      const float d = depth(x, y);
      const double d_valid = cam.is_hit(d) ? static_cast<double>(d) : pf;
      const double tn = std::max(cam.t_near, pn - eps);
      const double tf = std::min(cam.t_far, std::max(d_valid, pf) + eps);
      iv.set(i, tn, tf, cfg.ns_full);
    }
  }
  return iv;
}

void assign_sample_counts(RayIntervals& intervals, const EioConfig& cfg, const CameraSpec& cam) {
  const double wide = cfg.resolved_wide_threshold(cam);
  for (std::size_t i = 0; i < intervals.size(); ++i) {
    const double width = intervals.far(i) - intervals.near(i);
    intervals.set_samples(i, width > wide ? cfg.ns_full : cfg.ns_reduced);
  }
}

RayIntervals compute_intervals(const ScalarMap& depth, const EioConfig& cfg, const CameraSpec& cam) {
  cfg.validate();
  const PatchBounds base = patch_minmax(depth, cfg.n_patch, cam);
  std::optional<PatchBounds> shifted;
  if (cfg.shift) shifted = shifted_patch_minmax(depth, cfg.n_patch, cam);
  RayIntervals iv = fuse_bounds(base, shifted ? &*shifted : nullptr, depth, cfg, cam);
  assign_sample_counts(iv, cfg, cam);
  return iv;
}

double sampling_volume_ratio(const RayIntervals& intervals, const RaySet& rays) {
  if (rays.width() != intervals.width() || rays.height() != intervals.height()) {
    throw std::invalid_argument("sampling_volume_ratio: dimension mismatch");
  }
  double volume = 0.0;
  for (std::size_t i = 0; i < intervals.size(); ++i) {
    if (rays.contains(i)) volume += intervals.far(i) - intervals.near(i);
  }
  return volume / (static_cast<double>(intervals.size()) * (intervals.t_far() - intervals.t_near()));
}

}  // namespace raysift
