// Copyright 2026 The raysift Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>

#include "raysift/eio.hpp"
#include "raysift/ero.hpp"
#include "raysift/render.hpp"
#include "raysift/scene.hpp"

namespace raysift {

/// Dense reference: every ray, full [t_near, t_far] interval (clipped to the
/// mesh depth on hits), n_s_full samples.
RenderOutput render_oracle(const Scene& scene, const CameraSpec& cam, int frame,
                           const ScalarMap& depth, int ns_full, const RenderConfig& cfg);

struct CoverageThresholds {
  double weight = 1e-2;   // oracle weight above which a pixel counts as content
  double density = 0.0;  // oracle sample density above which a sample counts
};

/// What the pruned render did for one frame, needed to attribute misses.
struct PruningTrace {
  const Scene* scene = nullptr;
  const CameraSpec* camera = nullptr;
  int frame = 1;
  const ScalarMap* depth = nullptr;
  const RaySet* rays = nullptr;
  const RayIntervals* intervals = nullptr;
  int oracle_ns = 96;
  RenderConfig oracle_config;
};

struct ComparisonReport {
  double psnr = 0.0;  // +inf when identical
  double max_abs_error = 0.0;
  std::uint64_t ero_misses = 0;
  std::uint64_t eio_misses = 0;
  std::uint64_t coverage_errors = 0;  // pixels with either miss
  double sampling_ratio = 0.0;        // pruned points / reference points
  std::optional<double> speedup;
};

double psnr(const RgbImage& a, const RgbImage& b);
double max_abs_error(const RgbImage& a, const RgbImage& b);

/// Pixels where the oracle has content (weight > thresholds.weight) that the
/// pruned render omitted, or whose pruned interval excludes an oracle sample
/// of density > thresholds.density.
struct CoverageCount {
  std::uint64_t ero_misses = 0;
  std::uint64_t eio_misses = 0;
  std::uint64_t total = 0;
};
CoverageCount count_coverage_errors(const RenderOutput& reference, const PruningTrace& trace,
                                    const CoverageThresholds& thresholds = {});

ComparisonReport compare(const RenderOutput& pruned, const RenderOutput& reference,
                         const PruningTrace& trace, const CoverageThresholds& thresholds = {});

}  // namespace raysift
