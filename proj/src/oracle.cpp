// Copyright 2026 The raysift Authors
// SPDX-License-Identifier: Apache-2.0

#include "raysift/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace raysift {

RenderOutput render_oracle(const Scene& scene, const CameraSpec& cam, int frame,
                           const ScalarMap& depth, int ns_full, const RenderConfig& cfg) {
  return render_frame(scene, cam, frame, depth, RaySet::full(cam.width, cam.height),
                      full_intervals(cam, ns_full), cfg);
}

double psnr(const RgbImage& a, const RgbImage& b) {
  if (!a.same_shape(b)) throw std::invalid_argument("psnr: dimension mismatch");
  double sum = 0.0;
  const auto da = a.data();
  const auto db = b.data();
  for (std::size_t i = 0; i < da.size(); ++i) {
    const double d = static_cast<double>(da[i]) - static_cast<double>(db[i]);
    sum += d * d;
  }
  const double mse = sum / static_cast<double>(da.size());
  if (mse == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(1.0 / mse);
}

double max_abs_error(const RgbImage& a, const RgbImage& b) {
  if (!a.same_shape(b)) throw std::invalid_argument("max_abs_error: dimension mismatch");
  double worst = 0.0;
  const auto da = a.data();
  const auto db = b.data();
  for (std::size_t i = 0; i < da.size(); ++i) {
    worst = std::max(worst, std::abs(static_cast<double>(da[i]) - static_cast<double>(db[i])));
  }
  return worst;
}

CoverageCount count_coverage_errors(const RenderOutput& reference, const PruningTrace& trace,
                                    const CoverageThresholds& thresholds) {
  if (!trace.scene || !trace.camera || !trace.depth || !trace.rays || !trace.intervals) {
    throw std::invalid_argument("count_coverage_errors: incomplete trace");
  }
  const CameraSpec& cam = *trace.camera;
  const PosedScene posed = trace.scene->at(trace.frame);
  CoverageCount out;
  for (int row = 0; row < cam.height; ++row) {
    for (int col = 0; col < cam.width; ++col) {
      const std::size_t i = static_cast<std::size_t>(row) * cam.width + col;
      if (!(reference.weight[i] > thresholds.weight)) continue;
      if (!trace.rays->contains(i)) {
        ++out.ero_misses;
        ++out.total;
        continue;
      }
      const float d = (*trace.depth)[i];
      std::optional<double> surface;
      if (cam.is_hit(d)) surface = static_cast<double>(d);
      const auto depths = stratified_sample(cam.t_near, cam.t_far, trace.oracle_ns,
                                            trace.oracle_config.sampler,
                                            ray_seed(trace.oracle_config.seed, trace.frame, i), surface);
      const double lo = trace.intervals->near(i);
      const double hi = trace.intervals->far(i);
      for (double t : depths) {
        if (t >= lo && t <= hi) continue;
        if (posed.query_field(cam.point(col, row, t)).density > thresholds.density) {
          ++out.eio_misses;
          ++out.total;
          break;
        }
      }
    }
  }
  return out;
}

ComparisonReport compare(const RenderOutput& pruned, const RenderOutput& reference,
                         const PruningTrace& trace, const CoverageThresholds& thresholds) {
  ComparisonReport r;
  r.psnr = psnr(pruned.image, reference.image);
  r.max_abs_error = max_abs_error(pruned.image, reference.image);
  const CoverageCount cov = count_coverage_errors(reference, trace, thresholds);
  r.ero_misses = cov.ero_misses;
  r.eio_misses = cov.eio_misses;
  r.coverage_errors = cov.total;
  r.sampling_ratio = reference.counters.points_sampled == 0
                         ? 0.0
                         : static_cast<double>(pruned.counters.points_sampled) /
                               static_cast<double>(reference.counters.points_sampled);
  return r;
}

}  // namespace raysift
