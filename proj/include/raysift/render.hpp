// Copyright 2026 The raysift Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "raysift/color.hpp"
#include "raysift/eio.hpp"
#include "raysift/ero.hpp"
#include "raysift/maps.hpp"
#include "raysift/scene.hpp"

namespace raysift {

enum class SamplerMode {
  midpoint,  // stratum centres, fully deterministic
  jitter,    // one seeded uniform draw per stratum
};

SamplerMode parse_sampler_mode(const std::string& name);
std::string to_string(SamplerMode mode);

/// Depths along one ray. The first n_s - 1 samples stratify
/// [near, end) with end = surface depth for rays that hit the mesh and
/// end = far otherwise; the last sample sits exactly on `end`.
std::vector<double> stratified_sample(double near, double far, int n_s, SamplerMode mode,
                                      std::uint64_t seed,
                                      std::optional<double> surface_depth = std::nullopt);

/// Identity deformation that burns `work_units` rounds of integer arithmetic
/// per point, standing in for per-point skinning cost.
struct DeformStub {
  int work_units = 0;

  Vec3 apply(const Vec3& p, std::uint64_t& checksum) const;
};

struct SampleSet {
  std::vector<double> depths;
  std::vector<Vec3> positions;
};

SampleSet make_sample_set(const CameraSpec& cam, int col, int row, std::vector<double> depths);

struct RayResult {
  Rgb color;
  double weight = 0.0;  // sum of alpha_i over the first n_s - 1 samples
};

/// Mesh-integrated compositing of one ray. `depths` has n_s entries; `sigma`
/// and `color` hold the field at the first n_s - 1 samples; `final_color`
/// is the mesh colour (hit) or the field colour at the last sample (miss).
RayResult composite_ray(std::span<const double> depths, std::span<const double> sigma,
                        std::span<const Rgb> color, const Rgb& final_color);

/// Queries the field (after the deform stub) at every sample and composites.
/// Throws on a NaN density.
RayResult render_ray(const SampleSet& samples, const PosedScene& scene, bool intersects_mesh,
                     const DeformStub& stub, std::uint64_t& checksum);

struct RenderConfig {
  SamplerMode sampler = SamplerMode::midpoint;
  std::uint64_t seed = 0;
  DeformStub stub;
  int threads = 1;
  Rgb background{1.0, 1.0, 1.0};
};

struct RenderCounters {
  std::uint64_t points_sampled = 0;
  std::uint64_t points_deformed = 0;
  std::uint64_t rays_rendered = 0;
  std::uint64_t stub_checksum = 0;
};

struct RenderOutput {
  RgbImage image;
  ScalarMap weight;
  RenderCounters counters;
};

/// Renders the active rays of one frame; every other pixel is the
/// background colour with zero weight. Output does not depend on the thread
/// count.
RenderOutput render_frame(const Scene& scene, const CameraSpec& cam, int frame,
                          const ScalarMap& depth, const RaySet& rays,
                          const RayIntervals& intervals, const RenderConfig& cfg);

/// Seed of the jitter stream for one pixel of one frame.
std::uint64_t ray_seed(std::uint64_t seed, int frame, std::size_t pixel);

}  // namespace raysift
