// Copyright 2026 The raysift Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <limits>

#include "raysift/eio.hpp"
#include "raysift/oracle.hpp"

using namespace raysift;

namespace {

CameraSpec small_camera(int n) {
  CameraSpec cam;
  cam.width = n;
  cam.height = n;
  return cam;
}

}  // namespace

TEST_CASE("psnr values") {
  const RgbImage white(256, 256, {1, 1, 1});
  CHECK(std::isinf(psnr(white, white)));
  CHECK(psnr(white, RgbImage(256, 256, {0, 0, 0})) == doctest::Approx(0.0));
  RgbImage off = white;
  off.set(17, 33, {0, 1, 1});
  const double expect = 10.0 * std::log10(3.0 * 65536.0);
  CHECK(expect == doctest::Approx(52.9).epsilon(1e-3));
  CHECK(psnr(white, off) == doctest::Approx(expect).epsilon(1e-9));
  CHECK(psnr(off, white) == psnr(white, off));
  CHECK(max_abs_error(white, off) == 1.0);
  CHECK_THROWS(psnr(white, RgbImage(2, 2)));
}

TEST_CASE("oracle on an empty scene is the background") {
  const Scene scene = make_scene(ScenePreset::empty, 1);
  const CameraSpec cam = small_camera(16);
  const ScalarMap depth = rasterize_depth(scene, cam, 1);
  const RenderOutput o = render_oracle(scene, cam, 1, depth, 96, {});
  CHECK(o.image == RgbImage(16, 16, {1, 1, 1}));
  CHECK(o.counters.points_sampled == 16u * 16u * 96u);
}

TEST_CASE("oracle is deterministic") {
  const Scene scene = make_scene(ScenePreset::standard, 1);
  const CameraSpec cam = small_camera(64);
  const ScalarMap depth = rasterize_depth(scene, cam, 1);
  RenderConfig cfg;
  cfg.sampler = SamplerMode::jitter;
  const RenderOutput a = render_oracle(scene, cam, 1, depth, 96, cfg);
  const RenderOutput b = render_oracle(scene, cam, 1, depth, 96, cfg);
  CHECK(a.image == b.image);
  CHECK(a.weight == b.weight);
}

TEST_CASE("coverage attribution") {
  const Scene scene = make_scene(ScenePreset::standard, 1);
  const CameraSpec cam = small_camera(64);
  const ScalarMap depth = rasterize_depth(scene, cam, 1);
  const RenderOutput oracle = render_oracle(scene, cam, 1, depth, 96, {});
  const RayIntervals full = full_intervals(cam, 96);
  PruningTrace trace{&scene, &cam, 1, &depth, nullptr, &full, 96, {}};

  SUBCASE("identical render") {
    const RaySet rays = RaySet::full(64, 64);
    trace.rays = &rays;
    const ComparisonReport r = compare(oracle, oracle, trace);
    CHECK(std::isinf(r.psnr));
    CHECK(r.coverage_errors == 0);
    CHECK(r.sampling_ratio == 1.0);
  }
  SUBCASE("omitted rays count as ray misses") {
    const RaySet rays = RaySet::none(64, 64);
    trace.rays = &rays;
    const RenderOutput pruned = render_frame(scene, cam, 1, depth, rays, full, {});
    const ComparisonReport r = compare(pruned, oracle, trace);
    std::uint64_t content = 0;
    for (float w : oracle.weight.data()) content += w > 1e-2f;
    CHECK(content > 0);
    CHECK(r.ero_misses == content);
    CHECK(r.eio_misses == 0);
    CHECK(r.coverage_errors == content);
    CHECK(r.sampling_ratio == 0.0);
  }
  SUBCASE("a collapsed interval counts as an interval miss") {
    const RaySet rays = RaySet::full(64, 64);
    trace.rays = &rays;
    RayIntervals tight(64, 64, cam.t_near, cam.t_far);
    for (std::size_t i = 0; i < tight.size(); ++i) {
      const double d = cam.is_hit(depth[i]) ? depth[i] : cam.t_far;
      tight.set(i, d, d, 2);
    }
    trace.intervals = &tight;
    const CoverageCount c = count_coverage_errors(oracle, trace);
    CHECK(c.ero_misses == 0);
    CHECK(c.eio_misses > 0);
    CHECK(c.total == c.eio_misses);
    CoverageThresholds strict;
    strict.weight = 2.0;
    CHECK(count_coverage_errors(oracle, trace, strict).total == 0);
  }
  SUBCASE("incomplete trace") {
    CHECK_THROWS(count_coverage_errors(oracle, trace));
  }
}
