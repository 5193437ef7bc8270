// Copyright 2026 The raysift Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <algorithm>
#include <random>

#include "raysift/eio.hpp"
#include "raysift/scene.hpp"

using namespace raysift;

namespace {

CameraSpec cam_for(int w, int h) {
  CameraSpec cam;
  cam.width = w;
  cam.height = h;
  return cam;
}

EioConfig exact_cfg(int n_patch, bool shift) {
  EioConfig cfg;
  cfg.n_patch = n_patch;
  cfg.shift = shift;
  cfg.margin = 0.0;
  return cfg;
}

// Random depth map in [1, 3] with a fraction of sentinel pixels.
ScalarMap random_depth(int w, int h, const CameraSpec& cam, std::uint64_t seed, double miss) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<float> depth(1.0f, 3.0f);
  std::bernoulli_distribution sentinel(miss);
  ScalarMap d(w, h);
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = sentinel(rng) ? cam.depth_sentinel() : depth(rng);
  return d;
}

// Pixel window membership for a tiling of side k offset by `off`, written as
// explicit index ranges rather than integer division.
std::pair<int, int> window_range(int v, int k, int off, int n) {
  int lo = -off;
  while (lo + k <= v) lo += k;
  return {std::max(lo, 0), std::min(lo + k, n)};
}

}  // namespace

TEST_CASE("config validation and defaults") {
  const CameraSpec cam;
  EioConfig cfg;
  CHECK(cfg.resolved_margin(cam) == doctest::Approx(0.2));
  CHECK(cfg.resolved_wide_threshold(cam) == doctest::Approx(1.0));
  cfg.ns_reduced = 100;
  CHECK_THROWS(cfg.validate());
  cfg = EioConfig{};
  cfg.n_patch = 0;
  CHECK_THROWS(cfg.validate());
  cfg = EioConfig{};
  cfg.margin = -1.0;
  CHECK_THROWS(cfg.validate());
}

TEST_CASE("patch extrema skip sentinels") {
  const CameraSpec cam = cam_for(4, 4);
  const float s = cam.depth_sentinel();
  ScalarMap d(4, 4, s);
  d(0, 0) = 4.0f;
  d(1, 0) = 4.2f;
  d(1, 1) = 4.1f;
  const PatchBounds b = patch_minmax(d, 2, cam);
  REQUIRE(b.cols == 2);
  CHECK(b.cell(0, 0).valid);
  CHECK(b.cell(0, 0).near == doctest::Approx(4.0));
  CHECK(b.cell(0, 0).far == doctest::Approx(4.2));
  CHECK_FALSE(b.cell(1, 1).valid);
  CHECK(b.cell(1, 1).near == cam.t_near);
  CHECK(b.cell(1, 1).far == cam.t_far);
  const PatchBounds g = patch_minmax(d, 1, cam);
  CHECK(g.cell(0, 0).near == doctest::Approx(4.0));
  CHECK(g.cell(0, 0).far == doctest::Approx(4.2));
  CHECK_THROWS(patch_minmax(ScalarMap(5, 4), 2, cam_for(5, 4)));
}

TEST_CASE("shifted windows") {
  SUBCASE("constant depth") {
    const CameraSpec cam = cam_for(16, 16);
    const PatchBounds b = shifted_patch_minmax(ScalarMap(16, 16, 2.0f), 2, cam);
    for (const auto& c : b.cells) {
      CHECK(c.valid);
      CHECK(c.near == 2.0);
      CHECK(c.far == 2.0);
    }
  }
  SUBCASE("a step on a base boundary is spanned by the straddling window") {
    const CameraSpec cam = cam_for(16, 16);
    ScalarMap d(16, 16, 1.0f);
    for (int y = 0; y < 16; ++y) {
      for (int x = 8; x < 16; ++x) d(x, y) = 3.0f;
    }
    const PatchBounds base = patch_minmax(d, 2, cam);
    const PatchBounds sh = shifted_patch_minmax(d, 2, cam);
    CHECK(base.cell_for_pixel(7, 7).far == 1.0);
    CHECK(base.cell_for_pixel(8, 7).near == 3.0);
    CHECK(sh.cell_for_pixel(7, 7).near == 1.0);
    CHECK(sh.cell_for_pixel(7, 7).far == 3.0);
    CHECK(&sh.cell_for_pixel(4, 7) == &sh.cell_for_pixel(11, 7));
  }
  SUBCASE("membership matches explicit ranges") {
    for (int n : {1, 2, 4}) {
      const CameraSpec cam = cam_for(16, 16);
      const ScalarMap d = random_depth(16, 16, cam, 5 + n, 0.3);
      const PatchBounds sh = shifted_patch_minmax(d, n, cam);
      const int k = 16 / n;
      for (int y = 0; y < 16; ++y) {
        for (int x = 0; x < 16; ++x) {
          const auto [x0, x1] = window_range(x, k, k / 2, 16);
          const auto [y0, y1] = window_range(y, k, k / 2, 16);
          double lo = 1e9;
          double hi = -1e9;
          for (int yy = y0; yy < y1; ++yy) {
            for (int xx = x0; xx < x1; ++xx) {
              if (!cam.is_hit(d(xx, yy))) continue;
              lo = std::min(lo, static_cast<double>(d(xx, yy)));
              hi = std::max(hi, static_cast<double>(d(xx, yy)));
            }
          }
          const PatchCell& c = sh.cell_for_pixel(x, y);
          REQUIRE(c.valid == (lo <= hi));
          if (c.valid) {
            REQUIRE(c.near == lo);
            REQUIRE(c.far == hi);
          }
        }
      }
    }
  }
  SUBCASE("one patch per side gives four corner windows") {
    const CameraSpec cam = cam_for(16, 16);
    const PatchBounds sh = shifted_patch_minmax(ScalarMap(16, 16, 2.0f), 1, cam);
    CHECK(sh.cols * sh.rows == 4);
    CHECK(&sh.cell_for_pixel(0, 0) == &sh.cell_for_pixel(7, 7));
    CHECK(&sh.cell_for_pixel(8, 8) == &sh.cell_for_pixel(15, 15));
    CHECK(&sh.cell_for_pixel(7, 7) != &sh.cell_for_pixel(8, 7));
  }
}

TEST_CASE("fusion takes the min of nears and the max of fars") {
  const CameraSpec cam = cam_for(4, 4);
  PatchBounds p;
  p.cols = p.rows = 1;
  p.cell_width = p.cell_height = 4;
  p.cells = {{4.0, 4.2, true}};
  PatchBounds ps = p;
  ps.cells = {{3.9, 4.3, true}};
  ScalarMap d(4, 4, cam.depth_sentinel());
  d(0, 0) = 4.1f;
  const EioConfig cfg = exact_cfg(1, true);
  const RayIntervals iv = fuse_bounds(p, &ps, d, cfg, cam);
  CHECK(iv.near(0) == doctest::Approx(3.9));
  CHECK(iv.far(0) == doctest::Approx(4.3));
  SUBCASE("a miss pixel keeps the patch far bound, not the sentinel") {
    const RayIntervals only = fuse_bounds(p, nullptr, d, cfg, cam);
    CHECK(only.near(5) == doctest::Approx(4.0));
    CHECK(only.far(5) == doctest::Approx(4.2));
  }
  SUBCASE("invalid coverage keeps the full interval") {
    PatchBounds empty = p;
    empty.cells = {{cam.t_near, cam.t_far, false}};
    const RayIntervals full = fuse_bounds(empty, &empty, d, cfg, cam);
    CHECK(full.near(3) == cam.t_near);
    CHECK(full.far(3) == cam.t_far);
    const RayIntervals mixed = fuse_bounds(p, &empty, d, cfg, cam);
    CHECK(mixed.near(3) == cam.t_near);
    CHECK(mixed.far(3) == cam.t_far);
  }
  SUBCASE("margin widens and clamps") {
    EioConfig wide = cfg;
    wide.margin = 0.5;
    const RayIntervals m = fuse_bounds(p, &ps, d, wide, cam);
    CHECK(m.near(0) == doctest::Approx(3.4));
    CHECK(m.far(0) == doctest::Approx(4.5));  // clipped to t_far
  }
}

TEST_CASE("fusion matches a brute-force reference") {
  const CameraSpec cam = cam_for(16, 16);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const ScalarMap d = random_depth(16, 16, cam, seed, 0.4);
    for (bool shift : {false, true}) {
      const EioConfig cfg = exact_cfg(2, shift);
      const RayIntervals iv = compute_intervals(d, cfg, cam);
      for (int y = 0; y < 16; ++y) {
        for (int x = 0; x < 16; ++x) {
          double pn = 1e9;
          double pf = -1e9;
          bool any_invalid = false;
          std::vector<std::pair<std::pair<int, int>, std::pair<int, int>>> windows;
          windows.push_back({window_range(x, 8, 0, 16), window_range(y, 8, 0, 16)});
          if (shift) windows.push_back({window_range(x, 8, 4, 16), window_range(y, 8, 4, 16)});
          for (const auto& [xr, yr] : windows) {
            bool valid = false;
            for (int yy = yr.first; yy < yr.second; ++yy) {
              for (int xx = xr.first; xx < xr.second; ++xx) {
                if (!cam.is_hit(d(xx, yy))) continue;
                valid = true;
                pn = std::min(pn, static_cast<double>(d(xx, yy)));
                pf = std::max(pf, static_cast<double>(d(xx, yy)));
              }
            }
            any_invalid = any_invalid || !valid;
          }
          if (any_invalid) {
            pn = cam.t_near;
            pf = cam.t_far;
          }
          const std::size_t i = static_cast<std::size_t>(y) * 16 + x;
          REQUIRE(iv.near(i) == pn);
          REQUIRE(iv.far(i) == pf);
        }
      }
    }
  }
}

TEST_CASE("interval invariants on random maps") {
  for (int n : {1, 2, 4}) {
    const CameraSpec cam = cam_for(32, 32);
    const ScalarMap d = random_depth(32, 32, cam, 77 + n, 0.5);
    EioConfig on = exact_cfg(n, true);
    on.margin = 0.1;
    EioConfig off = on;
    off.shift = false;
    const RayIntervals a = compute_intervals(d, on, cam);
    const RayIntervals b = compute_intervals(d, off, cam);
    for (std::size_t i = 0; i < d.size(); ++i) {
      REQUIRE(cam.t_near <= a.near(i));
      REQUIRE(a.near(i) <= a.far(i));
      REQUIRE(a.far(i) <= cam.t_far);
      REQUIRE(a.near(i) <= b.near(i));
      REQUIRE(a.far(i) >= b.far(i));
      if (cam.is_hit(d[i])) {
        REQUIRE(a.near(i) <= d[i]);
        REQUIRE(d[i] <= a.far(i));
      }
    }
  }
}

TEST_CASE("sample counts") {
  const CameraSpec cam = cam_for(2, 1);
  RayIntervals iv(2, 1, cam.t_near, cam.t_far);
  iv.set(0, 2.0, 2.3, 0);
  iv.set(1, cam.t_near, cam.t_far, 0);
  EioConfig cfg;
  cfg.wide_threshold = 1.0;
  assign_sample_counts(iv, cfg, cam);
  CHECK(iv.samples(0) == 28);
  CHECK(iv.samples(1) == 96);
  cfg.wide_threshold = 0.0;
  assign_sample_counts(iv, cfg, cam);
  CHECK(iv.samples(0) == 96);
}

TEST_CASE("sampling volume ratio") {
  const CameraSpec cam = cam_for(4, 4);
  const RayIntervals full = full_intervals(cam, 96);
  CHECK(sampling_volume_ratio(full, RaySet::full(4, 4)) == doctest::Approx(1.0));
  CHECK(sampling_volume_ratio(full, RaySet::none(4, 4)) == 0.0);
  RayIntervals half(4, 4, cam.t_near, cam.t_far);
  std::vector<std::uint8_t> mask(16, 0);
  for (std::size_t i = 0; i < 16; ++i) {
    half.set(i, 1.0, 3.0, 28);
    mask[i] = i % 2;
  }
  CHECK(sampling_volume_ratio(half, RaySet(4, 4, mask)) == doctest::Approx(0.25));
  CHECK_THROWS(sampling_volume_ratio(half, RaySet::full(2, 2)));
}

TEST_CASE("interval maps export both bounds") {
  const CameraSpec cam = cam_for(2, 2);
  RayIntervals iv = full_intervals(cam, 10);
  iv.set(3, 1.5, 2.5, 10);
  CHECK(iv.near_map()[3] == 1.5f);
  CHECK(iv.far_map()[3] == 2.5f);
  CHECK(iv.far_map()[0] == static_cast<float>(cam.t_far));
  CHECK_THROWS(iv.set(0, 3.0, 2.0, 10));
}
