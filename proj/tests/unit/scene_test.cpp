// Copyright 2026 The raysift Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <numbers>

#include "raysift/maps.hpp"
#include "raysift/scene.hpp"

using namespace raysift;

namespace {

CameraSpec small_camera(int n = 64) {
  CameraSpec cam;
  cam.width = n;
  cam.height = n;
  return cam;
}

Scene static_scene(std::vector<Primitive> prims, int frames = 1) {
  ProxyBody body;
  body.primitives = std::move(prims);
  return Scene(std::move(body), ClothField{}, frames);
}

// First z where the union of two balls is entered, found by a fixed-step
// march and a bisection on the same crossing. Written from scratch here.
double march_two_spheres(double x, double y, const Vec3& c1, double r1, const Vec3& c2, double r2,
                         double t0, double t1) {
  auto sd = [&](double z) {
    const double d1 = std::sqrt((x - c1.x) * (x - c1.x) + (y - c1.y) * (y - c1.y) + (z - c1.z) * (z - c1.z)) - r1;
    const double d2 = std::sqrt((x - c2.x) * (x - c2.x) + (y - c2.y) * (y - c2.y) + (z - c2.z) * (z - c2.z)) - r2;
    return std::min(d1, d2);
  };
  const double step = 1e-4;
  for (double z = t0; z < t1; z += step) {
    if (sd(z + step) <= 0.0) {
      double lo = z;
      double hi = z + step;
      for (int i = 0; i < 60; ++i) {
        const double mid = 0.5 * (lo + hi);
        (sd(mid) <= 0.0 ? hi : lo) = mid;
      }
      return hi;
    }
  }
  return t1;
}

}  // namespace

TEST_CASE("camera pixel centres and validation") {
  CameraSpec cam = small_camera(4);
  CHECK(cam.pixel_x(0) == doctest::Approx(-0.75));
  CHECK(cam.pixel_y(0) == doctest::Approx(0.75));  // row 0 at the top
  CHECK(cam.pixel_y(3) == doctest::Approx(-0.75));
  CHECK(cam.is_hit(4.49f));
  CHECK_FALSE(cam.is_hit(cam.depth_sentinel()));
  CameraSpec bad = cam;
  bad.t_near = 5.0;
  CHECK_THROWS(bad.validate());
  bad = cam;
  bad.width = 0;
  CHECK_THROWS(bad.validate());
  bad = cam;
  bad.t_near = -0.1;
  CHECK_THROWS(bad.validate());
}

TEST_CASE("sphere centred on a pixel axis") {
  CameraSpec cam = small_camera(8);
  cam.t_far = 10.0;
  const double x = cam.pixel_x(3);
  const double y = cam.pixel_y(5);
  const Scene scene = static_scene({Primitive::sphere({x, y, 5.0}, 1.0, {1, 0, 0})});
  const ScalarMap d = rasterize_depth(scene, cam, 1);
  CHECK(d(3, 5) == doctest::Approx(4.0).epsilon(1e-7));
}

TEST_CASE("misses carry the sentinel bit exactly") {
  const CameraSpec cam = small_camera();
  const Scene scene = static_scene({Primitive::sphere({0.0, 0.0, 2.0}, 0.2, {1, 1, 1})});
  const ScalarMap d = rasterize_depth(scene, cam, 1);
  CHECK(d(0, 0) == cam.depth_sentinel());
  CHECK(d(0, 0) == static_cast<float>(4.5));
  const ScalarMap s = rasterize_silhouette(scene, cam, 1);
  for (std::size_t i = 0; i < d.size(); ++i) REQUIRE((s[i] == 1.0f) == cam.is_hit(d[i]));
}

TEST_CASE("empty scene gives an all-zero silhouette") {
  const CameraSpec cam = small_camera();
  const Scene scene = make_scene(ScenePreset::empty, 2);
  const ScalarMap s = rasterize_silhouette(scene, cam, 2);
  for (float v : s.data()) REQUIRE(v == 0.0f);
}

TEST_CASE("overlapping spheres: depth agrees with a ray march") {
  const CameraSpec cam = small_camera(48);
  const Vec3 c1{-0.15, 0.05, 2.2};
  const Vec3 c2{0.12, -0.04, 1.9};
  const Scene scene = static_scene(
      {Primitive::sphere(c1, 0.45, {1, 0, 0}), Primitive::sphere(c2, 0.3, {0, 1, 0})});
  const ScalarMap d = rasterize_depth(scene, cam, 1);
  int shared = 0;
  for (int row = 0; row < cam.height; row += 3) {
    for (int col = 0; col < cam.width; col += 3) {
      const double x = cam.pixel_x(col);
      const double y = cam.pixel_y(row);
      const double ref = march_two_spheres(x, y, c1, 0.45, c2, 0.3, cam.t_near, cam.t_far);
      if (ref >= cam.t_far) {
        REQUIRE(d(col, row) == cam.depth_sentinel());
        continue;
      }
      REQUIRE(std::abs(d(col, row) - ref) < 1e-4);
      const bool in1 = (x - c1.x) * (x - c1.x) + (y - c1.y) * (y - c1.y) < 0.45 * 0.45;
      const bool in2 = (x - c2.x) * (x - c2.x) + (y - c2.y) * (y - c2.y) < 0.3 * 0.3;
      shared += in1 && in2;
    }
  }
  CHECK(shared > 10);
}

TEST_CASE("capsule depth agrees with its signed distance") {
  const CameraSpec cam = small_camera(40);
  const Primitive cap = Primitive::capsule({-0.3, 0.2, 1.8}, {0.35, -0.25, 2.3}, 0.15, {0, 0, 1});
  const Scene scene = static_scene({cap});
  const ScalarMap d = rasterize_depth(scene, cam, 1);
  int hits = 0;
  for (int row = 0; row < cam.height; ++row) {
    for (int col = 0; col < cam.width; ++col) {
      if (!cam.is_hit(d(col, row))) continue;
      ++hits;
      const Vec3 p = cam.point(col, row, d(col, row));
      REQUIRE(std::abs(cap.signed_distance(p)) < 1e-5);
      // Nothing in front of the hit.
      REQUIRE(cap.signed_distance(cam.point(col, row, d(col, row) - 1e-3)) > 0.0);
    }
  }
  CHECK(hits > 50);
}

TEST_CASE("sphere silhouette area matches the disk") {
  const CameraSpec cam = small_camera(200);
  const double r = 0.5;
  const Scene scene = static_scene({Primitive::sphere({0.013, -0.021, 2.0}, r, {1, 1, 1})});
  const ScalarMap s = rasterize_silhouette(scene, cam, 1);
  double area = 0.0;
  for (float v : s.data()) area += v;
  const double px = cam.pixel_width();
  const double disk = std::numbers::pi * r * r / (px * px);
  const double perimeter = 2.0 * std::numbers::pi * r / px;
  CHECK(std::abs(area - disk) <= perimeter);
}

TEST_CASE("cloth band density") {
  ClothField cloth;
  cloth.shell_offset = 0.03;
  cloth.falloff = 0.01;
  cloth.sigma_max = 12.0;
  CHECK(cloth.band_density(0.03) == doctest::Approx(12.0));
  CHECK(cloth.band_density(0.04) == doctest::Approx(12.0 * std::exp(-0.5)));
  CHECK(cloth.band_density(0.03 + 3.0 * 0.01 + 1e-9) == 0.0);
  CHECK(cloth.band_density(0.03 - 3.0 * 0.01 - 1e-9) == 0.0);
  CHECK(cloth.support() == doctest::Approx(0.06));
  for (double sd = -1.0; sd < 1.0; sd += 0.001) REQUIRE(cloth.band_density(sd) >= 0.0);
}

TEST_CASE("query_field on the shipped scene") {
  const Scene scene = make_scene(ScenePreset::standard, 1);
  const PosedScene posed = scene.at(1);
  const Primitive& head = posed.primitives()[1];
  const Vec3 on_shell = head.a + Vec3{0.0, head.radius + scene.cloth().shell_offset, 0.0};
  // The head top is clear of every other primitive.
  CHECK(query_field(scene, 1, on_shell).density == doctest::Approx(scene.cloth().sigma_max));
  const FieldSample far = query_field(scene, 1, {0.9, 0.9, 0.6});
  CHECK(far.density == 0.0);
  CHECK(far.color == scene.empty_color());
}

TEST_CASE("surface colour lookup") {
  const Scene scene = static_scene({Primitive::sphere({-0.2, 0.0, 2.0}, 0.2, {1, 0, 0}),
                                    Primitive::sphere({0.2, 0.0, 2.0}, 0.2, {0, 1, 0})});
  CHECK(surface_color(scene, 1, {-0.2, 0.0, 1.8}) == Rgb{1, 0, 0});
  CHECK(surface_color(scene, 1, {0.2, 0.2, 2.0}) == Rgb{0, 1, 0});
  // The touching point is on both spheres: lower index wins.
  CHECK(surface_color(scene, 1, {0.0, 0.0, 2.0}) == Rgb{1, 0, 0});
  CHECK_THROWS(surface_color(scene, 1, {-0.2, 0.0, 1.79}));
}

TEST_CASE("scene validation and frame range") {
  const CameraSpec cam = small_camera();
  const Scene inside = static_scene({Primitive::sphere({0, 0, 2.0}, 0.3, {1, 1, 1})}, 3);
  CHECK_NOTHROW(inside.validate(cam));
  CHECK_THROWS(inside.at(0));
  CHECK_THROWS(inside.at(4));
  const Scene outside = static_scene({Primitive::sphere({0, 0, 4.4}, 0.3, {1, 1, 1})});
  CHECK_THROWS(outside.validate(cam));
  CHECK_THROWS(Scene(ProxyBody{}, ClothField{}, 0));
  ClothField bad;
  bad.falloff = 0.0;
  CHECK_THROWS(Scene(ProxyBody{}, bad, 1));
}

TEST_CASE("preset names") {
  CHECK(parse_scene_preset("default") == ScenePreset::standard);
  CHECK(parse_scene_preset("protrusion") == ScenePreset::protrusion);
  CHECK(parse_scene_preset("empty") == ScenePreset::empty);
  CHECK_THROWS(parse_scene_preset("nope"));
  CHECK(to_string(ScenePreset::protrusion) == "protrusion");
}

TEST_CASE("declared motion bounds the silhouette displacement") {
  const CameraSpec cam;
  const Scene scene = make_scene(ScenePreset::standard, 30);
  const int m = scene.sequence().max_motion_pixels(cam);
  CHECK(m <= 10);
  ScalarMap prev = rasterize_silhouette(scene, cam, 1);
  for (int t = 2; t <= 30; ++t) {
    const ScalarMap cur = rasterize_silhouette(scene, cam, t);
    const ScalarMap grown_prev = binary_dilate(prev, m);
    const ScalarMap grown_cur = binary_dilate(cur, m);
    for (std::size_t i = 0; i < cur.size(); ++i) {
      REQUIRE(cur[i] <= grown_prev[i]);
      REQUIRE(prev[i] <= grown_cur[i]);
    }
    prev = cur;
  }
}

TEST_CASE("field support stays near the silhouette without the lobe") {
  const CameraSpec cam;
  const Scene scene = make_scene(ScenePreset::standard, 30);
  const int reach = static_cast<int>(std::ceil(scene.cloth().support() / cam.pixel_width()));
  for (int t : {1, 11, 23}) {
    const ScalarMap grown = binary_dilate(rasterize_silhouette(scene, cam, t), reach);
    const PosedScene posed = scene.at(t);
    for (int row = 0; row < cam.height; row += 2) {
      for (int col = 0; col < cam.width; col += 2) {
        if (grown(col, row) > 0.0f) continue;
        for (double z = cam.t_near; z < cam.t_far; z += 0.01) {
          REQUIRE(posed.query_field(cam.point(col, row, z)).density == 0.0);
        }
      }
    }
  }
}

TEST_CASE("protrusion lobe sits outside the dilated silhouette") {
  const CameraSpec cam;
  const Scene scene = make_scene(ScenePreset::protrusion, 1);
  REQUIRE(scene.cloth().lobe.has_value());
  const Vec3 c = scene.cloth().lobe->center;
  const int reach = static_cast<int>(std::ceil(scene.cloth().support() / cam.pixel_width()));
  const ScalarMap grown = binary_dilate(rasterize_silhouette(scene, cam, 1), reach);
  const int col = static_cast<int>((c.x - cam.x_min) / cam.pixel_width());
  const int row = static_cast<int>((cam.y_max - c.y) / cam.pixel_height());
  CHECK(grown(col, row) == 0.0f);
  CHECK(query_field(scene, 1, c).density > 1.0);
}

TEST_CASE("cloth depth margin is at least the band") {
  const CameraSpec cam;
  const Scene scene = make_scene(ScenePreset::standard, 2);
  CHECK(scene.cloth_depth_margin(cam) >= scene.cloth().support());
  CHECK(scene.cloth_depth_margin(cam) < 0.5);
}
