// Copyright 2026 The raysift Authors
// SPDX-License-Identifier: Apache-2.0

#include "raysift/scene.hpp"

#include <algorithm>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace raysift {

void CameraSpec::validate() const {
  if (width < 1 || height < 1) throw std::invalid_argument("camera: width/height must be >= 1");
  if (!(x_max > x_min) || !(y_max > y_min)) {
    throw std::invalid_argument("camera: frustum extents must be non-empty");
  }
  if (!(t_near >= 0.0) || !(t_far > t_near)) {
    throw std::invalid_argument("camera: require 0 <= t_near < t_far");
  }
}

Primitive Primitive::sphere(Vec3 center, double radius, Rgb albedo) {
  Primitive p;
  p.kind = PrimitiveKind::sphere;
  p.a = center;
  p.b = center;
  p.radius = radius;
  p.albedo = albedo;
  return p;
}

Primitive Primitive::capsule(Vec3 a, Vec3 b, double radius, Rgb albedo) {
  Primitive p;
  p.kind = PrimitiveKind::capsule;
  p.a = a;
  p.b = b;
  p.radius = radius;
  p.albedo = albedo;
  return p;
}

Primitive Primitive::translated(const Vec3& offset) const {
  Primitive p = *this;
  p.a = a + offset;
  p.b = b + offset;
  return p;
}

double Primitive::signed_distance(const Vec3& p) const {
  if (kind == PrimitiveKind::sphere) return length(p - a) - radius;
  const Vec3 ba = b - a;
  const Vec3 pa = p - a;
  const double len2 = dot(ba, ba);
  const double h = len2 > 0.0 ? std::clamp(dot(pa, ba) / len2, 0.0, 1.0) : 0.0;
  return length(pa - ba * h) - radius;
}

namespace {

// Front intersection of the +z ray through (x, y) with a ball.
std::optional<double> ball_hit(const Vec3& c, double r, double x, double y) {
  const double dx = x - c.x;
  const double dy = y - c.y;
  const double rho2 = dx * dx + dy * dy;
  if (rho2 > r * r) return std::nullopt;
  return c.z - std::sqrt(r * r - rho2);
}

void keep_min(std::optional<double>& best, std::optional<double> t) {
  if (t && (!best || *t < *best)) best = t;
}

}  // namespace

std::optional<double> Primitive::intersect_z(double x, double y) const {
  std::optional<double> best = ball_hit(a, radius, x, y);
  if (kind == PrimitiveKind::sphere) return best;
  keep_min(best, ball_hit(b, radius, x, y));

  // Cylinder body, ray o = (x, y, 0), d = (0, 0, 1).
  const Vec3 ba = b - a;
  const Vec3 oa = Vec3{x, y, 0.0} - a;
  const double baba = dot(ba, ba);
  const double bard = ba.z;
  const double baoa = dot(ba, oa);
  const double rdoa = oa.z;
  const double oaoa = dot(oa, oa);
  const double qa = baba - bard * bard;
  if (qa > 1e-12 * baba) {
    const double qb = baba * rdoa - baoa * bard;
    const double qc = baba * oaoa - baoa * baoa - radius * radius * baba;
    const double disc = qb * qb - qa * qc;
    if (disc >= 0.0) {
      const double t = (-qb - std::sqrt(disc)) / qa;
      const double along = baoa + t * bard;
      if (along > 0.0 && along < baba) keep_min(best, t);
    }
  }
  return best;
}

double Primitive::z_min() const { return std::min(a.z, b.z) - radius; }
double Primitive::z_max() const { return std::max(a.z, b.z) + radius; }

double ClothField::band_density(double signed_distance) const {
  const double u = (signed_distance - shell_offset) / falloff;
  if (std::abs(u) > 3.0) return 0.0;
  return sigma_max * std::exp(-0.5 * u * u);
}

int FrameSequence::max_motion_pixels(const CameraSpec& cam) const {
  double worst = 0.0;
  for (std::size_t t = 1; t < offsets.size(); ++t) {
    for (std::size_t k = 0; k < offsets[t].size(); ++k) {
      const Vec3 d = offsets[t][k] - offsets[t - 1][k];
      worst = std::max({worst, std::abs(d.x) / cam.pixel_width(), std::abs(d.y) / cam.pixel_height()});
    }
  }
  if (offsets.size() < 2) return 0;
  // One extra pixel absorbs pixel-centre quantization of the moved boundary.
  return static_cast<int>(std::ceil(worst)) + 1;
}

FrameSequence make_sway_sequence(const ProxyBody& body, int frame_count) {
  if (frame_count < 1) throw std::invalid_argument("frame count must be >= 1");
  FrameSequence seq;
  seq.frame_count = frame_count;
  seq.offsets.resize(frame_count);
  for (int t = 1; t <= frame_count; ++t) {
    const double angle = 2.0 * std::numbers::pi * (t - 1) / frame_count;
    auto& row = seq.offsets[t - 1];
    row.reserve(body.primitives.size());
    for (const auto& prim : body.primitives) row.push_back(prim.sway * std::sin(angle + prim.phase));
  }
  return seq;
}

PosedScene::PosedScene(std::vector<Primitive> primitives, const ClothField& cloth,
                       std::optional<Vec3> lobe_center, Rgb empty_color)
    : primitives_(std::move(primitives)),
      cloth_(cloth),
      lobe_center_(lobe_center),
      empty_color_(empty_color) {}

double PosedScene::signed_distance(const Vec3& p) const {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& prim : primitives_) best = std::min(best, prim.signed_distance(p));
  return best;
}

std::optional<double> PosedScene::first_hit(double x, double y) const {
  std::optional<double> best;
  for (const auto& prim : primitives_) keep_min(best, prim.intersect_z(x, y));
  return best;
}

FieldSample PosedScene::query_field(const Vec3& p) const {
  const double band = primitives_.empty() ? 0.0 : cloth_.band_density(signed_distance(p));
  double lobe = 0.0;
  if (lobe_center_) {
    const ProtrusionLobe& spec = *cloth_.lobe;
    const double r = length(p - *lobe_center_) / spec.spread;
    if (r <= 3.0) lobe = spec.peak_density * std::exp(-0.5 * r * r);
  }
  FieldSample out;
  out.density = band + lobe;
  if (out.density > 0.0) {
    out.color = (cloth_.albedo * band + (lobe > 0.0 ? cloth_.lobe->albedo * lobe : Rgb{})) *
                (1.0 / out.density);
  } else {
    out.color = empty_color_;
  }
  return out;
}

Rgb PosedScene::surface_color(const Vec3& p, double tolerance) const {
  std::size_t nearest = primitives_.size();
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < primitives_.size(); ++k) {
    const double d = std::abs(primitives_[k].signed_distance(p));
    if (d < best) {
      best = d;
      nearest = k;
    }
  }
  if (nearest == primitives_.size() || best > tolerance) {
    throw std::invalid_argument("surface_color: point is not on the body surface");
  }
  return primitives_[nearest].albedo;
}

Scene::Scene(ProxyBody body, ClothField cloth, int frame_count, Rgb empty_color)
    : body_(std::move(body)),
      cloth_(std::move(cloth)),
      sequence_(make_sway_sequence(body_, frame_count)),
      empty_color_(empty_color) {
  if (!(cloth_.falloff > 0.0) || cloth_.sigma_max < 0.0) {
    throw std::invalid_argument("cloth: falloff must be > 0 and sigma_max >= 0");
  }
  if (cloth_.lobe) {
    const auto anchor = cloth_.lobe->anchor;
    if (anchor < 0 || static_cast<std::size_t>(anchor) >= body_.primitives.size()) {
      throw std::invalid_argument("cloth: protrusion lobe anchor out of range");
    }
  }
}

PosedScene Scene::at(int frame) const {
  if (frame < 1 || frame > sequence_.frame_count) {
    throw std::out_of_range("frame " + std::to_string(frame) + " outside [1, " +
                            std::to_string(sequence_.frame_count) + "]");
  }
  const auto& offsets = sequence_.offsets[frame - 1];
  std::vector<Primitive> posed;
  posed.reserve(body_.primitives.size());
  for (std::size_t k = 0; k < body_.primitives.size(); ++k) {
    posed.push_back(body_.primitives[k].translated(offsets[k]));
  }
  std::optional<Vec3> lobe;
  if (cloth_.lobe) lobe = cloth_.lobe->center + offsets[cloth_.lobe->anchor];
  return PosedScene(std::move(posed), cloth_, lobe, empty_color_);
}

void Scene::validate(const CameraSpec& cam) const {
  cam.validate();
  for (int t = 1; t <= frame_count(); ++t) {
    for (const auto& prim : at(t).primitives()) {
      if (!(prim.z_min() > cam.t_near) || !(prim.z_max() < cam.t_far)) {
        throw std::invalid_argument("scene: primitive leaves the camera depth range at frame " +
                                    std::to_string(t));
      }
    }
  }
}

double Scene::cloth_depth_margin(const CameraSpec& cam) const {
  const double band = cloth_.support();
  const double pixel = 1.5 * std::max(cam.pixel_width(), cam.pixel_height());
  double margin = band;
  for (const auto& prim : body_.primitives) {
    const double r = prim.radius;
    margin = std::max(margin, std::sqrt(2.0 * r * band + band * band) + std::sqrt(2.0 * r * pixel));
  }
  return margin;
}

ScenePreset parse_scene_preset(const std::string& name) {
  if (name == "default" || name == "standard") return ScenePreset::standard;
  if (name == "protrusion") return ScenePreset::protrusion;
  if (name == "empty") return ScenePreset::empty;
  throw std::invalid_argument("unknown scene preset '" + name + "'");
}

std::string to_string(ScenePreset preset) {
  switch (preset) {
    case ScenePreset::standard: return "default";
    case ScenePreset::protrusion: return "protrusion";
    case ScenePreset::empty: return "empty";
  }
  return "default";
}

namespace {

ProxyBody standard_body() {
  constexpr double z = 2.0;
  constexpr Rgb skin{0.92, 0.76, 0.62};
  constexpr Rgb shirt{0.25, 0.45, 0.75};
  constexpr Rgb trousers{0.2, 0.22, 0.3};

  ProxyBody body;
  auto add = [&](Primitive p, Vec3 sway, double phase) {
    p.sway = sway;
    p.phase = phase;
    body.primitives.push_back(p);
  };
  add(Primitive::capsule({0.0, 0.1, z}, {0.0, -0.27, z + 0.05}, 0.17, shirt), {0.05, 0.01, 0.0}, 0.0);
  add(Primitive::sphere({0.0, 0.46, z - 0.05}, 0.11, skin), {0.06, 0.015, 0.0}, 0.4);
  add(Primitive::capsule({-0.27, 0.34, z}, {-0.29, -0.36, z - 0.3}, 0.055, shirt), {0.02, 0.02, 0.0}, 0.9);
  add(Primitive::capsule({0.27, 0.34, z}, {0.29, -0.36, z + 0.1}, 0.055, shirt), {0.02, -0.02, 0.0}, -0.7);
  add(Primitive::capsule({-0.09, -0.47, z}, {-0.11, -0.78, z - 0.1}, 0.065, trousers), {0.03, 0.0, 0.0}, 0.2);
  add(Primitive::capsule({0.09, -0.47, z + 0.05}, {0.11, -0.78, z + 0.2}, 0.065, trousers), {0.03, 0.0, 0.0}, -0.2);
  return body;
}

ClothField standard_cloth() {
  ClothField cloth;
  cloth.shell_offset = 0.027;
  cloth.falloff = 0.009;
  cloth.sigma_max = 16.0;
  cloth.albedo = {0.85, 0.35, 0.25};
  return cloth;
}

}  // namespace

Scene make_scene(ScenePreset preset, int frame_count, double motion_scale, Rgb empty_color) {
  ProxyBody body;
  ClothField cloth = standard_cloth();
  switch (preset) {
    case ScenePreset::empty:
      break;
    case ScenePreset::standard:
      body = standard_body();
      break;
    case ScenePreset::protrusion: {
      body = standard_body();
      // A hand held towards the camera, left of the torso, and a cloth flap
      // at the same depth right of the torso. The flap sits in a base patch
      // whose mesh depths are far behind it; only a window that also covers
      // the hand explains its depth.
      Primitive hand = Primitive::sphere({-0.37, 0.25, 1.3}, 0.08, {0.92, 0.76, 0.62});
      body.primitives.push_back(hand);
      ProtrusionLobe lobe;
      lobe.center = {0.44, -0.08, 1.3};
      lobe.spread = 0.017;
      lobe.peak_density = 20.0;
      lobe.anchor = static_cast<int>(body.primitives.size()) - 1;
      cloth.lobe = lobe;
      break;
    }
  }
  for (auto& prim : body.primitives) prim.sway = prim.sway * motion_scale;
  return Scene(std::move(body), std::move(cloth), frame_count, empty_color);
}

ScalarMap rasterize_depth(const Scene& scene, const CameraSpec& cam, int frame) {
  cam.validate();
  const PosedScene posed = scene.at(frame);
  ScalarMap depth(cam.width, cam.height, cam.depth_sentinel());
  for (int row = 0; row < cam.height; ++row) {
    const double y = cam.pixel_y(row);
    for (int col = 0; col < cam.width; ++col) {
      if (auto t = posed.first_hit(cam.pixel_x(col), y)) {
        depth(col, row) = static_cast<float>(*t);
      }
    }
  }
  return depth;
}

ScalarMap silhouette_from_depth(const ScalarMap& depth, const CameraSpec& cam) {
  ScalarMap sil(depth.width(), depth.height());
  for (std::size_t i = 0; i < depth.size(); ++i) sil[i] = cam.is_hit(depth[i]) ? 1.0f : 0.0f;
  return sil;
}

ScalarMap rasterize_silhouette(const Scene& scene, const CameraSpec& cam, int frame) {
  return silhouette_from_depth(rasterize_depth(scene, cam, frame), cam);
}

FieldSample query_field(const Scene& scene, int frame, const Vec3& point) {
  return scene.at(frame).query_field(point);
}

Rgb surface_color(const Scene& scene, int frame, const Vec3& point) {
  return scene.at(frame).surface_color(point);
}

}  // namespace raysift
