// Copyright 2026 The raysift Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "raysift/color.hpp"
#include "raysift/maps.hpp"

namespace raysift {

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  constexpr Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  constexpr Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  constexpr bool operator==(const Vec3&) const = default;
};

inline constexpr double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline double length(const Vec3& v) { return std::sqrt(dot(v, v)); }

/// Orthographic camera. One ray per pixel centre, origin on the z = 0 plane,
/// direction +z, so the ray parameter t equals world depth z. Row 0 is the
/// top of the image (largest y).
struct CameraSpec {
  int width = 256;
  int height = 256;
  double x_min = -1.0;
  double x_max = 1.0;
  double y_min = -1.0;
  double y_max = 1.0;
  double t_near = 0.5;
  double t_far = 4.5;

  void validate() const;

  double pixel_width() const { return (x_max - x_min) / width; }
  double pixel_height() const { return (y_max - y_min) / height; }
  double pixel_x(int col) const { return x_min + (col + 0.5) * pixel_width(); }
  double pixel_y(int row) const { return y_max - (row + 0.5) * pixel_height(); }
  Vec3 point(int col, int row, double t) const { return {pixel_x(col), pixel_y(row), t}; }

  /// Depth stored for pixels whose ray misses the body.
  float depth_sentinel() const { return static_cast<float>(t_far); }
  bool is_hit(float depth) const { return depth < depth_sentinel(); }
  std::size_t pixel_count() const { return static_cast<std::size_t>(width) * height; }
};

enum class PrimitiveKind { sphere, capsule };

/// Sphere (a == b) or capsule (segment a-b swept by a ball of `radius`).
struct Primitive {
  PrimitiveKind kind = PrimitiveKind::sphere;
  Vec3 a;
  Vec3 b;
  double radius = 0.0;
  Rgb albedo{0.5, 0.5, 0.5};
  // Per-frame offset is sway * sin(2*pi*(t-1)/T + phase).
  Vec3 sway;
  double phase = 0.0;

  static Primitive sphere(Vec3 center, double radius, Rgb albedo);
  static Primitive capsule(Vec3 a, Vec3 b, double radius, Rgb albedo);

  Primitive translated(const Vec3& offset) const;
  double signed_distance(const Vec3& p) const;
  /// Nearest intersection depth of the +z ray through (x, y), if any.
  std::optional<double> intersect_z(double x, double y) const;
  double z_min() const;
  double z_max() const;
};

struct ProxyBody {
  std::vector<Primitive> primitives;
};

/// Extra Gaussian blob of density that does not follow the body surface.
struct ProtrusionLobe {
  Vec3 center;
  double spread = 0.02;  // Gaussian std-dev, support is 3 * spread
  double peak_density = 20.0;
  Rgb albedo{0.2, 0.3, 0.8};
  int anchor = 0;  // moves rigidly with this primitive
};

/// Density band around the body: Gaussian in signed distance, peaking at
/// shell_offset and cut to zero beyond 3 falloff widths.
struct ClothField {
  double shell_offset = 0.03;
  double sigma_max = 12.0;
  double falloff = 0.01;
  Rgb albedo{0.85, 0.35, 0.25};
  std::optional<ProtrusionLobe> lobe;

  /// Largest distance from the body surface with nonzero band density.
  double support() const { return shell_offset + 3.0 * falloff; }
  double band_density(double signed_distance) const;
};

struct FrameSequence {
  int frame_count = 1;
  // offsets[t - 1][k]: offset of primitive k at frame t.
  std::vector<std::vector<Vec3>> offsets;

  /// Upper bound on silhouette displacement between consecutive frames, in
  /// pixels (Chebyshev).
  int max_motion_pixels(const CameraSpec& cam) const;
};

FrameSequence make_sway_sequence(const ProxyBody& body, int frame_count);

struct FieldSample {
  double density = 0.0;
  Rgb color;
};

/// Body and cloth posed at one frame.
class PosedScene {
 public:
  PosedScene(std::vector<Primitive> primitives, const ClothField& cloth,
             std::optional<Vec3> lobe_center, Rgb empty_color);

  const std::vector<Primitive>& primitives() const { return primitives_; }

  double signed_distance(const Vec3& p) const;
  std::optional<double> first_hit(double x, double y) const;
  FieldSample query_field(const Vec3& p) const;
  /// Albedo of the nearest primitive; lower index wins ties. Throws when p
  /// is farther than `tolerance` from every surface.
  Rgb surface_color(const Vec3& p, double tolerance = 1e-4) const;

 private:
  std::vector<Primitive> primitives_;
  ClothField cloth_;
  std::optional<Vec3> lobe_center_;
  Rgb empty_color_;
};

/// Immutable animated scene. Frames are 1-based.
class Scene {
 public:
  Scene(ProxyBody body, ClothField cloth, int frame_count, Rgb empty_color = {1.0, 1.0, 1.0});

  const ProxyBody& body() const { return body_; }
  const ClothField& cloth() const { return cloth_; }
  const FrameSequence& sequence() const { return sequence_; }
  int frame_count() const { return sequence_.frame_count; }
  Rgb empty_color() const { return empty_color_; }

  PosedScene at(int frame) const;

  /// Throws unless every primitive stays strictly inside (t_near, t_far)
  /// for every frame.
  void validate(const CameraSpec& cam) const;

  /// Conservative EIO margin for this scene's cloth band: bounds how far the
  /// band reaches in depth beyond the visible depth of the nearest rim
  /// pixel. Protrusion lobes are deliberately not covered.
  double cloth_depth_margin(const CameraSpec& cam) const;

 private:
  ProxyBody body_;
  ClothField cloth_;
  FrameSequence sequence_;
  Rgb empty_color_;
};

enum class ScenePreset { standard, protrusion, empty };

ScenePreset parse_scene_preset(const std::string& name);
std::string to_string(ScenePreset preset);

/// Shipped proxy scenes. `motion_scale` multiplies every sway amplitude.
Scene make_scene(ScenePreset preset, int frame_count, double motion_scale = 1.0,
                 Rgb empty_color = {1.0, 1.0, 1.0});

// Per-frame rasterization by analytic ray-primitive intersection. Misses
// carry cam.depth_sentinel() exactly.
ScalarMap rasterize_depth(const Scene& scene, const CameraSpec& cam, int frame);
ScalarMap rasterize_silhouette(const Scene& scene, const CameraSpec& cam, int frame);
ScalarMap silhouette_from_depth(const ScalarMap& depth, const CameraSpec& cam);

FieldSample query_field(const Scene& scene, int frame, const Vec3& point);
Rgb surface_color(const Scene& scene, int frame, const Vec3& point);

}  // namespace raysift
