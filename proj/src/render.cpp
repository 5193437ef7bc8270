// Copyright 2026 The raysift Authors
// SPDX-License-Identifier: Apache-2.0

#include "raysift/render.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <thread>

namespace raysift {

SamplerMode parse_sampler_mode(const std::string& name) {
  if (name == "midpoint") return SamplerMode::midpoint;
  if (name == "jitter") return SamplerMode::jitter;
  throw std::invalid_argument("unknown sampler '" + name + "'");
}

std::string to_string(SamplerMode mode) {
  return mode == SamplerMode::jitter ? "jitter" : "midpoint";
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

double unit_double(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

std::uint64_t ray_seed(std::uint64_t seed, int frame, std::size_t pixel) {
  return splitmix64(splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(frame))) ^ pixel);
}

std::vector<double> stratified_sample(double near, double far, int n_s, SamplerMode mode,
                                      std::uint64_t seed, std::optional<double> surface_depth) {
  if (n_s < 2) throw std::invalid_argument("stratified_sample: n_s must be >= 2");
  if (!(near <= far)) throw std::invalid_argument("stratified_sample: require near <= far");
  double end = far;
  if (surface_depth) {
    if (*surface_depth < near || *surface_depth > far) {
      throw std::invalid_argument("stratified_sample: surface depth outside the interval");
    }
    end = *surface_depth;
  }
  std::vector<double> depths(static_cast<std::size_t>(n_s), near);
  if (end == near) {
    return depths;
  }
  const int strata = n_s - 1;
  const double step = (end - near) / strata;
  std::mt19937_64 rng(seed);
  for (int i = 0; i < strata; ++i) {
    const double u = mode == SamplerMode::midpoint ? 0.5 : unit_double(rng);
    depths[static_cast<std::size_t>(i)] = near + (i + u) * step;
  }
  depths.back() = end;
  return depths;
}

Vec3 DeformStub::apply(const Vec3& p, std::uint64_t& checksum) const {
  if (work_units <= 0) return p;
  // Seeded from the point only and folded in by addition, so the checksum is
  // independent of evaluation order.
  std::uint64_t state = static_cast<std::uint64_t>(std::llround(p.z * 1e6)) ^
                        (static_cast<std::uint64_t>(std::llround(p.x * 1e6)) << 21);
  for (int i = 0; i < work_units; ++i) {
    state = state * 6364136223846793005ull + 1442695040888963407ull;
  }
  checksum += state;
  return p;
}

SampleSet make_sample_set(const CameraSpec& cam, int col, int row, std::vector<double> depths) {
  SampleSet s;
  s.positions.reserve(depths.size());
  for (double t : depths) s.positions.push_back(cam.point(col, row, t));
  s.depths = std::move(depths);
  return s;
}

RayResult composite_ray(std::span<const double> depths, std::span<const double> sigma,
                        std::span<const Rgb> color, const Rgb& final_color) {
  const std::size_t n = depths.size();
  if (n < 2 || sigma.size() != n - 1 || color.size() != n - 1) {
    throw std::invalid_argument("composite_ray: need n_s >= 2 depths and n_s - 1 field samples");
  }
  RayResult out;
  double transmittance = 1.0;
  double alpha_sum = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double delta = depths[i + 1] - depths[i];
    const double decay = std::exp(-sigma[i] * delta);
    const double alpha = transmittance * (1.0 - decay);
    out.color += color[i] * alpha;
    alpha_sum += alpha;
    transmittance *= decay;
  }
  out.color += final_color * (1.0 - alpha_sum);
  out.weight = alpha_sum;
  return out;
}

namespace {

struct RayScratch {
  std::vector<double> sigma;
  std::vector<Rgb> color;
};

RayResult render_ray_impl(const SampleSet& samples, const PosedScene& scene, bool intersects_mesh,
                          const DeformStub& stub, std::uint64_t& checksum, RayScratch& scratch) {
  const std::size_t n = samples.depths.size();
  if (n < 2 || samples.positions.size() != n) {
    throw std::invalid_argument("render_ray: malformed sample set");
  }
  scratch.sigma.resize(n - 1);
  scratch.color.resize(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const FieldSample fs = scene.query_field(stub.apply(samples.positions[i], checksum));
    if (std::isnan(fs.density)) throw std::runtime_error("render_ray: field returned NaN density");
    scratch.sigma[i] = fs.density;
    scratch.color[i] = fs.color;
  }
  const Vec3 last = stub.apply(samples.positions.back(), checksum);
  const Rgb final_color = intersects_mesh ? scene.surface_color(last) : scene.query_field(last).color;
  return composite_ray(samples.depths, scratch.sigma, scratch.color, final_color);
}

}  // namespace

RayResult render_ray(const SampleSet& samples, const PosedScene& scene, bool intersects_mesh,
                     const DeformStub& stub, std::uint64_t& checksum) {
  RayScratch scratch;
  return render_ray_impl(samples, scene, intersects_mesh, stub, checksum, scratch);
}

RenderOutput render_frame(const Scene& scene, const CameraSpec& cam, int frame,
                          const ScalarMap& depth, const RaySet& rays,
                          const RayIntervals& intervals, const RenderConfig& cfg) {
  const int w = cam.width;
  const int h = cam.height;
  if (depth.width() != w || depth.height() != h || rays.width() != w || rays.height() != h ||
      intervals.width() != w || intervals.height() != h) {
    throw std::invalid_argument("render_frame: input dimensions disagree with the camera");
  }
  const PosedScene posed = scene.at(frame);
  RenderOutput out{RgbImage(w, h, cfg.background), ScalarMap(w, h), {}};

  const int threads = std::clamp(cfg.threads, 1, h);
  std::vector<RenderCounters> partial(static_cast<std::size_t>(threads));
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(threads));

  auto work = [&](int chunk) {
    try {
      const int row0 = h * chunk / threads;
      const int row1 = h * (chunk + 1) / threads;
      RenderCounters& c = partial[static_cast<std::size_t>(chunk)];
      RayScratch scratch;
      for (int row = row0; row < row1; ++row) {
        for (int col = 0; col < w; ++col) {
          const std::size_t i = static_cast<std::size_t>(row) * w + col;
          if (!rays.contains(i)) continue;
          const float d = depth[i];
          const bool hit = cam.is_hit(d);
          const int n_s = intervals.samples(i);
          std::optional<double> surface;
          if (hit) surface = static_cast<double>(d);
          SampleSet samples = make_sample_set(
              cam, col, row,
              stratified_sample(intervals.near(i), intervals.far(i), n_s, cfg.sampler,
                                ray_seed(cfg.seed, frame, i), surface));
          const RayResult r = render_ray_impl(samples, posed, hit, cfg.stub, c.stub_checksum, scratch);
          out.image.set(col, row, r.color);
          out.weight[i] = static_cast<float>(std::clamp(r.weight, 0.0, 1.0));
          c.points_sampled += static_cast<std::uint64_t>(n_s);
          c.points_deformed += static_cast<std::uint64_t>(n_s);
          c.rays_rendered += 1;
        }
      }
    } catch (...) {
      errors[static_cast<std::size_t>(chunk)] = std::current_exception();
    }
  };

  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t) pool.emplace_back(work, t);
    for (auto& th : pool) th.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  for (const auto& c : partial) {
    out.counters.points_sampled += c.points_sampled;
    out.counters.points_deformed += c.points_deformed;
    out.counters.rays_rendered += c.rays_rendered;
    out.counters.stub_checksum += c.stub_checksum;
  }
  return out;
}

}  // namespace raysift
