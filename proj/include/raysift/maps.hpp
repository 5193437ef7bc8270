// Copyright 2026 The raysift Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "raysift/color.hpp"

namespace raysift {

/// Dense row-major H x W grid of 32-bit scalars. Used for silhouettes, depth
/// maps, weight maps and candidate maps alike.
class ScalarMap {
 public:
  ScalarMap(int width, int height, float fill = 0.0f);
  ScalarMap(int width, int height, std::vector<float> data);

  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t size() const { return data_.size(); }

  float operator()(int x, int y) const { return data_[index(x, y)]; }
  float& operator()(int x, int y) { return data_[index(x, y)]; }
  float operator[](std::size_t i) const { return data_[i]; }
  float& operator[](std::size_t i) { return data_[i]; }

  std::span<const float> data() const { return data_; }
  std::span<float> data() { return data_; }

  bool same_shape(const ScalarMap& other) const {
    return width_ == other.width_ && height_ == other.height_;
  }

  bool operator==(const ScalarMap&) const = default;

 private:
  std::size_t index(int x, int y) const {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(x);
  }

  int width_;
  int height_;
  std::vector<float> data_;
};

/// k x k averaging kernel filled with 1/k^2.
struct BoxKernel {
  int size = 1;

  double normalization() const { return 1.0 / (static_cast<double>(size) * size); }
};

/// Mean over the k x k neighbourhood of each pixel, zero padded outside the
/// grid. Separable; sums are accumulated in double.
ScalarMap box_convolve(const ScalarMap& map, BoxKernel kernel);

/// 1 where any pixel within Chebyshev distance `radius` is > 0, else 0.
ScalarMap binary_dilate(const ScalarMap& map, int radius);

ScalarMap map_add(const ScalarMap& a, const ScalarMap& b);

/// 1 where value > threshold, else 0.
ScalarMap binarize(const ScalarMap& map, float threshold);

/// RGB image stored as three interleaved floats per pixel.
class RgbImage {
 public:
  RgbImage(int width, int height, Rgb fill = {});

  int width() const { return width_; }
  int height() const { return height_; }

  Rgb at(int x, int y) const;
  void set(int x, int y, const Rgb& c);

  std::span<const float> data() const { return data_; }

  bool same_shape(const RgbImage& other) const {
    return width_ == other.width_ && height_ == other.height_;
  }
  bool operator==(const RgbImage&) const = default;

 private:
  int width_;
  int height_;
  std::vector<float> data_;
};

}  // namespace raysift
