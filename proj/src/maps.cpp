// Copyright 2026 The raysift Authors
// SPDX-License-Identifier: Apache-2.0

#include "raysift/maps.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace raysift {

ScalarMap::ScalarMap(int width, int height, float fill)
    : width_(width), height_(height) {
  if (width < 1 || height < 1) {
    throw std::invalid_argument("ScalarMap: width and height must be >= 1");
  }
  data_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill);
}

ScalarMap::ScalarMap(int width, int height, std::vector<float> data)
    : width_(width), height_(height), data_(std::move(data)) {
  if (width < 1 || height < 1) {
    throw std::invalid_argument("ScalarMap: width and height must be >= 1");
  }
  if (data_.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
    throw std::invalid_argument("ScalarMap: data length " + std::to_string(data_.size()) +
                                " does not match " + std::to_string(width) + "x" +
                                std::to_string(height));
  }
}

namespace {

void require_same_shape(const ScalarMap& a, const ScalarMap& b, const char* what) {
  if (!a.same_shape(b)) {
    throw std::invalid_argument(std::string(what) + ": dimension mismatch (" +
                                std::to_string(a.width()) + "x" + std::to_string(a.height()) +
                                " vs " + std::to_string(b.width()) + "x" +
                                std::to_string(b.height()) + ")");
  }
}

}  // namespace

ScalarMap box_convolve(const ScalarMap& map, BoxKernel kernel) {
  const int k = kernel.size;
  if (k < 1 || k % 2 == 0) {
    throw std::invalid_argument("box_convolve: kernel size must be odd and positive, got " +
                                std::to_string(k));
  }
  const int w = map.width();
  const int h = map.height();
  if (k > 2 * std::max(w, h) + 1) {
    throw std::invalid_argument("box_convolve: kernel size " + std::to_string(k) +
                                " exceeds 2*max(H,W)+1");
  }
  const int r = k / 2;

  // Horizontal pass into a double buffer, then vertical pass.
  std::vector<double> rows(map.size(), 0.0);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double acc = 0.0;
      const int x0 = std::max(0, x - r);
      const int x1 = std::min(w - 1, x + r);
      for (int i = x0; i <= x1; ++i) acc += map(i, y);
      rows[static_cast<std::size_t>(y) * w + x] = acc;
    }
  }

  const double norm = kernel.normalization();
  ScalarMap out(w, h);
  for (int y = 0; y < h; ++y) {
    const int y0 = std::max(0, y - r);
    const int y1 = std::min(h - 1, y + r);
    for (int x = 0; x < w; ++x) {
      double acc = 0.0;
      for (int j = y0; j <= y1; ++j) acc += rows[static_cast<std::size_t>(j) * w + x];
      out(x, y) = static_cast<float>(acc * norm);
    }
  }
  return out;
}

ScalarMap binary_dilate(const ScalarMap& map, int radius) {
  if (radius < 0) {
    throw std::invalid_argument("binary_dilate: radius must be >= 0");
  }
  const int w = map.width();
  const int h = map.height();

  // Prefix counts of the indicator make each window test O(1) and exact.
  std::vector<int> horiz(map.size(), 0);
  std::vector<int> prefix(static_cast<std::size_t>(std::max(w, h)) + 1, 0);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) prefix[x + 1] = prefix[x] + (map(x, y) > 0.0f ? 1 : 0);
    for (int x = 0; x < w; ++x) {
      const int lo = std::max(0, x - radius);
      const int hi = std::min(w, x + radius + 1);
      horiz[static_cast<std::size_t>(y) * w + x] = (prefix[hi] - prefix[lo]) > 0 ? 1 : 0;
    }
  }

  ScalarMap out(w, h);
  for (int x = 0; x < w; ++x) {
    for (int y = 0; y < h; ++y) prefix[y + 1] = prefix[y] + horiz[static_cast<std::size_t>(y) * w + x];
    for (int y = 0; y < h; ++y) {
      const int lo = std::max(0, y - radius);
      const int hi = std::min(h, y + radius + 1);
      out(x, y) = (prefix[hi] - prefix[lo]) > 0 ? 1.0f : 0.0f;
    }
  }
  return out;
}

ScalarMap map_add(const ScalarMap& a, const ScalarMap& b) {
  require_same_shape(a, b, "map_add");
  ScalarMap out = a;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += b[i];
  return out;
}

ScalarMap binarize(const ScalarMap& map, float threshold) {
  ScalarMap out(map.width(), map.height());
  for (std::size_t i = 0; i < map.size(); ++i) out[i] = map[i] > threshold ? 1.0f : 0.0f;
  return out;
}

RgbImage::RgbImage(int width, int height, Rgb fill) : width_(width), height_(height) {
  if (width < 1 || height < 1) {
    throw std::invalid_argument("RgbImage: width and height must be >= 1");
  }
  data_.resize(static_cast<std::size_t>(width) * height * 3);
  for (std::size_t i = 0; i < data_.size(); i += 3) {
    data_[i] = static_cast<float>(fill.r);
    data_[i + 1] = static_cast<float>(fill.g);
    data_[i + 2] = static_cast<float>(fill.b);
  }
}

Rgb RgbImage::at(int x, int y) const {
  const std::size_t i = (static_cast<std::size_t>(y) * width_ + x) * 3;
  return {data_[i], data_[i + 1], data_[i + 2]};
}

void RgbImage::set(int x, int y, const Rgb& c) {
  const std::size_t i = (static_cast<std::size_t>(y) * width_ + x) * 3;
  data_[i] = static_cast<float>(c.r);
  data_[i + 1] = static_cast<float>(c.g);
  data_[i + 2] = static_cast<float>(c.b);
}

}  // namespace raysift
