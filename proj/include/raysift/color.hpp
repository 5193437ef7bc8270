// Copyright 2026 The raysift Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

namespace raysift {

struct Rgb {
  double r = 0.0;
  double g = 0.0;
  double b = 0.0;

  constexpr Rgb operator+(const Rgb& o) const { return {r + o.r, g + o.g, b + o.b}; }
  constexpr Rgb operator-(const Rgb& o) const { return {r - o.r, g - o.g, b - o.b}; }
  constexpr Rgb operator*(double s) const { return {r * s, g * s, b * s}; }
  constexpr Rgb& operator+=(const Rgb& o) {
    r += o.r;
    g += o.g;
    b += o.b;
    return *this;
  }
  constexpr bool operator==(const Rgb&) const = default;
};

inline constexpr Rgb operator*(double s, const Rgb& c) { return c * s; }

}  // namespace raysift
