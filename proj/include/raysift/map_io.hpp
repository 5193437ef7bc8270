// Copyright 2026 The raysift Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "raysift/maps.hpp"

namespace raysift {

// EPSM container: "EPSM", u32 width, u32 height, u32 dtype (0 = f32), all
// little-endian, followed by the row-major f32 payload.
inline constexpr std::uint32_t kEpsmDtypeF32 = 0;

std::vector<std::uint8_t> encode_epsm(const ScalarMap& map);
ScalarMap decode_epsm(const std::vector<std::uint8_t>& bytes);

void write_epsm(const std::filesystem::path& path, const ScalarMap& map);
ScalarMap read_epsm(const std::filesystem::path& path);

/// 8-bit binary graymap; [0,1] maps linearly to [0,255] with clamping.
std::vector<std::uint8_t> encode_pgm(const ScalarMap& map);
void write_pgm(const std::filesystem::path& path, const ScalarMap& map);

/// 8-bit binary pixmap with the same per-channel mapping as encode_pgm.
std::vector<std::uint8_t> encode_ppm(const RgbImage& image);
void write_ppm(const std::filesystem::path& path, const RgbImage& image);

}  // namespace raysift
