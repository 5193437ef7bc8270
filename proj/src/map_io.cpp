// Copyright 2026 The raysift Authors
// SPDX-License-Identifier: Apache-2.0

#include "raysift/map_io.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <stdexcept>
#include <string>

namespace raysift {

namespace {

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>((v >> (8 * i)) & 0xffu));
}

std::uint32_t get_u32(const std::vector<std::uint8_t>& in, std::size_t at) {
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(in[at + i]) << (8 * i);
  return v;
}

std::uint8_t to_byte(double v) {
  if (!(v > 0.0)) return 0;  // also maps NaN to 0
  if (v >= 1.0) return 255;
  return static_cast<std::uint8_t>(std::lround(v * 255.0));
}

void write_bytes(const std::filesystem::path& path, const std::vector<std::uint8_t>& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

std::vector<std::uint8_t> pnm_header(const char* magic, int w, int h) {
  const std::string header =
      std::string(magic) + "\n" + std::to_string(w) + " " + std::to_string(h) + "\n255\n";
  return {header.begin(), header.end()};
}

}  // namespace

std::vector<std::uint8_t> encode_epsm(const ScalarMap& map) {
  std::vector<std::uint8_t> out;
  out.reserve(16 + map.size() * 4);
  for (char c : {'E', 'P', 'S', 'M'}) out.push_back(static_cast<std::uint8_t>(c));
  put_u32(out, static_cast<std::uint32_t>(map.width()));
  put_u32(out, static_cast<std::uint32_t>(map.height()));
  put_u32(out, kEpsmDtypeF32);
  for (float v : map.data()) put_u32(out, std::bit_cast<std::uint32_t>(v));
  return out;
}

ScalarMap decode_epsm(const std::vector<std::uint8_t>& bytes) {
  if (bytes.size() < 16 || std::memcmp(bytes.data(), "EPSM", 4) != 0) {
    throw std::runtime_error("EPSM: bad magic or truncated header");
  }
  const std::uint32_t w = get_u32(bytes, 4);
  const std::uint32_t h = get_u32(bytes, 8);
  const std::uint32_t dtype = get_u32(bytes, 12);
  if (dtype != kEpsmDtypeF32) {
    throw std::runtime_error("EPSM: unsupported dtype tag " + std::to_string(dtype));
  }
  if (w == 0 || h == 0) throw std::runtime_error("EPSM: zero dimension");
  const std::uint64_t count = static_cast<std::uint64_t>(w) * h;
  if (bytes.size() != 16 + count * 4) {
    throw std::runtime_error("EPSM: payload size does not match header");
  }
  std::vector<float> data(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    data[i] = std::bit_cast<float>(get_u32(bytes, 16 + i * 4));
  }
  return ScalarMap(static_cast<int>(w), static_cast<int>(h), std::move(data));
}

void write_epsm(const std::filesystem::path& path, const ScalarMap& map) {
  write_bytes(path, encode_epsm(map));
}

ScalarMap read_epsm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  return decode_epsm(bytes);
}

std::vector<std::uint8_t> encode_pgm(const ScalarMap& map) {
  auto out = pnm_header("P5", map.width(), map.height());
  for (float v : map.data()) out.push_back(to_byte(v));
  return out;
}

void write_pgm(const std::filesystem::path& path, const ScalarMap& map) {
  write_bytes(path, encode_pgm(map));
}

std::vector<std::uint8_t> encode_ppm(const RgbImage& image) {
  auto out = pnm_header("P6", image.width(), image.height());
  for (float v : image.data()) out.push_back(to_byte(v));
  return out;
}

void write_ppm(const std::filesystem::path& path, const RgbImage& image) {
  write_bytes(path, encode_ppm(image));
}

}  // namespace raysift
