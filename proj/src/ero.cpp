// Copyright 2026 The raysift Authors
// SPDX-License-Identifier: Apache-2.0

#include "raysift/ero.hpp"

#include <cmath>
#include <stdexcept>

namespace raysift {

CandidateMode parse_candidate_mode(const std::string& name) {
  if (name == "averaging" || name == "average") return CandidateMode::averaging;
  if (name == "binary" || name == "dilation") return CandidateMode::binary;
  throw std::invalid_argument("unknown candidate mode '" + name + "'");
}

std::string to_string(CandidateMode mode) {
  return mode == CandidateMode::binary ? "binary" : "averaging";
}

void EroConfig::validate() const {
  if (!(tau > 0.0)) throw std::invalid_argument("ero: tau must be > 0");
  if (k1 < 1 || k1 % 2 == 0 || k2 < 1 || k2 % 2 == 0) {
    throw std::invalid_argument("ero: k1 and k2 must be odd and positive");
  }
  if (k2 > k1) throw std::invalid_argument("ero: k2 must not exceed k1");
}

RaySet::RaySet(int width, int height, std::vector<std::uint8_t> mask)
    : width_(width), height_(height), mask_(std::move(mask)) {
  if (mask_.size() != static_cast<std::size_t>(width) * height) {
    throw std::invalid_argument("RaySet: mask size mismatch");
  }
  for (auto m : mask_) count_ += m != 0 ? 1 : 0;
}

RaySet RaySet::full(int width, int height) {
  return RaySet(width, height, std::vector<std::uint8_t>(static_cast<std::size_t>(width) * height, 1));
}

RaySet RaySet::none(int width, int height) {
  return RaySet(width, height, std::vector<std::uint8_t>(static_cast<std::size_t>(width) * height, 0));
}

ScalarMap RaySet::to_map() const {
  ScalarMap out(width_, height_);
  for (std::size_t i = 0; i < mask_.size(); ++i) out[i] = mask_[i] ? 1.0f : 0.0f;
  return out;
}

ScalarMap candidate_train(const ScalarMap& silhouette, const EroConfig& cfg) {
  cfg.validate();
  for (float v : silhouette.data()) {
    if (!(std::abs(v) <= 1e-6f || std::abs(v - 1.0f) <= 1e-6f)) {
      throw std::invalid_argument("candidate_train: silhouette must be binary");
    }
  }
  if (cfg.mode == CandidateMode::averaging) return box_convolve(silhouette, BoxKernel{cfg.k1});
  return binary_dilate(binarize(silhouette, 0.5f), (cfg.k1 - 1) / 2);
}

ScalarMap candidate_infer(const ScalarMap& prev_weight, const ScalarMap& silhouette,
                          const EroConfig& cfg) {
  cfg.validate();
  if (!prev_weight.same_shape(silhouette)) {
    throw std::invalid_argument("candidate_infer: dimension mismatch");
  }
  for (float v : prev_weight.data()) {
    if (std::isnan(v)) throw std::invalid_argument("candidate_infer: weight map contains NaN");
    if (v < 0.0f || v > 1.0f + 1e-4f) {
      throw std::invalid_argument("candidate_infer: weight map outside [0, 1]");
    }
  }
  const ScalarMap sum = map_add(prev_weight, silhouette);
  if (cfg.mode == CandidateMode::averaging) return box_convolve(sum, BoxKernel{cfg.k2});
  return binary_dilate(binarize(sum, cfg.binarize_threshold), (cfg.k2 - 1) / 2);
}

ScalarMap candidate_for_frame(int frame, const ScalarMap* prev_weight,
                              const ScalarMap& silhouette, const EroConfig& cfg) {
  if (frame <= 1 || prev_weight == nullptr) return candidate_train(silhouette, cfg);
  return candidate_infer(*prev_weight, silhouette, cfg);
}

RaySet threshold_rays(const ScalarMap& cand, double tau) {
  // Compare at map precision so a map filled with tau itself is empty.
  const float threshold = static_cast<float>(tau);
  std::vector<std::uint8_t> mask(cand.size(), 0);
  for (std::size_t i = 0; i < cand.size(); ++i) {
    if (std::isnan(cand[i])) throw std::invalid_argument("threshold_rays: NaN candidate");
    mask[i] = cand[i] > threshold ? 1 : 0;
  }
  return RaySet(cand.width(), cand.height(), std::move(mask));
}

}  // namespace raysift
