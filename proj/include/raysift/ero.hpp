// Copyright 2026 The raysift Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "raysift/maps.hpp"

namespace raysift {

// Empty ray omission: per-frame candidate maps and the thresholded set of
// rays that are worth rendering.

enum class CandidateMode {
  averaging,  // box filter, as written for the method
  binary,     // max filter (morphological dilation) on the binarized input
};

CandidateMode parse_candidate_mode(const std::string& name);
std::string to_string(CandidateMode mode);

struct EroConfig {
  double tau = 0.9;
  int k1 = 41;
  int k2 = 21;
  CandidateMode mode = CandidateMode::averaging;
  // Binary mode treats W_prev + S_t above this as occupied.
  float binarize_threshold = 1e-3f;

  void validate() const;
};

class RaySet {
 public:
  RaySet(int width, int height, std::vector<std::uint8_t> mask);

  static RaySet full(int width, int height);
  static RaySet none(int width, int height);

  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t count() const { return count_; }
  bool contains(int x, int y) const {
    return mask_[static_cast<std::size_t>(y) * width_ + x] != 0;
  }
  bool contains(std::size_t index) const { return mask_[index] != 0; }

  /// 1/0 mask for debugging export.
  ScalarMap to_map() const;

 private:
  int width_;
  int height_;
  std::vector<std::uint8_t> mask_;
  std::size_t count_ = 0;
};

/// Candidates without temporal prior (first frame or training).
ScalarMap candidate_train(const ScalarMap& silhouette, const EroConfig& cfg);

/// Candidates from the previous frame's weight map plus the current
/// silhouette.
ScalarMap candidate_infer(const ScalarMap& prev_weight, const ScalarMap& silhouette,
                          const EroConfig& cfg);

/// Routes frame 1 (or a missing prior) to candidate_train and later frames to
/// candidate_infer. Frames are 1-based.
ScalarMap candidate_for_frame(int frame, const ScalarMap* prev_weight,
                              const ScalarMap& silhouette, const EroConfig& cfg);

/// Rays whose candidate score is strictly greater than tau.
RaySet threshold_rays(const ScalarMap& cand, double tau);

}  // namespace raysift
