// Copyright 2026 The ContrastiveCrop Sim Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <span>

#include "ccrop/geometry.hpp"
#include "ccrop/sampling.hpp"

namespace ccrop {

/// Two crops of the same image, as handed to a Siamese objective.
struct PairSample {
  Rect crop_a;
  Rect crop_b;
  std::int64_t epoch = 0;
  SamplerKind sampler_kind = SamplerKind::RandomCrop;
  std::size_t scene = 0;

  friend bool operator==(const PairSample&, const PairSample&) = default;
};

/// Streaming mean / variance (Welford) with Chan's pairwise merge.
class RunningMoments {
 public:
  void add(double x);
  void merge(const RunningMoments& other);

  std::uint64_t count() const { return n_; }
  double mean() const { return mean_; }
  /// Unbiased sample variance; 0 for fewer than two observations.
  double variance() const;
  double std_error() const;

 private:
  std::uint64_t n_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

/// Crop-geometry statistics over positive pairs.
///
/// A pair is a strict false positive when either crop has zero overlap with
/// the object, and a thresholded one when either crop covers less than `tau`
/// of the object. Pair IoU stands in for positive-pair similarity and object
/// coverage (per crop) for semantic content.
class PairStats {
 public:
  void add(const Rect& crop_a, const Rect& crop_b, const Rect& object, double tau);
  void merge(const PairStats& other);

  std::uint64_t n_pairs() const { return n_pairs_; }
  std::uint64_t fp_strict_count() const { return fp_strict_; }
  std::uint64_t fp_tau_count() const { return fp_tau_; }
  double fp_rate_strict() const;
  double fp_rate_thresholded() const;
  double se_fp_strict() const;
  double se_fp_thresholded() const;
  double mean_pair_iou() const { return iou_.mean(); }
  double se_pair_iou() const { return iou_.std_error(); }
  /// Averaged over crops, two per pair.
  double mean_object_coverage() const { return coverage_.mean(); }
  double se_object_coverage() const { return coverage_.std_error(); }

  /// Throws InvariantViolation when a field leaves its documented range.
  void check_invariants() const;

 private:
  std::uint64_t n_pairs_ = 0;
  std::uint64_t fp_strict_ = 0;
  std::uint64_t fp_tau_ = 0;
  RunningMoments iou_;
  RunningMoments coverage_;
};

inline constexpr double kDefaultTau = 0.05;

/// Object coverage of a crop: intersection / object area.
double object_coverage(const Rect& crop, const Rect& object);

/// Throws EmptyStream on an empty span.
PairStats aggregate(std::span<const PairSample> pairs, const Rect& object_box,
                    double tau = kDefaultTau);

}  // namespace ccrop
