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

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "ccrop/geometry.hpp"
#include "ccrop/rng.hpp"

namespace ccrop {

/// Sampler hyperparameters. Defaults are the published ContrastiveCrop
/// settings: scale [0.2, 1], ratio [3/4, 4/3], k = 0.1, alpha = 0.6 and a
/// box refresh every 20% of training.
struct CropConfig {
  double scale_min = 0.2;
  double scale_max = 1.0;
  double ratio_min = 3.0 / 4.0;  // h / w
  double ratio_max = 4.0 / 3.0;
  double k = 0.1;
  double alpha = 0.6;
  double update_freq = 0.2;

  /// Throws InvalidAlpha for alpha <= 0 and InvalidConfig for anything else.
  void validate() const;

  friend bool operator==(const CropConfig&, const CropConfig&) = default;
};

enum class SamplerKind { RandomCrop, ContrastiveCrop };

std::string_view to_string(SamplerKind kind);

struct ScaleRatio {
  double scale;  // area fraction
  double ratio;  // h / w
};

struct CropDims {
  double h;
  double w;
};

/// Gamma(shape, 1) draw by Marsaglia-Tsang, returned as its natural log so
/// that tiny shapes do not underflow.
double log_gamma_variate(RngStream& rng, double shape);

/// One draw from Beta(alpha, alpha).
///
/// Consumes exactly one 64-bit word from `rng`; the word seeds a private
/// stream that absorbs the rejection steps of the gamma sampler, so callers
/// see a fixed draw count per call.
double beta_symmetric(RngStream& rng, double alpha);

/// Scale uniform on [scale_min, scale_max]; ratio log-uniform on
/// [ratio_min, ratio_max]. Consumes two words.
ScaleRatio sample_scale_ratio(RngStream& rng, const CropConfig& cfg);

/// h = sqrt(s r), w = sqrt(s / r).
CropDims crop_dims(double scale, double ratio);

/// Clamps a side longer than the image to 1 and stretches the other side so
/// that h * w == scale still holds.
CropDims fit_dims(CropDims dims, double scale);

/// Places a crop with its top-left corner at fractions (a, b) of the range of
/// positions that keep it inside the unit square.
Rect place_within_image(CropDims dims, double a, double b);

/// Centers a crop at B's (u, v) fractional position, then translates it by
/// the smallest amount that brings it inside the unit square.
Rect place_in_box(CropDims dims, const Rect& box, double u, double v);

/// Uniform crop fully inside the image.
Rect random_crop(RngStream& rng, const CropConfig& cfg);

/// Crop whose pre-translation center is drawn from Beta(alpha, alpha) on
/// each axis of `box`.
Rect contrastive_crop(RngStream& rng, const CropConfig& cfg, const Rect& box);

/// Dispatches on `kind`; `box` is ignored for RandomCrop.
Rect sample_crop(RngStream& rng, const CropConfig& cfg, SamplerKind kind, const Rect& box);

/// `n` consecutive crops from stream (seed, stream_id). This is the routine
/// behind the CLI `sample` command and the Python binding.
std::vector<Rect> sample_crops(std::uint64_t seed, std::uint64_t stream_id, const CropConfig& cfg,
                               SamplerKind kind, const Rect& box, std::size_t n);

SamplerKind parse_sampler_kind(std::string_view name);

}  // namespace ccrop
