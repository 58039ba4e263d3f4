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

#include "ccrop/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "ccrop/errors.hpp"

namespace ccrop {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

double standard_normal(RngStream& rng) {
  const double radius = std::sqrt(-2.0 * std::log(rng.uniform_open()));
  return radius * std::cos(2.0 * std::numbers::pi * rng.uniform());
}

}  // namespace

void CropConfig::validate() const {
  if (!(std::isfinite(alpha) && alpha > 0.0)) {
    throw InvalidAlpha("alpha must be > 0, got " + num(alpha));
  }
  if (!(std::isfinite(scale_min) && std::isfinite(scale_max) && scale_min > 0.0 &&
        scale_min <= scale_max && scale_max <= 1.0)) {
    throw InvalidConfig("scale range must satisfy 0 < scale_min <= scale_max <= 1, got [" +
                        num(scale_min) + ", " + num(scale_max) + "]");
  }
  if (!(std::isfinite(ratio_min) && std::isfinite(ratio_max) && ratio_min > 0.0 &&
        ratio_min <= ratio_max)) {
    throw InvalidConfig("ratio range must satisfy 0 < ratio_min <= ratio_max, got [" +
                        num(ratio_min) + ", " + num(ratio_max) + "]");
  }
  if (!(k >= 0.0 && k <= 1.0)) throw InvalidConfig("k must lie in [0, 1], got " + num(k));
  if (!(update_freq >= 0.0 && update_freq <= 0.5)) {
    throw InvalidConfig("update_freq must lie in [0, 0.5], got " + num(update_freq));
  }
}

std::string_view to_string(SamplerKind kind) {
  return kind == SamplerKind::RandomCrop ? "RandomCrop" : "ContrastiveCrop";
}

double log_gamma_variate(RngStream& rng, double shape) {
  if (shape < 1.0) {
    // Gamma(a) = Gamma(a + 1) * U^(1/a)
    const double boost = std::log(rng.uniform_open()) / shape;
    return log_gamma_variate(rng, shape + 1.0) + boost;
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    const double x = standard_normal(rng);
    double v = 1.0 + c * x;
    if (v <= 0.0) continue;
    v = v * v * v;
    const double log_u = std::log(rng.uniform_open());
    if (log_u < 0.5 * x * x + d - d * v + d * std::log(v)) return std::log(d) + std::log(v);
  }
}

double beta_symmetric(RngStream& rng, double alpha) {
  if (!(std::isfinite(alpha) && alpha > 0.0)) {
    throw InvalidAlpha("alpha must be > 0, got " + num(alpha));
  }
  RngStream local(rng.next_u64(), 0);
  const double log_x = log_gamma_variate(local, alpha);
  const double log_y = log_gamma_variate(local, alpha);
  // X / (X + Y) without leaving log space.
  return 1.0 / (1.0 + std::exp(log_y - log_x));
}

ScaleRatio sample_scale_ratio(RngStream& rng, const CropConfig& cfg) {
  const double a = rng.uniform();
  const double b = rng.uniform();
  const double scale =
      cfg.scale_min == cfg.scale_max ? cfg.scale_min : cfg.scale_min + (cfg.scale_max - cfg.scale_min) * a;
  double ratio = cfg.ratio_min;
  if (cfg.ratio_min != cfg.ratio_max) {
    const double lo = std::log(cfg.ratio_min);
    const double hi = std::log(cfg.ratio_max);
    ratio = std::clamp(std::exp(lo + (hi - lo) * b), cfg.ratio_min, cfg.ratio_max);
  }
  return {scale, ratio};
}

CropDims crop_dims(double scale, double ratio) {
  return {std::sqrt(scale * ratio), std::sqrt(scale / ratio)};
}

CropDims fit_dims(CropDims dims, double scale) {
  if (dims.h > 1.0) return {1.0, std::min(1.0, scale)};
  if (dims.w > 1.0) return {std::min(1.0, scale), 1.0};
  return dims;
}

namespace {

// Start of a span of length `len` placed at `start`, pushed back inside [0,1].
std::pair<double, double> fit_span(double start, double len) {
  const double lo = std::clamp(start, 0.0, std::max(0.0, 1.0 - len));
  return {lo, std::min(1.0, lo + len)};
}

}  // namespace

Rect place_within_image(CropDims dims, double a, double b) {
  const auto [x0, x1] = fit_span(a * (1.0 - dims.w), dims.w);
  const auto [y0, y1] = fit_span(b * (1.0 - dims.h), dims.h);
  return Rect{x0, y0, x1, y1};
}

Rect place_in_box(CropDims dims, const Rect& box, double u, double v) {
  const double cx = box.x0 + (box.x1 - box.x0) * u;
  const double cy = box.y0 + (box.y1 - box.y0) * v;
  const auto [x0, x1] = fit_span(cx - dims.w / 2.0, dims.w);
  const auto [y0, y1] = fit_span(cy - dims.h / 2.0, dims.h);
  return Rect{x0, y0, x1, y1};
}

Rect random_crop(RngStream& rng, const CropConfig& cfg) {
  const auto [scale, ratio] = sample_scale_ratio(rng, cfg);
  const CropDims dims = fit_dims(crop_dims(scale, ratio), scale);
  const double a = rng.uniform();
  const double b = rng.uniform();
  return place_within_image(dims, a, b);
}

Rect contrastive_crop(RngStream& rng, const CropConfig& cfg, const Rect& box) {
  const auto [scale, ratio] = sample_scale_ratio(rng, cfg);
  const CropDims dims = fit_dims(crop_dims(scale, ratio), scale);
  const double u = beta_symmetric(rng, cfg.alpha);
  const double v = beta_symmetric(rng, cfg.alpha);
  return place_in_box(dims, box, u, v);
}

Rect sample_crop(RngStream& rng, const CropConfig& cfg, SamplerKind kind, const Rect& box) {
  return kind == SamplerKind::RandomCrop ? random_crop(rng, cfg) : contrastive_crop(rng, cfg, box);
}

std::vector<Rect> sample_crops(std::uint64_t seed, std::uint64_t stream_id, const CropConfig& cfg,
                               SamplerKind kind, const Rect& box, std::size_t n) {
  cfg.validate();
  require_valid(box, "localization box");
  RngStream rng(seed, stream_id);
  std::vector<Rect> crops;
  crops.reserve(n);
  for (std::size_t i = 0; i < n; ++i) crops.push_back(sample_crop(rng, cfg, kind, box));
  return crops;
}

SamplerKind parse_sampler_kind(std::string_view name) {
  if (name == "random" || name == "RandomCrop") return SamplerKind::RandomCrop;
  if (name == "contrastive" || name == "ContrastiveCrop") return SamplerKind::ContrastiveCrop;
  throw InvalidConfig("unknown sampler '" + std::string(name) + "' (expected random or contrastive)");
}

}  // namespace ccrop
