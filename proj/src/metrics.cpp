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

#include "ccrop/metrics.hpp"

#include <cmath>

#include "ccrop/errors.hpp"

namespace ccrop {

void RunningMoments::add(double x) {
  ++n_;
  const double delta = x - mean_;
  mean_ += delta / static_cast<double>(n_);
  m2_ += delta * (x - mean_);
}

void RunningMoments::merge(const RunningMoments& other) {
  if (other.n_ == 0) return;
  if (n_ == 0) {
    *this = other;
    return;
  }
  const auto na = static_cast<double>(n_);
  const auto nb = static_cast<double>(other.n_);
  const double n = na + nb;
  const double delta = other.mean_ - mean_;
  mean_ += delta * nb / n;
  m2_ += other.m2_ + delta * delta * na * nb / n;
  n_ += other.n_;
}

double RunningMoments::variance() const {
  return n_ < 2 ? 0.0 : std::max(0.0, m2_) / static_cast<double>(n_ - 1);
}

double RunningMoments::std_error() const {
  return n_ == 0 ? 0.0 : std::sqrt(variance() / static_cast<double>(n_));
}

double object_coverage(const Rect& crop, const Rect& object) {
  return std::min(1.0, intersection_area(crop, object) / object.area());
}

void PairStats::add(const Rect& crop_a, const Rect& crop_b, const Rect& object, double tau) {
  const double cov_a = object_coverage(crop_a, object);
  const double cov_b = object_coverage(crop_b, object);
  ++n_pairs_;
  if (cov_a == 0.0 || cov_b == 0.0) ++fp_strict_;
  if (cov_a < tau || cov_b < tau) ++fp_tau_;
  iou_.add(iou(crop_a, crop_b));
  coverage_.add(cov_a);
  coverage_.add(cov_b);
}

void PairStats::merge(const PairStats& other) {
  n_pairs_ += other.n_pairs_;
  fp_strict_ += other.fp_strict_;
  fp_tau_ += other.fp_tau_;
  iou_.merge(other.iou_);
  coverage_.merge(other.coverage_);
}

namespace {

double rate(std::uint64_t hits, std::uint64_t n) {
  return n == 0 ? 0.0 : static_cast<double>(hits) / static_cast<double>(n);
}

double binomial_se(std::uint64_t hits, std::uint64_t n) {
  if (n == 0) return 0.0;
  const double p = rate(hits, n);
  return std::sqrt(p * (1.0 - p) / static_cast<double>(n));
}

}  // namespace

double PairStats::fp_rate_strict() const { return rate(fp_strict_, n_pairs_); }
double PairStats::fp_rate_thresholded() const { return rate(fp_tau_, n_pairs_); }
double PairStats::se_fp_strict() const { return binomial_se(fp_strict_, n_pairs_); }
double PairStats::se_fp_thresholded() const { return binomial_se(fp_tau_, n_pairs_); }

void PairStats::check_invariants() const {
  constexpr double kSlack = 1e-12;
  auto in_unit = [](double v) { return v >= -kSlack && v <= 1.0 + kSlack; };
  if (n_pairs_ < 1) throw InvariantViolation("PairStats has no pairs");
  if (fp_strict_ > n_pairs_ || fp_tau_ > n_pairs_) throw InvariantViolation("FP count exceeds pairs");
  if (!in_unit(mean_pair_iou()) || !in_unit(mean_object_coverage())) {
    throw InvariantViolation("PairStats mean outside [0, 1]");
  }
  if (!(se_pair_iou() >= 0.0) || !(se_object_coverage() >= 0.0)) {
    throw InvariantViolation("PairStats standard error is negative or NaN");
  }
}

PairStats aggregate(std::span<const PairSample> pairs, const Rect& object_box, double tau) {
  if (pairs.empty()) throw EmptyStream();
  require_valid(object_box, "object box");
  PairStats stats;
  for (const PairSample& p : pairs) stats.add(p.crop_a, p.crop_b, object_box, tau);
  return stats;
}

}  // namespace ccrop
