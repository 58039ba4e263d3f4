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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "ccrop/errors.hpp"
#include "ccrop/metrics.hpp"
#include "test_support.hpp"

using namespace ccrop;

TEST_CASE("full-image pairs on a full-image object") {
  std::vector<PairSample> pairs(10, PairSample{Rect::unit(), Rect::unit()});
  const auto stats = aggregate(pairs, Rect::unit());
  CHECK(stats.n_pairs() == 10);
  CHECK(stats.fp_rate_strict() == 0.0);
  CHECK(stats.fp_rate_thresholded() == 0.0);
  CHECK(stats.mean_pair_iou() == 1.0);
  CHECK(stats.mean_object_coverage() == 1.0);
  CHECK(stats.se_pair_iou() == 0.0);
  CHECK_NOTHROW(stats.check_invariants());
}

TEST_CASE("false-positive counting") {
  const Rect object{0.0, 0.0, 0.5, 0.5};
  const Rect miss{0.6, 0.6, 1.0, 1.0};
  const Rect hit{0.0, 0.0, 0.5, 0.5};
  const Rect sliver{0.49, 0.0, 1.0, 1.0};  // covers 2% of the object
  std::vector<PairSample> pairs;
  for (int i = 0; i < 50; ++i) {
    pairs.push_back({miss, miss});
    pairs.push_back({hit, hit});
  }
  auto stats = aggregate(pairs, object);
  CHECK(stats.fp_rate_strict() == 0.5);
  CHECK(stats.fp_rate_thresholded() == 0.5);
  CHECK(stats.se_fp_strict() == doctest::Approx(std::sqrt(0.25 / 100)));

  // A pair with a single missing crop is still a false positive.
  const std::vector<PairSample> one_sided{{hit, miss}, {hit, hit}};
  CHECK(aggregate(one_sided, object).fp_rate_strict() == 0.5);

  // Thin overlaps count only under the threshold definition.
  const std::vector<PairSample> thin{{sliver, hit}};
  const auto t = aggregate(thin, object, 0.05);
  CHECK(t.fp_rate_strict() == 0.0);
  CHECK(t.fp_rate_thresholded() == 1.0);
}

TEST_CASE("object coverage") {
  CHECK(object_coverage(Rect::unit(), Rect{0.2, 0.2, 0.4, 0.4}) == doctest::Approx(1.0));
  CHECK(object_coverage(Rect{0.0, 0.0, 0.3, 1.0}, Rect{0.2, 0.2, 0.4, 0.4}) == doctest::Approx(0.5));
}

TEST_CASE("aggregate rejects an empty stream") {
  CHECK_THROWS_AS(aggregate({}, Rect::unit()), EmptyStream);
}

TEST_CASE("merging partial aggregates equals one pass") {
  std::mt19937_64 gen(31);
  const Rect object{0.3, 0.3, 0.6, 0.5};
  std::vector<PairSample> pairs;
  for (int i = 0; i < 10001; ++i) pairs.push_back({testing::random_rect(gen), testing::random_rect(gen)});

  const auto whole = aggregate(pairs, object);
  for (std::size_t split : {std::size_t{1}, std::size_t{137}, std::size_t{5000}, std::size_t{10000}}) {
    auto merged = aggregate(std::span(pairs).first(split), object);
    merged.merge(aggregate(std::span(pairs).subspan(split), object));
    CHECK(merged.n_pairs() == whole.n_pairs());
    CHECK(merged.fp_strict_count() == whole.fp_strict_count());
    CHECK(merged.fp_tau_count() == whole.fp_tau_count());
    CHECK(std::abs(merged.mean_pair_iou() - whole.mean_pair_iou()) < 1e-12);
    CHECK(std::abs(merged.mean_object_coverage() - whole.mean_object_coverage()) < 1e-12);
    CHECK(std::abs(merged.se_pair_iou() - whole.se_pair_iou()) < 1e-12);
    CHECK(std::abs(merged.se_object_coverage() - whole.se_object_coverage()) < 1e-12);
  }
  PairStats empty;
  auto copy = whole;
  copy.merge(empty);
  CHECK(copy.mean_pair_iou() == whole.mean_pair_iou());
  empty.merge(whole);
  CHECK(empty.mean_pair_iou() == whole.mean_pair_iou());
}

TEST_CASE("RunningMoments against the two-pass formulas") {
  std::mt19937_64 gen(2);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> xs(5000);
  RunningMoments m;
  for (double& x : xs) {
    x = u(gen);
    m.add(x);
  }
  CHECK(m.mean() == doctest::Approx(testing::sample_mean(xs)).epsilon(1e-12));
  CHECK(m.variance() == doctest::Approx(testing::sample_variance(xs)).epsilon(1e-10));
  CHECK(m.std_error() == doctest::Approx(std::sqrt(testing::sample_variance(xs) / 5000)).epsilon(1e-10));
}
