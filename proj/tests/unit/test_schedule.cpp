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

#include <cmath>
#include <cstdio>
#include <filesystem>

#include "ccrop/errors.hpp"
#include "ccrop/schedule.hpp"

using namespace ccrop;
using Epochs = std::vector<std::int64_t>;

TEST_CASE("update_epochs examples") {
  CHECK(update_epochs({500, 0.2}) == Epochs{100, 200, 300, 400});
  CHECK(update_epochs({100, 0.5}) == Epochs{50});
  CHECK(update_epochs({100, 0.0}).empty());
  CHECK(update_epochs({10, 0.2}) == Epochs{2, 4, 6, 8});
  CHECK(update_epochs({200, 0.1}) == Epochs{20, 40, 60, 80, 100, 120, 140, 160, 180});
  CHECK(update_epochs({100, 0.3}) == Epochs{30, 60, 90});
  // Round half up: 0.5 * 5 = 2.5 -> 3.
  CHECK(update_epochs({5, 0.5}) == Epochs{3});
  // Marks that round below epoch 1 are dropped.
  CHECK(update_epochs({1, 0.5}).empty());
  CHECK(update_epochs({2, 0.2}) == Epochs{1});
}

TEST_CASE("update_epochs invariants") {
  for (std::int64_t total = 1; total <= 300; ++total) {
    for (double f : {0.01, 0.05, 0.1, 0.125, 0.2, 0.25, 0.3, 0.33, 0.4, 0.5}) {
      const auto epochs = update_epochs({total, f});
      for (std::size_t i = 0; i < epochs.size(); ++i) {
        CHECK(epochs[i] >= 1);
        CHECK(epochs[i] <= total - 1);
        if (i > 0) CHECK(epochs[i] > epochs[i - 1]);
      }
      // The f-fraction marks are round(i f T) for i = 1..floor(1/f). When f
      // divides 1 evenly the last mark is T itself and is dropped; otherwise
      // only the last mark can round up to T.
      const auto marks = static_cast<std::int64_t>(std::floor(1.0 / f + 1e-9));
      const auto count = static_cast<std::int64_t>(epochs.size());
      CHECK(count <= marks);
      if (f * static_cast<double>(total) >= 1.0) {
        const bool even = std::abs(static_cast<double>(marks) * f - 1.0) < 1e-9;
        if (even) {
          CHECK(count == marks - 1);
        } else {
          CHECK(count >= marks - 1);
        }
      }
    }
  }
}

TEST_CASE("sampler_for_epoch") {
  const TrainPlan plan{500, 0.2};
  CHECK(sampler_for_epoch(plan, 0) == SamplerKind::RandomCrop);
  CHECK(sampler_for_epoch(plan, 99) == SamplerKind::RandomCrop);
  CHECK(sampler_for_epoch(plan, 100) == SamplerKind::ContrastiveCrop);
  CHECK(sampler_for_epoch(plan, 499) == SamplerKind::ContrastiveCrop);
  for (std::int64_t e = 0; e < 100; ++e) CHECK(sampler_for_epoch({100, 0.0}, e) == SamplerKind::RandomCrop);
  CHECK_THROWS_AS(sampler_for_epoch(plan, 500), InputError);
  CHECK_THROWS_AS(sampler_for_epoch(plan, -1), InputError);
}

TEST_CASE("sampler_for_epoch is monotone") {
  for (double f : {0.1, 0.2, 0.3, 0.5}) {
    const TrainPlan plan{57, f};
    bool switched = false;
    for (std::int64_t e = 0; e < plan.total_epochs; ++e) {
      const bool contrastive = sampler_for_epoch(plan, e) == SamplerKind::ContrastiveCrop;
      CHECK((!switched || contrastive));
      switched = switched || contrastive;
    }
  }
}

TEST_CASE("TrainPlan validation") {
  CHECK_THROWS_AS(update_epochs({0, 0.2}), InvalidConfig);
  CHECK_THROWS_AS(update_epochs({10, 0.6}), InvalidConfig);
  CHECK_THROWS_AS(update_epochs({10, -0.1}), InvalidConfig);
}

TEST_CASE("BoxStore semantics") {
  BoxStore store;
  CHECK(store.get("unseen") == Rect::unit());

  store.refresh("img", Heatmap(4, 4, 0.05), 0.1);  // constant map -> fallback
  CHECK(store.get("img") == Rect::unit());

  Heatmap first(4, 4, 0.0);
  first.at(0, 0) = 1.0;
  Heatmap second(4, 4, 0.0);
  second.at(3, 3) = 1.0;
  store.refresh("a", first, 0.1);
  store.refresh("b", first, 0.1);
  store.refresh("a", second, 0.1);
  CHECK(store.get("a") == Rect{0.75, 0.75, 1.0, 1.0});
  CHECK(store.get("b") == Rect{0.0, 0.0, 0.25, 0.25});

  CHECK_THROWS_AS(store.set("bad id", Rect::unit()), InputError);
  CHECK_THROWS_AS(store.set("x", Rect{0.5, 0, 0.2, 1}), InvalidRect);
}

TEST_CASE("BoxStore snapshot") {
  BoxStore store;
  store.set("zeta", Rect{0.1, 0.2, 0.3, 0.4});
  store.set("alpha", Rect{1.0 / 3.0, 0.0, 2.0 / 3.0, 1.0});
  const std::string text = store.snapshot();
  CHECK(text.rfind("alpha ", 0) == 0);
  CHECK(BoxStore::parse_snapshot(text) == store);

  const auto path = std::filesystem::temp_directory_path() / "ccrop_snapshot_test.txt";
  store.save(path.string());
  CHECK(BoxStore::load(path.string()) == store);
  std::filesystem::remove(path);

  CHECK_THROWS_AS(BoxStore::parse_snapshot("a 0.5 0 0.2 1\n"), ParseError);
  CHECK_THROWS_AS(BoxStore::parse_snapshot("a 0 0 1\n"), ParseError);
  CHECK_THROWS_AS(BoxStore::parse_snapshot("b 0 0 1 1\na 0 0 1 1\n"), ParseError);
  CHECK_THROWS_AS(BoxStore::parse_snapshot("a 0 0 1 1\na 0 0 1 1\n"), ParseError);
  CHECK_THROWS_AS(BoxStore::parse_snapshot("a 0 0 1 x\n"), ParseError);
}
