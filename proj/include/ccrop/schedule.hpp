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
#include <map>
#include <string>
#include <vector>

#include "ccrop/geometry.hpp"
#include "ccrop/heatmap.hpp"
#include "ccrop/sampling.hpp"

namespace ccrop {

struct TrainPlan {
  std::int64_t total_epochs = 100;
  double update_freq = 0.2;

  void validate() const;

  friend bool operator==(const TrainPlan&, const TrainPlan&) = default;
};

/// 0-based epochs at which localization boxes are refreshed: the rounded
/// f-fraction marks round(i f T), i = 1..floor(1/f), restricted to [1, T-1].
std::vector<std::int64_t> update_epochs(const TrainPlan& plan);

/// RandomCrop before the first update (always, if there are none),
/// ContrastiveCrop from then on.
SamplerKind sampler_for_epoch(const TrainPlan& plan, std::int64_t epoch);

/// Per-sample localization boxes. Unknown ids map to the whole image.
///
/// Reads and writes are phased by the caller: refreshes happen between
/// epochs, lookups within one. The store itself does no locking.
class BoxStore {
 public:
  Rect get(const std::string& sample_id) const;
  void set(const std::string& sample_id, const Rect& box);
  /// Stores localize(normalize(m), k) for `sample_id`.
  const Rect& refresh(const std::string& sample_id, const Heatmap& m, double k);

  std::size_t size() const { return boxes_.size(); }
  const std::map<std::string, Rect>& entries() const { return boxes_; }

  /// One "id x0 y0 x1 y1" line per entry, sorted by id.
  std::string snapshot() const;
  void save(const std::string& path) const;
  static BoxStore parse_snapshot(const std::string& text);
  static BoxStore load(const std::string& path);

  friend bool operator==(const BoxStore&, const BoxStore&) = default;

 private:
  std::map<std::string, Rect> boxes_;
};

}  // namespace ccrop
