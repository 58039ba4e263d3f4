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
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "ccrop/geometry.hpp"

namespace ccrop {

/// Row-major grid of finite, non-negative activations.
class Heatmap {
 public:
  Heatmap(std::size_t rows, std::size_t cols, double fill = 0.0);
  Heatmap(std::size_t rows, std::size_t cols, std::vector<double> values);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return values_.size(); }

  double& at(std::size_t r, std::size_t c) { return values_[r * cols_ + c]; }
  double at(std::size_t r, std::size_t c) const { return values_[r * cols_ + c]; }

  std::span<const double> values() const { return values_; }
  std::span<double> values() { return values_; }

  bool same_shape(const Heatmap& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_;
  }

  friend bool operator==(const Heatmap&, const Heatmap&) = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> values_;
};

struct NormalizedHeatmap {
  Heatmap map;
  /// Set when the input was constant; `map` is then all zeros.
  bool degenerate = false;
};

/// Channel-wise sum of a feature stack.
Heatmap reduce_features(std::span<const Heatmap> channels);

/// Per-map min-max rescaling to [0, 1].
NormalizedHeatmap normalize(const Heatmap& m);

/// Cells with value strictly greater than `k`.
std::vector<GridCell> active_cells(const Heatmap& m, double k);

/// Box of the cells above `k`, or the unit rect when none is.
Rect localize(const Heatmap& m, double k);

/// Text format: "rows cols" on the first line, then `rows` lines of `cols`
/// whitespace-separated decimals. Blank lines and '#' comments are ignored.
Heatmap parse_heatmap(std::istream& in);
Heatmap parse_heatmap(const std::string& text);
Heatmap load_heatmap(const std::string& path);
std::string format_heatmap(const Heatmap& m);

}  // namespace ccrop
