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
#include <span>
#include <string>
#include <utility>

namespace ccrop {

/// Axis-aligned box in normalized image coordinates, [x0,x1) x [y0,y1).
/// A valid Rect satisfies 0 <= x0 < x1 <= 1 and 0 <= y0 < y1 <= 1.
struct Rect {
  double x0 = 0.0;
  double y0 = 0.0;
  double x1 = 1.0;
  double y1 = 1.0;

  static constexpr Rect unit() { return Rect{0.0, 0.0, 1.0, 1.0}; }

  /// Builds a rect from a center and extents; does not clamp.
  static Rect from_center(double cx, double cy, double h, double w) {
    return Rect{cx - w / 2.0, cy - h / 2.0, cx + w / 2.0, cy + h / 2.0};
  }

  double width() const { return x1 - x0; }
  double height() const { return y1 - y0; }
  double area() const { return width() * height(); }
  double center_x() const { return (x0 + x1) / 2.0; }
  double center_y() const { return (y0 + y1) / 2.0; }

  bool valid() const;
  bool contains_point(double x, double y) const { return x >= x0 && x <= x1 && y >= y0 && y <= y1; }
  /// True when `inner` lies entirely inside this rect (closed comparison).
  bool contains(const Rect& inner) const {
    return inner.x0 >= x0 && inner.y0 >= y0 && inner.x1 <= x1 && inner.y1 <= y1;
  }

  friend bool operator==(const Rect&, const Rect&) = default;
};

/// Throws InvalidRect naming `what` if `r` is not a valid normalized rect.
void require_valid(const Rect& r, const std::string& what = "rect");

std::string to_string(const Rect& r);

/// Cell-index box on a heatmap grid; rows [row0,row1), cols [col0,col1).
struct GridIndexBox {
  std::size_t row0 = 0;
  std::size_t col0 = 0;
  std::size_t row1 = 0;
  std::size_t col1 = 0;

  friend bool operator==(const GridIndexBox&, const GridIndexBox&) = default;
};

/// (row, col) of a grid cell.
using GridCell = std::pair<std::size_t, std::size_t>;

double intersection_area(const Rect& a, const Rect& b);
double iou(const Rect& a, const Rect& b);

/// Smallest box containing every active cell. Throws EmptyActivation when
/// `active` is empty and InvalidRect when a cell lies outside the grid.
GridIndexBox rectangular_closure(std::span<const GridCell> active, std::size_t grid_rows,
                                 std::size_t grid_cols);

/// Maps a cell box to the normalized extent of the cells it covers.
Rect grid_box_to_rect(const GridIndexBox& box, std::size_t grid_rows, std::size_t grid_cols);

}  // namespace ccrop
