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

#include "ccrop/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "ccrop/errors.hpp"

namespace ccrop {

bool Rect::valid() const {
  const bool finite = std::isfinite(x0) && std::isfinite(y0) && std::isfinite(x1) && std::isfinite(y1);
  return finite && 0.0 <= x0 && x0 < x1 && x1 <= 1.0 && 0.0 <= y0 && y0 < y1 && y1 <= 1.0;
}

void require_valid(const Rect& r, const std::string& what) {
  if (!r.valid()) throw InvalidRect("invalid " + what + " " + to_string(r));
}

std::string to_string(const Rect& r) {
  char buf[128];
  std::snprintf(buf, sizeof buf, "[%.17g, %.17g, %.17g, %.17g]", r.x0, r.y0, r.x1, r.y1);
  return buf;
}

double intersection_area(const Rect& a, const Rect& b) {
  const double ox = std::min(a.x1, b.x1) - std::max(a.x0, b.x0);
  const double oy = std::min(a.y1, b.y1) - std::max(a.y0, b.y0);
  return std::max(0.0, ox) * std::max(0.0, oy);
}

double iou(const Rect& a, const Rect& b) {
  const double inter = intersection_area(a, b);
  if (inter <= 0.0) return 0.0;
  if (a == b) return 1.0;
  return inter / (a.area() + b.area() - inter);
}

GridIndexBox rectangular_closure(std::span<const GridCell> active, std::size_t grid_rows,
                                 std::size_t grid_cols) {
  if (active.empty()) throw EmptyActivation();
  GridIndexBox box{grid_rows, grid_cols, 0, 0};
  for (const auto& [r, c] : active) {
    if (r >= grid_rows || c >= grid_cols) {
      throw InvalidRect("active cell (" + std::to_string(r) + "," + std::to_string(c) +
                        ") outside " + std::to_string(grid_rows) + "x" +
                        std::to_string(grid_cols) + " grid");
    }
    box.row0 = std::min(box.row0, r);
    box.col0 = std::min(box.col0, c);
    box.row1 = std::max(box.row1, r + 1);
    box.col1 = std::max(box.col1, c + 1);
  }
  return box;
}

Rect grid_box_to_rect(const GridIndexBox& box, std::size_t grid_rows, std::size_t grid_cols) {
  if (!(box.row0 < box.row1 && box.row1 <= grid_rows && box.col0 < box.col1 &&
        box.col1 <= grid_cols)) {
    throw InvalidRect("grid box outside " + std::to_string(grid_rows) + "x" +
                      std::to_string(grid_cols) + " grid");
  }
  const auto rows = static_cast<double>(grid_rows);
  const auto cols = static_cast<double>(grid_cols);
  return Rect{static_cast<double>(box.col0) / cols, static_cast<double>(box.row0) / rows,
              static_cast<double>(box.col1) / cols, static_cast<double>(box.row1) / rows};
}

}  // namespace ccrop
