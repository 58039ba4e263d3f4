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

#include "ccrop/heatmap.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>

#include "ccrop/errors.hpp"
#include "text_util.hpp"

namespace ccrop {

Heatmap::Heatmap(std::size_t rows, std::size_t cols, double fill)
    : Heatmap(rows, cols, std::vector<double>(rows * cols, fill)) {}

Heatmap::Heatmap(std::size_t rows, std::size_t cols, std::vector<double> values)
    : rows_(rows), cols_(cols), values_(std::move(values)) {
  if (rows_ == 0 || cols_ == 0) throw ShapeMismatch("heatmap must be at least 1x1");
  if (values_.size() != rows_ * cols_) {
    throw ShapeMismatch("heatmap has " + std::to_string(values_.size()) + " values, expected " +
                        std::to_string(rows_ * cols_));
  }
  for (double v : values_) {
    if (!std::isfinite(v) || v < 0.0) throw InputError("heatmap values must be finite and >= 0");
  }
}

Heatmap reduce_features(std::span<const Heatmap> channels) {
  if (channels.empty()) throw EmptyStack();
  Heatmap sum = channels.front();
  for (const Heatmap& ch : channels.subspan(1)) {
    if (!ch.same_shape(sum)) {
      throw ShapeMismatch("channel is " + std::to_string(ch.rows()) + "x" +
                          std::to_string(ch.cols()) + ", expected " + std::to_string(sum.rows()) +
                          "x" + std::to_string(sum.cols()));
    }
    auto out = sum.values();
    auto in = ch.values();
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += in[i];
  }
  return sum;
}

NormalizedHeatmap normalize(const Heatmap& m) {
  const auto [lo_it, hi_it] = std::minmax_element(m.values().begin(), m.values().end());
  const double lo = *lo_it;
  const double hi = *hi_it;
  if (!(hi > lo)) return {Heatmap(m.rows(), m.cols(), 0.0), true};
  Heatmap out = m;
  const double range = hi - lo;
  for (double& v : out.values()) v = std::clamp((v - lo) / range, 0.0, 1.0);
  return {std::move(out), false};
}

std::vector<GridCell> active_cells(const Heatmap& m, double k) {
  std::vector<GridCell> cells;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (m.at(r, c) > k) cells.emplace_back(r, c);
    }
  }
  return cells;
}

Rect localize(const Heatmap& m, double k) {
  const auto cells = active_cells(m, k);
  if (cells.empty()) return Rect::unit();
  return grid_box_to_rect(rectangular_closure(cells, m.rows(), m.cols()), m.rows(), m.cols());
}

Heatmap parse_heatmap(std::istream& in) {
  std::string line;
  int line_no = 0;
  std::size_t rows = 0;
  std::size_t cols = 0;
  bool have_header = false;
  std::vector<double> values;
  std::size_t rows_read = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto body = detail::strip_comment(line);
    if (body.empty()) continue;
    const auto tokens = detail::split_ws(body);
    if (!have_header) {
      const auto r = tokens.size() == 2 ? detail::parse_u64(tokens[0]) : std::nullopt;
      const auto c = tokens.size() == 2 ? detail::parse_u64(tokens[1]) : std::nullopt;
      if (!r || !c || *r == 0 || *c == 0) {
        throw ParseError("expected header \"rows cols\" with positive integers", line_no);
      }
      rows = *r;
      cols = *c;
      have_header = true;
      values.reserve(rows * cols);
      continue;
    }
    if (rows_read == rows) throw ParseError("more than " + std::to_string(rows) + " rows", line_no);
    if (tokens.size() != cols) {
      throw ParseError("expected " + std::to_string(cols) + " values, got " +
                           std::to_string(tokens.size()),
                       line_no);
    }
    for (auto tok : tokens) {
      const auto v = detail::parse_double(tok);
      if (!v) throw ParseError("not a number: '" + std::string(tok) + "'", line_no);
      if (!std::isfinite(*v)) throw ParseError("non-finite value", line_no);
      if (*v < 0.0) throw ParseError("negative value", line_no);
      values.push_back(*v);
    }
    ++rows_read;
  }
  if (!have_header) throw ParseError("empty heatmap file");
  if (rows_read != rows) {
    throw ParseError("expected " + std::to_string(rows) + " rows, got " + std::to_string(rows_read));
  }
  return Heatmap(rows, cols, std::move(values));
}

Heatmap parse_heatmap(const std::string& text) {
  std::istringstream in(text);
  return parse_heatmap(in);
}

Heatmap load_heatmap(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open heatmap file '" + path + "'");
  return parse_heatmap(in);
}

std::string format_heatmap(const Heatmap& m) {
  std::string out = std::to_string(m.rows()) + " " + std::to_string(m.cols()) + "\n";
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (c > 0) out += ' ';
      out += detail::format_g(m.at(r, c), 17);
    }
    out += '\n';
  }
  return out;
}

}  // namespace ccrop
