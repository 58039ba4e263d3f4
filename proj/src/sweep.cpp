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

#include "ccrop/sweep.hpp"

#include <sstream>

#include "ccrop/errors.hpp"
#include "text_util.hpp"

namespace ccrop {

std::string_view to_string(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::K:
      return "k";
    case SweepAxis::Alpha:
      return "alpha";
    case SweepAxis::Freq:
      return "freq";
  }
  return "unknown";
}

SweepAxis parse_axis(std::string_view name) {
  if (name == "k") return SweepAxis::K;
  if (name == "alpha") return SweepAxis::Alpha;
  if (name == "freq") return SweepAxis::Freq;
  throw InvalidConfig("unknown sweep axis '" + std::string(name) + "' (expected k, alpha or freq)");
}

namespace {

std::pair<CropConfig, TrainPlan> apply(SweepAxis axis, double value, CropConfig cfg,
                                       TrainPlan plan) {
  switch (axis) {
    case SweepAxis::K:
      cfg.k = value;
      break;
    case SweepAxis::Alpha:
      cfg.alpha = value;
      break;
    case SweepAxis::Freq:
      cfg.update_freq = value;
      plan.update_freq = value;
      break;
  }
  return {cfg, plan};
}

}  // namespace

void validate_grid(SweepAxis axis, std::span<const double> grid, const CropConfig& base_cfg,
                   const TrainPlan& plan) {
  if (grid.empty()) throw InvalidConfig("sweep grid is empty");
  for (double value : grid) {
    const auto [cfg, p] = apply(axis, value, base_cfg, plan);
    cfg.validate();
    p.validate();
  }
}

std::vector<SweepPoint> sweep(SweepAxis axis, std::span<const double> grid,
                              const CropConfig& base_cfg, const TrainPlan& plan,
                              std::span<const SceneSpec> scenes, std::uint64_t seed,
                              const SweepOptions& options) {
  validate_grid(axis, grid, base_cfg, plan);
  if (scenes.empty()) throw InvalidConfig("sweep needs at least one scene");
  std::vector<SweepPoint> table;
  table.reserve(grid.size());
  for (double value : grid) {
    const auto [cfg, p] = apply(axis, value, base_cfg, plan);
    auto arms = compare_scheduled(seed, p, cfg, scenes, options.pairs_per_scene_per_epoch,
                                  options.tau, options.threads);
    for (const auto& arm : arms) arm.total.check_invariants();
    table.push_back(SweepPoint{value, {std::move(arms[0]), std::move(arms[1]), std::move(arms[2])}});
  }
  return table;
}

CsvRow make_csv_row(std::string axis_name, double axis_value, Arm arm, const PairStats& stats,
                    std::uint64_t seed) {
  CsvRow row;
  row.axis_name = std::move(axis_name);
  row.axis_value = axis_value;
  row.arm = std::string(to_string(arm));
  row.n_pairs = stats.n_pairs();
  row.fp_strict = stats.fp_rate_strict();
  row.fp_tau = stats.fp_rate_thresholded();
  row.mean_iou = stats.mean_pair_iou();
  row.se_iou = stats.se_pair_iou();
  row.mean_cov = stats.mean_object_coverage();
  row.se_cov = stats.se_object_coverage();
  row.seed = seed;
  return row;
}

std::vector<CsvRow> sweep_rows(SweepAxis axis, std::span<const SweepPoint> table,
                               std::uint64_t seed) {
  std::vector<CsvRow> rows;
  for (const auto& point : table) {
    for (const auto& arm : point.arms) {
      rows.push_back(make_csv_row(std::string(to_string(axis)), point.value, arm.arm, arm.total, seed));
    }
  }
  return rows;
}

std::string write_csv(std::span<const CsvRow> rows) {
  std::string out(kCsvHeader);
  out += '\n';
  for (const auto& r : rows) {
    out += r.axis_name;
    out += ',' + detail::format_g(r.axis_value, 9);
    out += ',' + r.arm;
    out += ',' + std::to_string(r.n_pairs);
    for (double v : {r.fp_strict, r.fp_tau, r.mean_iou, r.se_iou, r.mean_cov, r.se_cov}) {
      out += ',' + detail::format_g(v, 9);
    }
    out += ',' + std::to_string(r.seed);
    out += '\n';
  }
  return out;
}

std::vector<CsvRow> parse_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  if (!std::getline(in, line) || line != kCsvHeader) throw ParseError("missing or wrong CSV header", 1);
  ++line_no;
  std::vector<CsvRow> rows;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string_view> f;
    std::string_view rest(line);
    for (;;) {
      const auto comma = rest.find(',');
      f.push_back(rest.substr(0, comma));
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (f.size() != 11) throw ParseError("expected 11 fields, got " + std::to_string(f.size()), line_no);
    auto num = [&](std::size_t i) {
      const auto v = detail::parse_double(f[i]);
      if (!v) throw ParseError("bad number '" + std::string(f[i]) + "'", line_no);
      return *v;
    };
    auto count = [&](std::size_t i) {
      const auto v = detail::parse_u64(f[i]);
      if (!v) throw ParseError("bad integer '" + std::string(f[i]) + "'", line_no);
      return *v;
    };
    CsvRow row;
    row.axis_name = std::string(f[0]);
    row.axis_value = num(1);
    row.arm = std::string(f[2]);
    row.n_pairs = count(3);
    row.fp_strict = num(4);
    row.fp_tau = num(5);
    row.mean_iou = num(6);
    row.se_iou = num(7);
    row.mean_cov = num(8);
    row.se_cov = num(9);
    row.seed = count(10);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace ccrop
