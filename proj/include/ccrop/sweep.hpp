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

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ccrop/metrics.hpp"
#include "ccrop/sampling.hpp"
#include "ccrop/schedule.hpp"
#include "ccrop/simulator.hpp"

namespace ccrop {

enum class SweepAxis { K, Alpha, Freq };

std::string_view to_string(SweepAxis axis);
/// Accepts "k", "alpha" and "freq".
SweepAxis parse_axis(std::string_view name);

struct SweepPoint {
  double value;
  std::array<ArmStats, 3> arms;
};

struct SweepOptions {
  std::size_t pairs_per_scene_per_epoch = 4;
  double tau = kDefaultTau;
  unsigned threads = 1;
};

/// Throws (InvalidAlpha / InvalidConfig) if any value is out of range for
/// `axis`, or if the grid is empty.
void validate_grid(SweepAxis axis, std::span<const double> grid, const CropConfig& base_cfg,
                   const TrainPlan& plan);

/// One scheduled three-arm comparison per grid value, all with the same seed.
std::vector<SweepPoint> sweep(SweepAxis axis, std::span<const double> grid,
                              const CropConfig& base_cfg, const TrainPlan& plan,
                              std::span<const SceneSpec> scenes, std::uint64_t seed,
                              const SweepOptions& options = {});

/// One parsed (or to-be-written) line of the results CSV.
struct CsvRow {
  std::string axis_name;
  double axis_value = 0.0;
  std::string arm;
  std::uint64_t n_pairs = 0;
  double fp_strict = 0.0;
  double fp_tau = 0.0;
  double mean_iou = 0.0;
  double se_iou = 0.0;
  double mean_cov = 0.0;
  double se_cov = 0.0;
  std::uint64_t seed = 0;
};

inline constexpr std::string_view kCsvHeader =
    "axis_name,axis_value,arm,n_pairs,fp_strict,fp_tau,mean_iou,se_iou,mean_cov,se_cov,seed";

CsvRow make_csv_row(std::string axis_name, double axis_value, Arm arm, const PairStats& stats,
                    std::uint64_t seed);
std::vector<CsvRow> sweep_rows(SweepAxis axis, std::span<const SweepPoint> table,
                               std::uint64_t seed);
/// Header plus one LF-terminated line per row; decimals use %.9g.
std::string write_csv(std::span<const CsvRow> rows);
std::vector<CsvRow> parse_csv(const std::string& text);

}  // namespace ccrop
