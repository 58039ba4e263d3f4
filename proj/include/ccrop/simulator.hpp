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
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ccrop/geometry.hpp"
#include "ccrop/heatmap.hpp"
#include "ccrop/metrics.hpp"
#include "ccrop/rng.hpp"
#include "ccrop/sampling.hpp"
#include "ccrop/schedule.hpp"

namespace ccrop {

/// Piecewise-linear map from training progress in [0,1] to heatmap signal
/// strength; constant beyond the first and last breakpoints.
class SharpnessSchedule {
 public:
  /// Linear ramp from 0 at progress 0 to 5 at progress 1.
  SharpnessSchedule();
  explicit SharpnessSchedule(std::vector<std::pair<double, double>> breakpoints);

  static SharpnessSchedule constant(double value) { return SharpnessSchedule({{0.0, value}}); }

  double at(double progress) const;
  const std::vector<std::pair<double, double>>& breakpoints() const { return points_; }

  friend bool operator==(const SharpnessSchedule&, const SharpnessSchedule&) = default;

 private:
  std::vector<std::pair<double, double>> points_;
};

/// Synthetic image with one ground-truth object.
struct SceneSpec {
  std::string id = "scene";
  Rect object_box = Rect::unit();
  std::size_t heatmap_rows = 16;
  std::size_t heatmap_cols = 16;
  double noise_level = 0.0;
  SharpnessSchedule sharpness;

  void validate() const;

  friend bool operator==(const SceneSpec&, const SceneSpec&) = default;
};

/// Normalized synthetic heatmap: per cell, sharpness(progress) times the
/// fraction of the cell covered by the object, plus Uniform[0, noise_level].
Heatmap synth_heatmap(RngStream& rng, const SceneSpec& scene, double progress);

/// Scheduled run: boxes start as the whole image, are refreshed from
/// synthetic heatmaps (progress = epoch / T) at each update epoch, and
/// `pairs_per_scene_per_epoch` pairs are drawn per scene per epoch with the
/// sampler the schedule selects. Output is epoch-major, then scene, then
/// pair. The result depends on `master_seed` only, never on `threads`.
std::vector<PairSample> run_experiment(std::uint64_t master_seed, const TrainPlan& plan,
                                       const CropConfig& cfg, std::span<const SceneSpec> scenes,
                                       std::size_t pairs_per_scene_per_epoch, unsigned threads = 1);

/// The three ablation arms: plain RandomCrop, localization with a uniform
/// center (alpha = 1), and full ContrastiveCrop.
enum class Arm { RandomCrop, LocalizationOnly, ContrastiveCrop };
inline constexpr std::array<Arm, 3> kArms{Arm::RandomCrop, Arm::LocalizationOnly,
                                          Arm::ContrastiveCrop};

std::string_view to_string(Arm arm);

struct ArmStats {
  Arm arm;
  PairStats total;
  std::vector<PairStats> per_scene;
};

/// Compares the arms with B = ground-truth object box, `n_pairs` pairs per
/// scene. All arms share the same random streams.
std::vector<ArmStats> compare_samplers(std::uint64_t master_seed, const CropConfig& cfg,
                                       std::span<const SceneSpec> scenes, std::size_t n_pairs,
                                       double tau = kDefaultTau, unsigned threads = 1);

/// Compares the arms under the training schedule, with boxes localized from
/// synthetic heatmaps. The RandomCrop arm runs with update_freq = 0.
std::vector<ArmStats> compare_scheduled(std::uint64_t master_seed, const TrainPlan& plan,
                                        const CropConfig& cfg, std::span<const SceneSpec> scenes,
                                        std::size_t pairs_per_scene_per_epoch,
                                        double tau = kDefaultTau, unsigned threads = 1);

/// True when RandomCrop under `cfg` misses `object` with positive
/// probability, i.e. the smallest crop the config can produce fits in one of
/// the margins between the object and the image border. When this is false
/// every RandomCrop view overlaps the object.
bool random_crop_can_miss(const CropConfig& cfg, const Rect& object);

/// `count` scenes with object area fraction uniform in [area_min, area_max],
/// aspect ratio log-uniform in [1/2, 2] and uniformly random placement.
std::vector<SceneSpec> random_scenes(std::uint64_t seed, std::size_t count, double area_min,
                                     double area_max, std::size_t grid = 16,
                                     double noise_level = 0.1);

/// Scene file format; see docs/file-formats.md.
std::vector<SceneSpec> parse_scenes(std::istream& in);
std::vector<SceneSpec> parse_scenes(const std::string& text);
std::vector<SceneSpec> load_scenes(const std::string& path);
std::string format_scenes(std::span<const SceneSpec> scenes);

}  // namespace ccrop
