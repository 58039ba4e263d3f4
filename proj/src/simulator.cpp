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

#include "ccrop/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "ccrop/errors.hpp"
#include "ccrop/parallel.hpp"
#include "text_util.hpp"

namespace ccrop {

namespace {

// Stream roles; every random draw in a run is keyed by (role, scene, index).
constexpr std::uint64_t kHeatmapRole = 0x68656174;
constexpr std::uint64_t kPairRole = 0x70616972;
constexpr std::uint64_t kOracleRole = 0x6f726163;
constexpr std::uint64_t kSceneGenRole = 0x7363656e;

// Pairs per independently seeded block in compare_samplers.
constexpr std::size_t kBlockPairs = 8192;

std::uint64_t stream_for(std::uint64_t role, std::size_t scene, std::uint64_t index) {
  return derive_stream_id(derive_stream_id(role, scene), index);
}

void check_crop(const Rect& r) {
  if (!r.valid()) throw InvariantViolation("sampler produced invalid crop " + to_string(r));
}

}  // namespace

SharpnessSchedule::SharpnessSchedule() : points_{{0.0, 0.0}, {1.0, 5.0}} {}

SharpnessSchedule::SharpnessSchedule(std::vector<std::pair<double, double>> breakpoints)
    : points_(std::move(breakpoints)) {
  if (points_.empty()) throw InvalidConfig("sharpness schedule needs at least one breakpoint");
  for (std::size_t i = 0; i < points_.size(); ++i) {
    const auto [t, v] = points_[i];
    if (!(t >= 0.0 && t <= 1.0) || !(std::isfinite(v) && v >= 0.0)) {
      throw InvalidConfig("sharpness breakpoint needs progress in [0,1] and value >= 0");
    }
    if (i > 0 && !(t > points_[i - 1].first)) {
      throw InvalidConfig("sharpness breakpoints must be strictly increasing in progress");
    }
  }
}

double SharpnessSchedule::at(double progress) const {
  if (progress <= points_.front().first) return points_.front().second;
  if (progress >= points_.back().first) return points_.back().second;
  const auto hi = std::upper_bound(points_.begin(), points_.end(), progress,
                                   [](double p, const auto& bp) { return p < bp.first; });
  const auto lo = std::prev(hi);
  const double t = (progress - lo->first) / (hi->first - lo->first);
  return lo->second + t * (hi->second - lo->second);
}

void SceneSpec::validate() const {
  require_valid(object_box, "object box of scene '" + id + "'");
  if (heatmap_rows < 2 || heatmap_cols < 2) {
    throw InvalidConfig("scene '" + id + "' grid must be at least 2x2");
  }
  if (!(std::isfinite(noise_level) && noise_level >= 0.0)) {
    throw InvalidConfig("scene '" + id + "' noise must be >= 0");
  }
}

Heatmap synth_heatmap(RngStream& rng, const SceneSpec& scene, double progress) {
  scene.validate();
  const double signal = scene.sharpness.at(std::clamp(progress, 0.0, 1.0));
  const auto rows = static_cast<double>(scene.heatmap_rows);
  const auto cols = static_cast<double>(scene.heatmap_cols);
  Heatmap raw(scene.heatmap_rows, scene.heatmap_cols);
  for (std::size_t r = 0; r < scene.heatmap_rows; ++r) {
    for (std::size_t c = 0; c < scene.heatmap_cols; ++c) {
      const Rect cell{static_cast<double>(c) / cols, static_cast<double>(r) / rows,
                      static_cast<double>(c + 1) / cols, static_cast<double>(r + 1) / rows};
      const double covered = intersection_area(cell, scene.object_box) / cell.area();
      // One draw per cell regardless of noise level keeps stream positions fixed.
      const double noise = scene.noise_level * rng.uniform();
      raw.at(r, c) = signal * std::min(1.0, covered) + noise;
    }
  }
  return normalize(raw).map;
}

std::vector<PairSample> run_experiment(std::uint64_t master_seed, const TrainPlan& plan,
                                       const CropConfig& cfg, std::span<const SceneSpec> scenes,
                                       std::size_t pairs_per_scene_per_epoch, unsigned threads) {
  plan.validate();
  cfg.validate();
  if (pairs_per_scene_per_epoch < 1) throw InvalidConfig("pairs per scene per epoch must be >= 1");
  for (const auto& scene : scenes) scene.validate();

  const auto updates = update_epochs(plan);
  const auto epochs = static_cast<std::size_t>(plan.total_epochs);
  const std::size_t per_epoch = pairs_per_scene_per_epoch;

  std::vector<std::vector<PairSample>> per_scene(scenes.size());
  parallel_for(scenes.size(), threads, [&](std::size_t s) {
    const SceneSpec& scene = scenes[s];
    BoxStore store;
    auto& out = per_scene[s];
    out.reserve(epochs * per_epoch);
    auto next_update = updates.begin();
    SamplerKind kind = SamplerKind::RandomCrop;
    for (std::size_t e = 0; e < epochs; ++e) {
      const auto epoch = static_cast<std::int64_t>(e);
      if (next_update != updates.end() && *next_update == epoch) {
        RngStream heat_rng(master_seed, stream_for(kHeatmapRole, s, e));
        const double progress = static_cast<double>(e) / static_cast<double>(epochs);
        store.refresh(scene.id, synth_heatmap(heat_rng, scene, progress), cfg.k);
        kind = SamplerKind::ContrastiveCrop;
        ++next_update;
      }
      const Rect box = store.get(scene.id);
      RngStream rng(master_seed, stream_for(kPairRole, s, e));
      for (std::size_t p = 0; p < per_epoch; ++p) {
        PairSample pair;
        pair.crop_a = sample_crop(rng, cfg, kind, box);
        pair.crop_b = sample_crop(rng, cfg, kind, box);
        pair.epoch = epoch;
        pair.sampler_kind = kind;
        pair.scene = s;
        check_crop(pair.crop_a);
        check_crop(pair.crop_b);
        out.push_back(pair);
      }
    }
  });

  std::vector<PairSample> pairs;
  pairs.reserve(scenes.size() * epochs * per_epoch);
  for (std::size_t e = 0; e < epochs; ++e) {
    for (const auto& scene_pairs : per_scene) {
      const auto first = scene_pairs.begin() + static_cast<std::ptrdiff_t>(e * per_epoch);
      pairs.insert(pairs.end(), first, first + static_cast<std::ptrdiff_t>(per_epoch));
    }
  }
  return pairs;
}

std::string_view to_string(Arm arm) {
  switch (arm) {
    case Arm::RandomCrop:
      return "random_crop";
    case Arm::LocalizationOnly:
      return "localization_only";
    case Arm::ContrastiveCrop:
      return "contrastive_crop";
  }
  return "unknown";
}

std::vector<ArmStats> compare_samplers(std::uint64_t master_seed, const CropConfig& cfg,
                                       std::span<const SceneSpec> scenes, std::size_t n_pairs,
                                       double tau, unsigned threads) {
  cfg.validate();
  if (n_pairs < 1) throw InvalidConfig("n_pairs must be >= 1");
  for (const auto& scene : scenes) scene.validate();

  CropConfig uniform_cfg = cfg;
  uniform_cfg.alpha = 1.0;

  const std::size_t blocks = (n_pairs + kBlockPairs - 1) / kBlockPairs;
  // partial[(scene * blocks + block) * 3 + arm]
  std::vector<PairStats> partial(scenes.size() * blocks * kArms.size());
  parallel_for(scenes.size() * blocks, threads, [&](std::size_t task) {
    const std::size_t s = task / blocks;
    const std::size_t b = task % blocks;
    const Rect& object = scenes[s].object_box;
    const std::size_t count = std::min(kBlockPairs, n_pairs - b * kBlockPairs);
    const std::uint64_t stream = stream_for(kOracleRole, s, b);
    for (std::size_t a = 0; a < kArms.size(); ++a) {
      const Arm arm = kArms[a];
      const CropConfig& arm_cfg = arm == Arm::LocalizationOnly ? uniform_cfg : cfg;
      const SamplerKind kind =
          arm == Arm::RandomCrop ? SamplerKind::RandomCrop : SamplerKind::ContrastiveCrop;
      RngStream rng(master_seed, stream);
      PairStats& stats = partial[task * kArms.size() + a];
      for (std::size_t i = 0; i < count; ++i) {
        const Rect crop_a = sample_crop(rng, arm_cfg, kind, object);
        const Rect crop_b = sample_crop(rng, arm_cfg, kind, object);
        check_crop(crop_a);
        check_crop(crop_b);
        stats.add(crop_a, crop_b, object, tau);
      }
    }
  });

  std::vector<ArmStats> result;
  for (std::size_t a = 0; a < kArms.size(); ++a) {
    ArmStats arm{kArms[a], {}, std::vector<PairStats>(scenes.size())};
    for (std::size_t s = 0; s < scenes.size(); ++s) {
      for (std::size_t b = 0; b < blocks; ++b) {
        arm.per_scene[s].merge(partial[(s * blocks + b) * kArms.size() + a]);
      }
      arm.total.merge(arm.per_scene[s]);
    }
    result.push_back(std::move(arm));
  }
  return result;
}

std::vector<ArmStats> compare_scheduled(std::uint64_t master_seed, const TrainPlan& plan,
                                        const CropConfig& cfg, std::span<const SceneSpec> scenes,
                                        std::size_t pairs_per_scene_per_epoch, double tau,
                                        unsigned threads) {
  std::vector<ArmStats> result;
  for (const Arm arm : kArms) {
    TrainPlan arm_plan = plan;
    CropConfig arm_cfg = cfg;
    if (arm == Arm::RandomCrop) {
      arm_plan.update_freq = 0.0;
      arm_cfg.update_freq = 0.0;
    } else if (arm == Arm::LocalizationOnly) {
      arm_cfg.alpha = 1.0;
    }
    const auto pairs =
        run_experiment(master_seed, arm_plan, arm_cfg, scenes, pairs_per_scene_per_epoch, threads);
    ArmStats stats{arm, {}, std::vector<PairStats>(scenes.size())};
    for (const PairSample& p : pairs) {
      stats.per_scene[p.scene].add(p.crop_a, p.crop_b, scenes[p.scene].object_box, tau);
    }
    for (const auto& s : stats.per_scene) stats.total.merge(s);
    result.push_back(std::move(stats));
  }
  return result;
}

bool random_crop_can_miss(const CropConfig& cfg, const Rect& object) {
  // w = sqrt(s / r) shrinks with r until h = sqrt(s r) reaches 1 (r = 1/s),
  // after which fit_dims pins w = s; h behaves symmetrically.
  const double s = cfg.scale_min;
  const double min_w = std::sqrt(s / std::min(cfg.ratio_max, 1.0 / s));
  const double min_h = std::sqrt(s * std::max(cfg.ratio_min, s));
  return object.x0 > min_w || 1.0 - object.x1 > min_w || object.y0 > min_h ||
         1.0 - object.y1 > min_h;
}

std::vector<SceneSpec> random_scenes(std::uint64_t seed, std::size_t count, double area_min,
                                     double area_max, std::size_t grid, double noise_level) {
  if (!(area_min > 0.0 && area_min <= area_max && area_max <= 0.5)) {
    throw InvalidConfig("object area range must satisfy 0 < min <= max <= 0.5");
  }
  RngStream rng(seed, kSceneGenRole);
  std::vector<SceneSpec> scenes;
  scenes.reserve(count);
  const double log_lo = std::log(0.5);
  const double log_hi = std::log(2.0);
  for (std::size_t i = 0; i < count; ++i) {
    const double area = rng.uniform(area_min, area_max);
    const double aspect = std::exp(rng.uniform(log_lo, log_hi));
    const double h = std::sqrt(area * aspect);
    const double w = std::sqrt(area / aspect);
    const double x0 = rng.uniform() * (1.0 - w);
    const double y0 = rng.uniform() * (1.0 - h);
    SceneSpec scene;
    char id[32];
    std::snprintf(id, sizeof id, "scene%03zu", i);
    scene.id = id;
    scene.object_box = Rect{x0, y0, std::min(1.0, x0 + w), std::min(1.0, y0 + h)};
    scene.heatmap_rows = grid;
    scene.heatmap_cols = grid;
    scene.noise_level = noise_level;
    scene.validate();
    scenes.push_back(std::move(scene));
  }
  return scenes;
}

namespace {

std::vector<double> parse_numbers(std::string_view value, std::size_t expected, int line_no,
                                  std::string_view key) {
  std::vector<double> out;
  for (auto tok : detail::split_ws(value)) {
    const auto v = detail::parse_double(tok);
    if (!v || !std::isfinite(*v)) {
      throw ParseError("bad number '" + std::string(tok) + "' for " + std::string(key), line_no);
    }
    out.push_back(*v);
  }
  if (out.size() != expected) {
    throw ParseError(std::string(key) + " expects " + std::to_string(expected) + " numbers",
                     line_no);
  }
  return out;
}

SharpnessSchedule parse_sharpness(std::string_view value, int line_no) {
  std::vector<std::pair<double, double>> points;
  for (auto tok : detail::split_ws(value)) {
    const auto colon = tok.find(':');
    const auto t = colon == std::string_view::npos ? std::nullopt : detail::parse_double(tok.substr(0, colon));
    const auto v = colon == std::string_view::npos ? std::nullopt : detail::parse_double(tok.substr(colon + 1));
    if (!t || !v) throw ParseError("sharpness breakpoints are progress:value pairs", line_no);
    points.emplace_back(*t, *v);
  }
  try {
    return SharpnessSchedule(std::move(points));
  } catch (const InvalidConfig& e) {
    throw ParseError(e.what(), line_no);
  }
}

}  // namespace

std::vector<SceneSpec> parse_scenes(std::istream& in) {
  std::vector<SceneSpec> scenes;
  std::map<std::string, int> seen_keys;
  bool have_object = false;
  int header_line = 0;
  auto finish = [&] {
    if (scenes.empty()) return;
    if (!have_object) throw ParseError("scene '" + scenes.back().id + "' has no object", header_line);
    try {
      scenes.back().validate();
    } catch (const InputError& e) {
      throw ParseError(e.what(), header_line);
    }
  };

  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto body = detail::strip_comment(line);
    if (body.empty()) continue;
    if (body.front() == '[') {
      if (body.back() != ']') throw ParseError("unterminated scene header", line_no);
      const auto inner = detail::split_ws(body.substr(1, body.size() - 2));
      if (inner.size() != 2 || inner[0] != "scene") {
        throw ParseError("scene header must be [scene <id>]", line_no);
      }
      finish();
      for (const auto& s : scenes) {
        if (s.id == inner[1]) throw ParseError("duplicate scene id '" + s.id + "'", line_no);
      }
      SceneSpec scene;
      scene.id = std::string(inner[1]);
      scenes.push_back(std::move(scene));
      seen_keys.clear();
      have_object = false;
      header_line = line_no;
      continue;
    }
    const auto eq = body.find('=');
    if (eq == std::string_view::npos) throw ParseError("expected key = value", line_no);
    if (scenes.empty()) throw ParseError("field before first [scene <id>] header", line_no);
    const std::string key(detail::trim(body.substr(0, eq)));
    const auto value = detail::trim(body.substr(eq + 1));
    if (seen_keys.count(key) != 0) throw ParseError("duplicate key '" + key + "'", line_no);
    seen_keys[key] = line_no;
    SceneSpec& scene = scenes.back();
    if (key == "object") {
      const auto v = parse_numbers(value, 4, line_no, key);
      scene.object_box = Rect{v[0], v[1], v[2], v[3]};
      have_object = true;
    } else if (key == "grid") {
      const auto tokens = detail::split_ws(value);
      const auto r = tokens.size() == 2 ? detail::parse_u64(tokens[0]) : std::nullopt;
      const auto c = tokens.size() == 2 ? detail::parse_u64(tokens[1]) : std::nullopt;
      if (!r || !c) throw ParseError("grid expects two integers", line_no);
      scene.heatmap_rows = *r;
      scene.heatmap_cols = *c;
    } else if (key == "noise") {
      scene.noise_level = parse_numbers(value, 1, line_no, key)[0];
    } else if (key == "sharpness") {
      scene.sharpness = parse_sharpness(value, line_no);
    } else {
      throw ParseError("unknown scene key '" + key + "'", line_no);
    }
  }
  finish();
  return scenes;
}

std::vector<SceneSpec> parse_scenes(const std::string& text) {
  std::istringstream in(text);
  return parse_scenes(in);
}

std::vector<SceneSpec> load_scenes(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open scene file '" + path + "'");
  return parse_scenes(in);
}

std::string format_scenes(std::span<const SceneSpec> scenes) {
  std::string out;
  for (const auto& scene : scenes) {
    if (!out.empty()) out += '\n';
    const Rect& b = scene.object_box;
    out += "[scene " + scene.id + "]\n";
    out += "object = " + detail::format_g(b.x0, 17) + " " + detail::format_g(b.y0, 17) + " " +
           detail::format_g(b.x1, 17) + " " + detail::format_g(b.y1, 17) + "\n";
    out += "grid = " + std::to_string(scene.heatmap_rows) + " " +
           std::to_string(scene.heatmap_cols) + "\n";
    out += "noise = " + detail::format_g(scene.noise_level, 17) + "\n";
    out += "sharpness =";
    for (const auto& [t, v] : scene.sharpness.breakpoints()) {
      out += " " + detail::format_g(t, 17) + ":" + detail::format_g(v, 17);
    }
    out += "\n";
  }
  return out;
}

}  // namespace ccrop
