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

// Command-line front end: sampling, localization, schedules, simulations and
// parameter sweeps. Tabular output is CSV (LF line endings).

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ccrop/config.hpp"
#include "ccrop/errors.hpp"
#include "ccrop/heatmap.hpp"
#include "ccrop/sampling.hpp"
#include "ccrop/schedule.hpp"
#include "ccrop/simulator.hpp"
#include "ccrop/sweep.hpp"

namespace {

constexpr int kExitBadInput = 2;
constexpr int kExitInternal = 3;

struct GlobalOptions {
  std::uint64_t seed = 0;
  std::string config_path;
  std::vector<std::string> overrides;
  std::string out_path;
  unsigned threads = 1;
};

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

ccrop::RunConfig resolve_config(const GlobalOptions& g) {
  std::map<std::string, std::string> pairs;
  if (!g.config_path.empty()) {
    std::ifstream in(g.config_path);
    if (!in) throw ccrop::InputError("cannot open config file '" + g.config_path + "'");
    pairs = ccrop::read_config_pairs(in);
  }
  for (const auto& kv : g.overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw ccrop::InvalidConfig("--set expects key=value, got '" + kv + "'");
    pairs[kv.substr(0, eq)] = kv.substr(eq + 1);
  }
  return ccrop::config_from_pairs(pairs);
}

void emit(const GlobalOptions& g, const std::string& text) {
  if (g.out_path.empty()) {
    std::cout << text << std::flush;
    return;
  }
  std::ofstream out(g.out_path, std::ios::binary);
  if (!out) throw ccrop::InputError("cannot write '" + g.out_path + "'");
  out << text;
}

ccrop::Rect parse_box(const std::string& text) {
  std::vector<double> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      v.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ccrop::InvalidRect("--box expects x0,y0,x1,y1, got '" + text + "'");
    }
  }
  if (v.size() != 4) throw ccrop::InvalidRect("--box expects x0,y0,x1,y1, got '" + text + "'");
  const ccrop::Rect box{v[0], v[1], v[2], v[3]};
  ccrop::require_valid(box, "--box");
  return box;
}

std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> grid;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      grid.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ccrop::InvalidConfig("bad grid value '" + item + "'");
    }
  }
  return grid;
}

struct SceneSource {
  std::string scene_file;
  std::size_t random_count = 20;
  double area_min = 0.05;
  double area_max = 0.3;
  double noise = 0.1;
  std::size_t grid = 16;

  std::vector<ccrop::SceneSpec> load(std::uint64_t seed) const {
    if (!scene_file.empty()) return ccrop::load_scenes(scene_file);
    return ccrop::random_scenes(seed, random_count, area_min, area_max, grid, noise);
  }

  void add_options(CLI::App* cmd) {
    cmd->add_option("--scenes", scene_file, "Scene file; random scenes are generated when omitted");
    cmd->add_option("--random-scenes", random_count, "Number of random scenes")->check(CLI::PositiveNumber);
    cmd->add_option("--area-min", area_min, "Smallest object area fraction for random scenes");
    cmd->add_option("--area-max", area_max, "Largest object area fraction for random scenes");
    cmd->add_option("--noise", noise, "Heatmap noise level for random scenes");
    cmd->add_option("--grid", grid, "Heatmap grid size for random scenes");
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ContrastiveCrop view sampling and Monte-Carlo simulation"};
  app.require_subcommand(1);
  app.fallthrough();
  GlobalOptions g;
  app.add_option("--seed", g.seed, "Master seed");
  app.add_option("--config", g.config_path, "Config file (key = value per line)");
  app.add_option("--set", g.overrides, "Override a config key, key=value (repeatable)")
      ->expected(1)
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  app.add_option("--out", g.out_path, "Write output here instead of stdout");
  app.add_option("--threads", g.threads, "Worker threads (speed only; results never change)")
      ->check(CLI::PositiveNumber);

  // sample
  auto* sample = app.add_subcommand("sample", "Emit N crops as CSV");
  std::size_t sample_n = 10;
  std::string sampler = "contrastive";
  std::string box_text = "0,0,1,1";
  std::uint64_t stream_id = 0;
  sample->add_option("-n,--count", sample_n, "Number of crops");
  sample->add_option("--sampler", sampler, "random or contrastive");
  sample->add_option("--box", box_text, "Localization box x0,y0,x1,y1");
  sample->add_option("--stream", stream_id, "Stream id");

  // localize
  auto* loc = app.add_subcommand("localize", "Heatmap file -> localization box");
  std::string heatmap_path;
  std::optional<double> loc_k;
  loc->add_option("heatmap", heatmap_path, "Heatmap text file")->required();
  loc->add_option("--k", loc_k, "Activation threshold (defaults to the config's k)");

  // schedule
  auto* sched = app.add_subcommand("schedule", "Print box update epochs, one per line");

  // simulate
  auto* sim = app.add_subcommand("simulate", "Scenes + plan -> per-arm PairStats CSV");
  SceneSource sim_scenes;
  std::size_t sim_pairs = 4;
  double sim_tau = ccrop::kDefaultTau;
  bool oracle = false;
  sim_scenes.add_options(sim);
  sim->add_option("--pairs", sim_pairs, "Pairs per scene per epoch (with --oracle-boxes: per scene)");
  sim->add_option("--tau", sim_tau, "Coverage threshold for the thresholded FP rate");
  sim->add_flag("--oracle-boxes", oracle, "Use ground-truth boxes instead of the training schedule");

  // sweep
  auto* sw = app.add_subcommand("sweep", "Sweep k, alpha or freq; CSV table");
  SceneSource sw_scenes;
  std::string axis_name;
  std::string grid_text;
  ccrop::SweepOptions sw_opts;
  sw->add_option("--axis", axis_name, "k, alpha or freq")->required();
  sw->add_option("--values", grid_text, "Comma-separated grid values")->required();
  sw_scenes.add_options(sw);
  sw->add_option("--pairs", sw_opts.pairs_per_scene_per_epoch, "Pairs per scene per epoch");
  sw->add_option("--tau", sw_opts.tau, "Coverage threshold for the thresholded FP rate");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitBadInput;
  }

  try {
    const ccrop::RunConfig cfg = resolve_config(g);
    if (*sample) {
      const auto kind = ccrop::parse_sampler_kind(sampler);
      const auto crops = ccrop::sample_crops(g.seed, stream_id, cfg.crop, kind, parse_box(box_text), sample_n);
      std::string out = "index,x0,y0,x1,y1\n";
      for (std::size_t i = 0; i < crops.size(); ++i) {
        const auto& r = crops[i];
        out += std::to_string(i) + "," + fmt17(r.x0) + "," + fmt17(r.y0) + "," + fmt17(r.x1) + "," + fmt17(r.y1) + "\n";
      }
      emit(g, out);
    } else if (*loc) {
      const double k = loc_k.value_or(cfg.crop.k);
      if (!(k >= 0.0 && k <= 1.0)) throw ccrop::InvalidConfig("k must lie in [0, 1]");
      const auto norm = ccrop::normalize(ccrop::load_heatmap(heatmap_path));
      const auto box = ccrop::localize(norm.map, k);
      emit(g, "x0,y0,x1,y1,degenerate\n" + fmt17(box.x0) + "," + fmt17(box.y0) + "," +
                  fmt17(box.x1) + "," + fmt17(box.y1) + "," + (norm.degenerate ? "1" : "0") + "\n");
    } else if (*sched) {
      std::string out;
      for (auto e : ccrop::update_epochs(cfg.plan)) out += std::to_string(e) + "\n";
      emit(g, out);
    } else if (*sim) {
      const auto scenes = sim_scenes.load(g.seed);
      if (scenes.empty()) throw ccrop::InvalidConfig("no scenes");
      const auto arms = oracle ? ccrop::compare_samplers(g.seed, cfg.crop, scenes, sim_pairs, sim_tau, g.threads)
                               : ccrop::compare_scheduled(g.seed, cfg.plan, cfg.crop, scenes, sim_pairs, sim_tau, g.threads);
      std::vector<ccrop::CsvRow> rows;
      for (std::size_t s = 0; s < scenes.size(); ++s) {
        for (const auto& arm : arms) {
          rows.push_back(ccrop::make_csv_row("scene", static_cast<double>(s), arm.arm, arm.per_scene[s], g.seed));
        }
      }
      for (const auto& arm : arms) {
        arm.total.check_invariants();
        rows.push_back(ccrop::make_csv_row("all", 0.0, arm.arm, arm.total, g.seed));
      }
      emit(g, ccrop::write_csv(rows));
    } else if (*sw) {
      const auto axis = ccrop::parse_axis(axis_name);
      const auto grid = parse_grid(grid_text);
      ccrop::validate_grid(axis, grid, cfg.crop, cfg.plan);
      const auto scenes = sw_scenes.load(g.seed);
      sw_opts.threads = g.threads;
      const auto table = ccrop::sweep(axis, grid, cfg.crop, cfg.plan, scenes, g.seed, sw_opts);
      emit(g, ccrop::write_csv(ccrop::sweep_rows(axis, table, g.seed)));
    }
  } catch (const ccrop::InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const ccrop::InvariantViolation& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return 0;
}
