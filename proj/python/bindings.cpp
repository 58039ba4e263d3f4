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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "ccrop/config.hpp"
#include "ccrop/errors.hpp"
#include "ccrop/geometry.hpp"
#include "ccrop/heatmap.hpp"
#include "ccrop/metrics.hpp"
#include "ccrop/sampling.hpp"
#include "ccrop/schedule.hpp"
#include "ccrop/simulator.hpp"
#include "ccrop/sweep.hpp"

namespace py = pybind11;
using namespace ccrop;

namespace {

using RectTuple = std::tuple<double, double, double, double>;

Rect to_rect(const RectTuple& t) {
  const auto [x0, y0, x1, y1] = t;
  return Rect{x0, y0, x1, y1};
}

RectTuple to_tuple(const Rect& r) { return {r.x0, r.y0, r.x1, r.y1}; }

std::string value_text(const py::handle& value) {
  if (py::isinstance<py::str>(value)) return value.cast<std::string>();
  if (py::isinstance<py::bool_>(value)) return py::repr(value).cast<std::string>();
  return py::str(value).cast<std::string>();
}

RunConfig run_config_from_dict(const py::dict& d) {
  std::map<std::string, std::string> pairs;
  for (const auto& [key, value] : d) pairs[py::str(key).cast<std::string>()] = value_text(value);
  return config_from_pairs(pairs);
}

CropConfig crop_config(const py::object& cfg) {
  if (cfg.is_none()) return CropConfig{};
  return run_config_from_dict(cfg.cast<py::dict>()).crop;
}

py::dict to_dict(const RunConfig& cfg) {
  py::dict d;
  d["scale_min"] = cfg.crop.scale_min;
  d["scale_max"] = cfg.crop.scale_max;
  d["ratio_min"] = cfg.crop.ratio_min;
  d["ratio_max"] = cfg.crop.ratio_max;
  d["k"] = cfg.crop.k;
  d["alpha"] = cfg.crop.alpha;
  d["update_freq"] = cfg.crop.update_freq;
  d["total_epochs"] = cfg.plan.total_epochs;
  return d;
}

Heatmap to_heatmap(const std::vector<std::vector<double>>& rows) {
  if (rows.empty() || rows.front().empty()) throw ShapeMismatch("heatmap must have at least one cell");
  std::vector<double> values;
  for (const auto& row : rows) {
    if (row.size() != rows.front().size()) throw ShapeMismatch("heatmap rows differ in length");
    values.insert(values.end(), row.begin(), row.end());
  }
  return Heatmap(rows.size(), rows.front().size(), std::move(values));
}

std::vector<std::vector<double>> to_rows(const Heatmap& m) {
  std::vector<std::vector<double>> rows(m.rows(), std::vector<double>(m.cols()));
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) rows[r][c] = m.at(r, c);
  return rows;
}

py::list arm_stats_list(const std::vector<ArmStats>& arms) {
  py::list out;
  for (const auto& a : arms) {
    py::dict d;
    d["arm"] = std::string(to_string(a.arm));
    d["total"] = a.total;
    d["per_scene"] = a.per_scene;
    out.append(d);
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "ContrastiveCrop view sampling and Monte-Carlo harness.";

  auto input_error = py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<InvariantViolation>(m, "InvariantViolation", PyExc_RuntimeError);
  (void)input_error;

  m.def("iou", [](const RectTuple& a, const RectTuple& b) { return iou(to_rect(a), to_rect(b)); });
  m.def("intersection_area", [](const RectTuple& a, const RectTuple& b) {
    return intersection_area(to_rect(a), to_rect(b));
  });

  m.def("validate_config", [](const py::dict& d) { return to_dict(run_config_from_dict(d)); },
        py::arg("config"),
        "Validates a config mapping with the config-file rules and returns it with defaults filled in.");
  m.def("default_config", [] { return to_dict(RunConfig{}); });
  m.def("format_config", [](const py::dict& d) { return format_config(run_config_from_dict(d)); });
  m.def("parse_config", [](const std::string& text) { return to_dict(parse_config(text)); });

  m.def(
      "sample_crops",
      [](std::uint64_t seed, std::size_t n, const std::string& sampler, const RectTuple& box,
         std::uint64_t stream, const py::object& config) {
        const auto cfg = crop_config(config);
        const auto crops = sample_crops(seed, stream, cfg, parse_sampler_kind(sampler), to_rect(box), n);
        std::vector<RectTuple> out;
        out.reserve(crops.size());
        for (const auto& c : crops) out.push_back(to_tuple(c));
        return out;
      },
      py::arg("seed"), py::arg("n"), py::arg("sampler") = "contrastive",
      py::arg("box") = RectTuple{0.0, 0.0, 1.0, 1.0}, py::arg("stream") = 0,
      py::arg("config") = py::none());

  m.def("normalize", [](const std::vector<std::vector<double>>& rows) {
    const auto n = normalize(to_heatmap(rows));
    return py::make_tuple(to_rows(n.map), n.degenerate);
  });
  m.def(
      "localize",
      [](const std::vector<std::vector<double>>& rows, double k) {
        return to_tuple(localize(to_heatmap(rows), k));
      },
      py::arg("heatmap"), py::arg("k") = CropConfig{}.k);
  m.def("parse_heatmap", [](const std::string& text) { return to_rows(parse_heatmap(text)); });

  m.def(
      "update_epochs",
      [](std::int64_t total_epochs, double update_freq) {
        return update_epochs(TrainPlan{total_epochs, update_freq});
      },
      py::arg("total_epochs"), py::arg("update_freq"));
  m.def(
      "sampler_for_epoch",
      [](std::int64_t total_epochs, double update_freq, std::int64_t epoch) {
        return std::string(to_string(sampler_for_epoch(TrainPlan{total_epochs, update_freq}, epoch)));
      },
      py::arg("total_epochs"), py::arg("update_freq"), py::arg("epoch"));

  py::class_<BoxStore>(m, "BoxStore")
      .def(py::init<>())
      .def("get", [](const BoxStore& s, const std::string& id) { return to_tuple(s.get(id)); })
      .def("set", [](BoxStore& s, const std::string& id, const RectTuple& box) { s.set(id, to_rect(box)); })
      .def("refresh",
           [](BoxStore& s, const std::string& id, const std::vector<std::vector<double>>& rows, double k) {
             return to_tuple(s.refresh(id, to_heatmap(rows), k));
           })
      .def("snapshot", &BoxStore::snapshot)
      .def_static("parse_snapshot", &BoxStore::parse_snapshot)
      .def("__len__", &BoxStore::size);

  py::class_<PairStats>(m, "PairStats")
      .def_property_readonly("n_pairs", &PairStats::n_pairs)
      .def_property_readonly("fp_strict_count", &PairStats::fp_strict_count)
      .def_property_readonly("fp_tau_count", &PairStats::fp_tau_count)
      .def_property_readonly("fp_rate_strict", &PairStats::fp_rate_strict)
      .def_property_readonly("fp_rate_thresholded", &PairStats::fp_rate_thresholded)
      .def_property_readonly("mean_pair_iou", &PairStats::mean_pair_iou)
      .def_property_readonly("se_pair_iou", &PairStats::se_pair_iou)
      .def_property_readonly("mean_object_coverage", &PairStats::mean_object_coverage)
      .def_property_readonly("se_object_coverage", &PairStats::se_object_coverage);

  py::class_<SceneSpec>(m, "SceneSpec")
      .def(py::init([](std::string id, const RectTuple& box, std::size_t grid, double noise) {
             SceneSpec s;
             s.id = std::move(id);
             s.object_box = to_rect(box);
             s.heatmap_rows = s.heatmap_cols = grid;
             s.noise_level = noise;
             s.validate();
             return s;
           }),
           py::arg("id"), py::arg("object_box"), py::arg("grid") = 16, py::arg("noise") = 0.0)
      .def_readonly("id", &SceneSpec::id)
      .def_property_readonly("object_box", [](const SceneSpec& s) { return to_tuple(s.object_box); })
      .def_readonly("heatmap_rows", &SceneSpec::heatmap_rows)
      .def_readonly("heatmap_cols", &SceneSpec::heatmap_cols)
      .def_readonly("noise_level", &SceneSpec::noise_level);

  m.def("random_scenes", &random_scenes, py::arg("seed"), py::arg("count"), py::arg("area_min"),
        py::arg("area_max"), py::arg("grid") = 16, py::arg("noise") = 0.1);
  m.def("parse_scenes", py::overload_cast<const std::string&>(&parse_scenes));
  m.def("format_scenes", [](const std::vector<SceneSpec>& s) { return format_scenes(s); });
  m.def(
      "random_crop_can_miss",
      [](const RectTuple& object, const py::object& config) {
        return random_crop_can_miss(crop_config(config), to_rect(object));
      },
      py::arg("object_box"), py::arg("config") = py::none());

  m.def(
      "compare_samplers",
      [](std::uint64_t seed, const std::vector<SceneSpec>& scenes, std::size_t n_pairs,
         const py::object& config, double tau, unsigned threads) {
        std::vector<ArmStats> arms;
        {
          py::gil_scoped_release release;
          arms = compare_samplers(seed, crop_config(config), scenes, n_pairs, tau, threads);
        }
        return arm_stats_list(arms);
      },
      py::arg("seed"), py::arg("scenes"), py::arg("n_pairs"), py::arg("config") = py::none(),
      py::arg("tau") = kDefaultTau, py::arg("threads") = 1);

  m.def(
      "sweep_csv",
      [](const std::string& axis, const std::vector<double>& values, const std::vector<SceneSpec>& scenes,
         std::uint64_t seed, const py::object& config, std::size_t pairs, double tau, unsigned threads) {
        const RunConfig cfg = config.is_none() ? RunConfig{} : run_config_from_dict(config.cast<py::dict>());
        const auto ax = parse_axis(axis);
        SweepOptions options;
        options.pairs_per_scene_per_epoch = pairs;
        options.tau = tau;
        options.threads = threads;
        std::string csv;
        {
          py::gil_scoped_release release;
          const auto table = sweep(ax, values, cfg.crop, cfg.plan, scenes, seed, options);
          csv = write_csv(sweep_rows(ax, table, seed));
        }
        return csv;
      },
      py::arg("axis"), py::arg("values"), py::arg("scenes"), py::arg("seed"),
      py::arg("config") = py::none(), py::arg("pairs") = SweepOptions{}.pairs_per_scene_per_epoch,
      py::arg("tau") = kDefaultTau, py::arg("threads") = 1);
}
