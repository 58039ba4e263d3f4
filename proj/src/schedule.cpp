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

#include "ccrop/schedule.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "ccrop/errors.hpp"
#include "text_util.hpp"

namespace ccrop {

void TrainPlan::validate() const {
  if (total_epochs < 1) {
    throw InvalidConfig("total_epochs must be >= 1, got " + std::to_string(total_epochs));
  }
  if (!(update_freq >= 0.0 && update_freq <= 0.5)) {
    throw InvalidConfig("update_freq must lie in [0, 0.5], got " + detail::format_g(update_freq, 9));
  }
}

std::vector<std::int64_t> update_epochs(const TrainPlan& plan) {
  plan.validate();
  std::vector<std::int64_t> epochs;
  if (plan.update_freq == 0.0) return epochs;
  // The epsilon absorbs representation error in f (0.2 * 500 etc.).
  constexpr double kEps = 1e-9;
  const auto marks = static_cast<std::int64_t>(std::floor(1.0 / plan.update_freq + kEps));
  const auto total = static_cast<double>(plan.total_epochs);
  for (std::int64_t i = 1; i <= marks; ++i) {
    const auto epoch = static_cast<std::int64_t>(
        std::floor(static_cast<double>(i) * plan.update_freq * total + 0.5 + kEps));
    if (epoch < 1 || epoch > plan.total_epochs - 1) continue;
    if (!epochs.empty() && epoch <= epochs.back()) continue;
    epochs.push_back(epoch);
  }
  return epochs;
}

SamplerKind sampler_for_epoch(const TrainPlan& plan, std::int64_t epoch) {
  if (epoch < 0 || epoch >= plan.total_epochs) {
    throw InputError("epoch " + std::to_string(epoch) + " outside [0, " +
                     std::to_string(plan.total_epochs) + ")");
  }
  const auto updates = update_epochs(plan);
  if (updates.empty() || epoch < updates.front()) return SamplerKind::RandomCrop;
  return SamplerKind::ContrastiveCrop;
}

namespace {

void require_id(const std::string& id) {
  if (id.empty() || id.find_first_of(" \t\r\n#") != std::string::npos) {
    throw InputError("sample id must be non-empty without whitespace or '#': '" + id + "'");
  }
}

}  // namespace

Rect BoxStore::get(const std::string& sample_id) const {
  const auto it = boxes_.find(sample_id);
  return it == boxes_.end() ? Rect::unit() : it->second;
}

void BoxStore::set(const std::string& sample_id, const Rect& box) {
  require_id(sample_id);
  require_valid(box, "box for '" + sample_id + "'");
  boxes_[sample_id] = box;
}

const Rect& BoxStore::refresh(const std::string& sample_id, const Heatmap& m, double k) {
  if (!(k >= 0.0 && k <= 1.0)) throw InvalidConfig("k must lie in [0, 1]");
  set(sample_id, localize(normalize(m).map, k));
  return boxes_.at(sample_id);
}

std::string BoxStore::snapshot() const {
  std::string out;
  for (const auto& [id, r] : boxes_) {
    out += id;
    for (double v : {r.x0, r.y0, r.x1, r.y1}) {
      out += ' ';
      out += detail::format_g(v, 17);
    }
    out += '\n';
  }
  return out;
}

void BoxStore::save(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write snapshot '" + path + "'");
  out << snapshot();
}

BoxStore BoxStore::parse_snapshot(const std::string& text) {
  BoxStore store;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  std::string previous;
  while (std::getline(in, line)) {
    ++line_no;
    const auto body = detail::strip_comment(line);
    if (body.empty()) continue;
    const auto tokens = detail::split_ws(body);
    if (tokens.size() != 5) throw ParseError("expected \"id x0 y0 x1 y1\"", line_no);
    std::string id(tokens[0]);
    if (!previous.empty() && id <= previous) {
      throw ParseError("ids must be unique and sorted, '" + id + "' after '" + previous + "'",
                       line_no);
    }
    double v[4];
    for (int i = 0; i < 4; ++i) {
      const auto parsed = detail::parse_double(tokens[static_cast<std::size_t>(i) + 1]);
      if (!parsed) throw ParseError("not a number: '" + std::string(tokens[i + 1]) + "'", line_no);
      v[i] = *parsed;
    }
    const Rect r{v[0], v[1], v[2], v[3]};
    if (!r.valid()) throw ParseError("invalid rect " + to_string(r), line_no);
    store.boxes_[id] = r;
    previous = std::move(id);
  }
  return store;
}

BoxStore BoxStore::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open snapshot '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_snapshot(buf.str());
}

}  // namespace ccrop
