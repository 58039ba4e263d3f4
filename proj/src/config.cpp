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

#include "ccrop/config.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "ccrop/errors.hpp"
#include "text_util.hpp"

namespace ccrop {

namespace {

double as_real(const std::string& key, const std::string& value) {
  const auto v = detail::parse_double(value);
  if (!v || std::isnan(*v)) throw InvalidConfig("key '" + key + "': not a number: '" + value + "'");
  return *v;
}

std::int64_t as_epochs(const std::string& key, const std::string& value) {
  const auto v = detail::parse_u64(value);
  if (!v || *v > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max())) {
    throw InvalidConfig("key '" + key + "': not a non-negative integer: '" + value + "'");
  }
  return static_cast<std::int64_t>(*v);
}

}  // namespace

RunConfig config_from_pairs(const std::map<std::string, std::string>& pairs) {
  RunConfig cfg;
  for (const auto& [key, value] : pairs) {
    if (key == "scale_min") {
      cfg.crop.scale_min = as_real(key, value);
    } else if (key == "scale_max") {
      cfg.crop.scale_max = as_real(key, value);
    } else if (key == "ratio_min") {
      cfg.crop.ratio_min = as_real(key, value);
    } else if (key == "ratio_max") {
      cfg.crop.ratio_max = as_real(key, value);
    } else if (key == "k") {
      cfg.crop.k = as_real(key, value);
    } else if (key == "alpha") {
      cfg.crop.alpha = as_real(key, value);
    } else if (key == "update_freq") {
      cfg.crop.update_freq = as_real(key, value);
    } else if (key == "total_epochs") {
      cfg.plan.total_epochs = as_epochs(key, value);
    } else {
      throw InvalidConfig("unknown config key '" + key + "'");
    }
  }
  cfg.plan.update_freq = cfg.crop.update_freq;
  cfg.crop.validate();
  cfg.plan.validate();
  return cfg;
}

std::map<std::string, std::string> read_config_pairs(std::istream& in) {
  std::map<std::string, std::string> pairs;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto body = detail::strip_comment(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string_view::npos) throw ParseError("expected key = value", line_no);
    std::string key(detail::trim(body.substr(0, eq)));
    std::string value(detail::trim(body.substr(eq + 1)));
    if (key.empty()) throw ParseError("empty key", line_no);
    if (!pairs.emplace(key, std::move(value)).second) {
      throw ParseError("duplicate key '" + key + "'", line_no);
    }
  }
  return pairs;
}

RunConfig parse_config(std::istream& in) { return config_from_pairs(read_config_pairs(in)); }

RunConfig parse_config(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in);
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open config file '" + path + "'");
  return parse_config(in);
}

std::string format_config(const RunConfig& cfg) {
  auto line = [](const char* key, double v) { return std::string(key) + " = " + detail::format_g(v, 17) + "\n"; };
  return line("scale_min", cfg.crop.scale_min) + line("scale_max", cfg.crop.scale_max) +
         line("ratio_min", cfg.crop.ratio_min) + line("ratio_max", cfg.crop.ratio_max) +
         line("k", cfg.crop.k) + line("alpha", cfg.crop.alpha) +
         line("update_freq", cfg.crop.update_freq) +
         "total_epochs = " + std::to_string(cfg.plan.total_epochs) + "\n";
}

}  // namespace ccrop
