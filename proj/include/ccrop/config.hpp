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

#include <iosfwd>
#include <map>
#include <string>

#include "ccrop/sampling.hpp"
#include "ccrop/schedule.hpp"

namespace ccrop {

/// Everything a config file can set.
struct RunConfig {
  CropConfig crop;
  TrainPlan plan;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Applies key/value overrides on top of the defaults and validates the
/// result. Keys: scale_min scale_max ratio_min ratio_max k alpha update_freq
/// total_epochs. Unknown keys and unparsable values throw InvalidConfig.
RunConfig config_from_pairs(const std::map<std::string, std::string>& pairs);

/// "key = value" per line; '#' starts a comment; duplicate keys are errors.
/// Returns the raw pairs without interpreting them.
std::map<std::string, std::string> read_config_pairs(std::istream& in);

RunConfig parse_config(std::istream& in);
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);
std::string format_config(const RunConfig& cfg);

}  // namespace ccrop
