// Copyright 2026 The GAM Authors.
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

#ifndef GAM_CONFIG_HPP_
#define GAM_CONFIG_HPP_

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace gam {

enum class HeatmapUnit { kSample, kFixation };

// Analysis parameters. Geometry defaults describe a 24" 16:9 monitor
// viewed from 65 cm.
struct Config {
  double screen_width_mm = 527.0;
  double screen_height_mm = 296.0;
  double viewer_distance_mm = 650.0;
  double gaze_hz = 120.0;
  double ivt_velocity_threshold = 30.0;  // deg/s
  double min_fixation_ms = 60.0;
  double max_gap_ms = 75.0;
  double alpha = 0.05;
  int grid_w = 64;
  int grid_h = 36;
  HeatmapUnit heatmap_unit = HeatmapUnit::kSample;

  // Throws InputError when a value is out of range.
  void validate() const;
};

// Keys accepted by the config file, in serialization order.
const std::vector<std::string>& config_keys();

// Sets one key from its textual value. Unknown keys and unparsable values
// throw InputError.
void set_config_value(Config& config, std::string_view key, std::string_view value);

std::string get_config_value(const Config& config, std::string_view key);

// Parses `key = value` lines; '#' starts a comment. The result is validated.
Config parse_config(std::string_view text, const std::string& source = "config");

std::string serialize_config(const Config& config);

using EnvLookup = std::function<std::optional<std::string>(const std::string&)>;

// Applies GAM_<KEY> overrides (key upper-cased), e.g. GAM_ALPHA=0.01.
void apply_env_overrides(Config& config, const EnvLookup& lookup);
void apply_env_overrides(Config& config);

}  // namespace gam

#endif  // GAM_CONFIG_HPP_
