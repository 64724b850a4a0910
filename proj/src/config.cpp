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

#include "gam/config.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>

#include "gam/error.hpp"
#include "gam/format.hpp"

namespace gam {

namespace {

double need_double(std::string_view key, std::string_view value) {
  auto v = parse_double(value);
  if (!v || !std::isfinite(*v)) {
    throw InputError("config key '" + std::string(key) + "': not a number: '" +
                     std::string(value) + "'");
  }
  return *v;
}

int need_int(std::string_view key, std::string_view value) {
  auto v = parse_int(value);
  if (!v || *v < -2147483647LL || *v > 2147483647LL) {
    throw InputError("config key '" + std::string(key) + "': not an integer: '" +
                     std::string(value) + "'");
  }
  return static_cast<int>(*v);
}

void require_positive(const char* key, double v) {
  if (!(v > 0.0)) throw InputError(std::string("config key '") + key + "' must be positive");
}

}  // namespace

void Config::validate() const {
  require_positive("screen_width_mm", screen_width_mm);
  require_positive("screen_height_mm", screen_height_mm);
  require_positive("viewer_distance_mm", viewer_distance_mm);
  require_positive("gaze_hz", gaze_hz);
  require_positive("ivt_velocity_threshold", ivt_velocity_threshold);
  require_positive("min_fixation_ms", min_fixation_ms);
  require_positive("max_gap_ms", max_gap_ms);
  require_positive("grid_w", grid_w);
  require_positive("grid_h", grid_h);
  if (!(alpha > 0.0 && alpha < 1.0)) throw InputError("config key 'alpha' must lie in (0, 1)");
}

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = {
      "screen_width_mm", "screen_height_mm", "viewer_distance_mm",
      "gaze_hz",         "ivt_velocity_threshold",
      "min_fixation_ms", "max_gap_ms",     "alpha",
      "grid_w",          "grid_h",         "heatmap_unit"};
  return keys;
}

void set_config_value(Config& c, std::string_view key, std::string_view value) {
  value = trim(value);
  if (key == "screen_width_mm") c.screen_width_mm = need_double(key, value);
  else if (key == "screen_height_mm") c.screen_height_mm = need_double(key, value);
  else if (key == "viewer_distance_mm") c.viewer_distance_mm = need_double(key, value);
  else if (key == "gaze_hz") c.gaze_hz = need_double(key, value);
  else if (key == "ivt_velocity_threshold") c.ivt_velocity_threshold = need_double(key, value);
  else if (key == "min_fixation_ms") c.min_fixation_ms = need_double(key, value);
  else if (key == "max_gap_ms") c.max_gap_ms = need_double(key, value);
  else if (key == "alpha") c.alpha = need_double(key, value);
  else if (key == "grid_w") c.grid_w = need_int(key, value);
  else if (key == "grid_h") c.grid_h = need_int(key, value);
  else if (key == "heatmap_unit") {
    if (value == "sample") c.heatmap_unit = HeatmapUnit::kSample;
    else if (value == "fixation") c.heatmap_unit = HeatmapUnit::kFixation;
    else throw InputError("config key 'heatmap_unit' must be 'sample' or 'fixation'");
  } else {
    throw InputError("unknown config key '" + std::string(key) + "'");
  }
}

std::string get_config_value(const Config& c, std::string_view key) {
  if (key == "screen_width_mm") return fmt_g9(c.screen_width_mm);
  if (key == "screen_height_mm") return fmt_g9(c.screen_height_mm);
  if (key == "viewer_distance_mm") return fmt_g9(c.viewer_distance_mm);
  if (key == "gaze_hz") return fmt_g9(c.gaze_hz);
  if (key == "ivt_velocity_threshold") return fmt_g9(c.ivt_velocity_threshold);
  if (key == "min_fixation_ms") return fmt_g9(c.min_fixation_ms);
  if (key == "max_gap_ms") return fmt_g9(c.max_gap_ms);
  if (key == "alpha") return fmt_g9(c.alpha);
  if (key == "grid_w") return std::to_string(c.grid_w);
  if (key == "grid_h") return std::to_string(c.grid_h);
  if (key == "heatmap_unit") return c.heatmap_unit == HeatmapUnit::kSample ? "sample" : "fixation";
  throw InputError("unknown config key '" + std::string(key) + "'");
}

Config parse_config(std::string_view text, const std::string& source) {
  Config c;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw InputError(source, line_no, "expected 'key = value'");
    const auto key = trim(line.substr(0, eq));
    try {
      set_config_value(c, key, line.substr(eq + 1));
    } catch (const InputError& e) {
      throw InputError(source, line_no, e.what());
    }
  }
  c.validate();
  return c;
}

std::string serialize_config(const Config& c) {
  std::string out;
  for (const auto& key : config_keys()) out += key + " = " + get_config_value(c, key) + "\n";
  return out;
}

void apply_env_overrides(Config& c, const EnvLookup& lookup) {
  for (const auto& key : config_keys()) {
    std::string name = "GAM_";
    for (char ch : key) name += static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
    if (auto v = lookup(name)) {
      try {
        set_config_value(c, key, *v);
      } catch (const InputError& e) {
        throw InputError("environment " + name + ": " + e.what());
      }
    }
  }
  c.validate();
}

void apply_env_overrides(Config& c) {
  apply_env_overrides(c, [](const std::string& name) -> std::optional<std::string> {
    if (const char* v = std::getenv(name.c_str())) return std::string(v);
    return std::nullopt;
  });
}

}  // namespace gam
