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

#include "gam/fixation.hpp"

#include <cmath>
#include <numbers>

#include "gam/error.hpp"
#include "gam/format.hpp"

namespace gam {

double visual_angle_deg(double ax, double ay, double bx, double by, const Config& c) {
  const double d = c.viewer_distance_mm;
  const double x1 = (ax - 0.5) * c.screen_width_mm, y1 = (ay - 0.5) * c.screen_height_mm;
  const double x2 = (bx - 0.5) * c.screen_width_mm, y2 = (by - 0.5) * c.screen_height_mm;
  // Rays (x, y, d) from the eye; atan2 of |cross| and dot is stable for
  // small angles.
  const double cxp = y1 * d - d * y2;
  const double cyp = d * x2 - x1 * d;
  const double czp = x1 * y2 - y1 * x2;
  const double cross = std::sqrt(cxp * cxp + cyp * cyp + czp * czp);
  const double dot = x1 * x2 + y1 * y2 + d * d;
  return std::atan2(cross, dot) * 180.0 / std::numbers::pi;
}

double angular_velocity(const GazeSample& a, const GazeSample& b, const Config& config) {
  const double dt = b.t - a.t;
  if (!(dt > 0.0)) throw InputError("angular_velocity: non-positive time delta " + fmt_g9(dt));
  return visual_angle_deg(a.x, a.y, b.x, b.y, config) / dt;
}

std::vector<GazeSample> classify_samples(std::span<const GazeSample> samples, const Config& config) {
  std::vector<GazeSample> out(samples.begin(), samples.end());
  std::vector<std::size_t> valid;
  valid.reserve(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (samples[i].valid) valid.push_back(i);
  }
  for (auto& s : out) {
    if (s.label == Label::kUnlabeled && !s.valid) s.label = Label::kUnknown;
  }
  const std::size_t n = valid.size();
  for (std::size_t p = 0; p < n; ++p) {
    GazeSample& s = out[valid[p]];
    if (s.label != Label::kUnlabeled) continue;
    // Nearest valid neighbours with strictly different timestamps.
    std::size_t lo = p, hi = p;
    while (lo > 0 && samples[valid[lo - 1]].t >= s.t) --lo;
    while (hi + 1 < n && samples[valid[hi + 1]].t <= s.t) ++hi;
    const GazeSample* prev = lo > 0 ? &samples[valid[lo - 1]] : nullptr;
    const GazeSample* next = hi + 1 < n ? &samples[valid[hi + 1]] : nullptr;
    double v = 0.0;
    if (prev && next) v = angular_velocity(*prev, *next, config);
    else if (next) v = angular_velocity(samples[valid[p]], *next, config);
    else if (prev) v = angular_velocity(*prev, samples[valid[p]], config);
    s.label = v < config.ivt_velocity_threshold ? Label::kFixation : Label::kSaccade;
  }
  return out;
}

std::vector<Fixation> group_fixations(std::span<const GazeSample> samples, const Config& config) {
  // Both limits are inclusive up to float noise in the timestamps.
  const double max_gap = config.max_gap_ms / 1000.0 + 1e-9;
  std::vector<Fixation> out;
  std::vector<std::size_t> run;

  auto close = [&] {
    if (run.empty()) return;
    const double start = samples[run.front()].t;
    const double duration = samples[run.back()].t - start;
    if (duration > 0.0 && duration * 1000.0 >= config.min_fixation_ms - 1e-6) {
      Fixation f;
      f.k = out.size();
      f.start = start;
      f.duration = duration;
      double sx = 0.0, sy = 0.0;
      for (auto i : run) {
        sx += samples[i].x;
        sy += samples[i].y;
      }
      f.cx = sx / static_cast<double>(run.size());
      f.cy = sy / static_cast<double>(run.size());
      f.members = run;
      out.push_back(std::move(f));
    }
    run.clear();
  };

  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto& s = samples[i];
    if (!s.valid) continue;
    if (s.label == Label::kFixation) {
      if (!run.empty() && s.t - samples[run.back()].t > max_gap) close();
      run.push_back(i);
    } else if (s.label == Label::kSaccade) {
      close();
    }
  }
  close();
  return out;
}

IntervalSet fixation_union(std::span<const Fixation> fixations) {
  std::vector<Interval> raw;
  raw.reserve(fixations.size());
  for (const auto& f : fixations) raw.push_back({f.start, f.end()});
  return IntervalSet::normalize(std::move(raw));
}

}  // namespace gam
