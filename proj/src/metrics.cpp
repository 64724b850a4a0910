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

#include "gam/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gam/error.hpp"

namespace gam {

namespace {

// Frame positions within this many frames of a boundary snap forward;
// absorbs the rounding of k/120-second timestamps.
constexpr double kFrameSnap = 1e-6;

}  // namespace

FrameBoxes::FrameBoxes(const VideoMeta& video)
    : fps_(video.fps), frames_(static_cast<std::size_t>(std::max(video.n_frames, 1))) {
  for (const auto& track : video.cio_tracks) {
    for (const auto& tb : track.boxes) {
      if (tb.frame >= 0 && tb.frame < n_frames()) frames_[static_cast<std::size_t>(tb.frame)].push_back(tb.box);
    }
  }
}

int FrameBoxes::frame_of(double t) const {
  const double f = std::floor(t * fps_ + kFrameSnap);
  if (!(f > 0.0)) return 0;
  if (f >= n_frames() - 1) return n_frames() - 1;
  return static_cast<int>(f);
}

bool FrameBoxes::contains(int frame, double x, double y) const {
  for (const auto& b : boxes(frame)) {
    if (b.contains(x, y)) return true;
  }
  return false;
}

double first_cio_appearance(const VideoMeta& video) {
  if (!video.positive()) throw InputError("video '" + video.video_id + "' is not positive");
  int first = std::numeric_limits<int>::max();
  for (const auto& track : video.cio_tracks)
    for (const auto& tb : track.boxes) first = std::min(first, tb.frame);
  if (first == std::numeric_limits<int>::max()) {
    throw InputError("video '" + video.video_id + "' has no CIO boxes");
  }
  return first / video.fps;
}

std::optional<double> first_cio_hit(std::span<const Fixation> fixations,
                                    std::span<const GazeSample> samples, const VideoMeta& video) {
  // Fixations are disjoint and time-ordered, so the first member found
  // inside a box is the earliest.
  const FrameBoxes frames(video);
  for (const auto& f : fixations) {
    for (auto i : f.members) {
      const auto& s = samples[i];
      if (frames.contains(frames.frame_of(s.t), s.x, s.y)) return s.t;
    }
  }
  return std::nullopt;
}

IntervalSet cio_fixation_set(std::span<const Fixation> fixations, const VideoMeta& video) {
  const FrameBoxes frames(video);
  std::vector<Interval> raw;
  for (const auto& f : fixations) {
    const int first = frames.frame_of(f.start);
    const int last = frames.frame_of(f.end());
    for (int fr = first; fr <= last; ++fr) {
      if (!frames.contains(fr, f.cx, f.cy)) continue;
      const double lo = fr == first ? f.start : std::max(f.start, frames.frame_start(fr));
      const double hi = fr == last ? f.end() : std::min(f.end(), frames.frame_start(fr + 1));
      if (hi > lo) raw.push_back({lo, hi});
    }
  }
  return IntervalSet::normalize(std::move(raw));
}

TrialMetrics compute_trial_metrics(const Trial& trial, std::span<const Fixation> fixations,
                                   std::span<const GazeSample> samples, const VideoMeta& video) {
  if (!video.positive() || !video.crash_start_s) {
    throw InputError("trial '" + trial.trial_id + "': metrics need a positive video");
  }
  TrialMetrics m;
  m.trial_id = trial.trial_id;
  m.video_id = video.video_id;
  m.participant_id = trial.participant_id;
  m.session_index = trial.session_index;
  m.crash_start_s = *video.crash_start_s;
  m.t_b = first_cio_appearance(video);
  m.t_a = video.duration_s() - m.t_b;

  m.first_cio_hit_s = first_cio_hit(fixations, samples, video);
  if (!m.first_cio_hit_s) return m;
  const double hit = *m.first_cio_hit_s;
  m.missed_cio = false;
  m.latency = hit - m.t_b;
  m.early_attention = m.crash_start_s - hit;
  m.attended_before_crash = hit < m.crash_start_s;
  GAM_CHECK(*m.latency >= -1e-12, "trial '" + trial.trial_id + "': CIO fixated before it appeared");

  const IntervalSet fixated = fixation_union(fixations);
  if (hit > 0.0) m.rho_f_pre = fixated.intersect({0.0, hit}).total_length() / hit;

  const double d = *m.early_attention;
  if (d > 0.0) {
    const Interval window{hit, m.crash_start_s};
    const IntervalSet on_cio = cio_fixation_set(fixations, video);
    m.rho_f_d = fixated.intersect(window).total_length() / d;
    m.rho_r_d = std::min(on_cio.intersect(window).total_length() / d, *m.rho_f_d);
    if (*m.rho_f_d > 0.0) m.rho_ratio = *m.rho_r_d / *m.rho_f_d;
    GAM_CHECK(*m.rho_f_d <= 1.0 + 1e-12 && *m.rho_r_d >= 0.0,
              "trial '" + trial.trial_id + "': attention fraction out of range");
  }
  return m;
}

std::vector<std::optional<double>> instant_attention_series(std::span<const GazeSample> samples,
                                                            const VideoMeta& video) {
  const FrameBoxes frames(video);
  std::vector<std::size_t> valid(static_cast<std::size_t>(frames.n_frames()), 0);
  std::vector<std::size_t> fix(valid.size(), 0);
  for (const auto& s : samples) {
    if (!s.valid) continue;
    const auto f = static_cast<std::size_t>(frames.frame_of(s.t));
    ++valid[f];
    if (s.label == Label::kFixation) ++fix[f];
  }
  std::vector<std::optional<double>> out(valid.size());
  for (std::size_t f = 0; f < valid.size(); ++f) {
    if (valid[f] > 0) out[f] = static_cast<double>(fix[f]) / static_cast<double>(valid[f]);
  }
  return out;
}

RecallBound recall_from_counts(std::size_t successes, std::size_t total, double alpha) {
  if (total == 0) throw InputError("recall_upper_bound: no positive-video trials");
  RecallBound r;
  r.successes = successes;
  r.total = total;
  r.r_h = static_cast<double>(successes) / static_cast<double>(total);
  r.ci_half = stats::binomial_ci_half(successes, total, alpha);
  return r;
}

RecallBound recall_upper_bound(std::span<const TrialMetrics> trials, double alpha) {
  const auto successes = static_cast<std::size_t>(std::count_if(
      trials.begin(), trials.end(), [](const TrialMetrics& m) { return m.attended_before_crash; }));
  return recall_from_counts(successes, trials.size(), alpha);
}

std::map<std::string, double> video_mean_d(std::span<const TrialMetrics> trials) {
  std::map<std::string, std::pair<double, std::size_t>> acc;
  for (const auto& m : trials) {
    if (!m.early_attention) continue;
    auto& [sum, n] = acc[m.video_id];
    sum += *m.early_attention;
    ++n;
  }
  std::map<std::string, double> out;
  for (const auto& [id, sn] : acc) out[id] = sn.first / static_cast<double>(sn.second);
  return out;
}

ComparisonResult compare_with_ai(const std::map<std::string, double>& m_d, const AIReference& ai,
                                 std::span<const TrialMetrics> trials, double alpha) {
  ComparisonResult r;
  for (const auto& [id, md] : m_d) {
    auto it = ai.find(id);
    if (it == ai.end()) continue;
    r.rows.push_back({id, md, it->second, it->second - md});
    if (md > it->second) ++r.n_md_exceeding_mttc;
  }
  for (const auto& m : trials) {
    if (!m.early_attention) continue;
    auto it = ai.find(m.video_id);
    if (it == ai.end()) continue;
    ++r.n_d_compared;
    if (*m.early_attention > it->second) ++r.n_d_exceeding_mttc;
  }
  if (!r.rows.empty()) {
    std::vector<double> diffs;
    diffs.reserve(r.rows.size());
    for (const auto& row : r.rows) diffs.push_back(row.diff);
    const auto s = stats::summarize(diffs, alpha);
    r.mean_diff = s.mean;
    r.mean_diff_ci_half = s.ci_half;
  }
  return r;
}

}  // namespace gam
