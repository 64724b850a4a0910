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

#ifndef GAM_METRICS_HPP_
#define GAM_METRICS_HPP_

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gam/config.hpp"
#include "gam/fixation.hpp"
#include "gam/intervals.hpp"
#include "gam/stats.hpp"
#include "gam/types.hpp"

namespace gam {

// Drivers' precision is not measurable from gaze; reports carry it as 1.
inline constexpr double kAssumedHumanPrecision = 1.0;

// Per-frame CIO boxes of one video. Frame f covers [f/fps, (f+1)/fps);
// times outside the video clamp to the first or last frame.
class FrameBoxes {
 public:
  explicit FrameBoxes(const VideoMeta& video);

  int frame_of(double t) const;
  double frame_start(int frame) const { return frame / fps_; }
  int n_frames() const { return static_cast<int>(frames_.size()); }
  const std::vector<Box>& boxes(int frame) const { return frames_[static_cast<std::size_t>(frame)]; }
  bool contains(int frame, double x, double y) const;

 private:
  double fps_;
  std::vector<std::vector<Box>> frames_;
};

// Earliest frame_index / fps over every CIO box. InputError for negative
// videos or videos without boxes.
double first_cio_appearance(const VideoMeta& video);

// Time of the earliest fixation-member sample lying inside a CIO box of
// its own frame; nullopt when the driver never fixated a CIO.
std::optional<double> first_cio_hit(std::span<const Fixation> fixations,
                                    std::span<const GazeSample> samples, const VideoMeta& video);

// Portions of fixation time during which the fixation centroid lies in a
// CIO box of the current frame.
IntervalSet cio_fixation_set(std::span<const Fixation> fixations, const VideoMeta& video);

struct TrialMetrics {
  std::string trial_id;
  std::string video_id;
  std::string participant_id;
  int session_index = 1;
  double t_b = 0.0;
  double t_a = 0.0;
  double crash_start_s = 0.0;
  std::optional<double> latency;          // L
  std::optional<double> first_cio_hit_s;
  std::optional<double> early_attention;  // D, negative when attended after crash start
  std::optional<double> rho_f_pre;        // fixation fraction over [0, T_B + L]
  std::optional<double> rho_f_d;          // fixation fraction over the D window
  std::optional<double> rho_r_d;          // CIO-fixation fraction over the D window
  std::optional<double> rho_ratio;
  bool missed_cio = true;
  bool attended_before_crash = false;
};

// All per-trial measures for one positive-video trial. `samples` must be
// classified and `fixations` grouped from them. Windows with D <= 0 leave
// the rho fields empty.
TrialMetrics compute_trial_metrics(const Trial& trial, std::span<const Fixation> fixations,
                                   std::span<const GazeSample> samples, const VideoMeta& video);

// Fraction of valid samples labelled fixation, per frame; empty where a
// frame has no valid samples.
std::vector<std::optional<double>> instant_attention_series(std::span<const GazeSample> samples,
                                                            const VideoMeta& video);

struct RecallBound {
  std::size_t successes = 0;
  std::size_t total = 0;
  double r_h = 0.0;
  double ci_half = 0.0;
};

// Fraction of positive-video trials in which a CIO was fixated before the
// crash began, pooled over participants and sessions.
RecallBound recall_upper_bound(std::span<const TrialMetrics> trials, double alpha);
RecallBound recall_from_counts(std::size_t successes, std::size_t total, double alpha);

// Mean D per video over trials with a defined D. Videos without any usable
// trial are absent.
std::map<std::string, double> video_mean_d(std::span<const TrialMetrics> trials);

struct ComparisonRow {
  std::string video_id;
  double m_d = 0.0;
  double m_ttc = 0.0;
  double diff = 0.0;  // mTTC - mD
};

struct ComparisonResult {
  std::vector<ComparisonRow> rows;
  std::size_t n_d_compared = 0;
  std::size_t n_d_exceeding_mttc = 0;
  std::size_t n_md_exceeding_mttc = 0;
  std::optional<double> mean_diff;
  std::optional<double> mean_diff_ci_half;
};

ComparisonResult compare_with_ai(const std::map<std::string, double>& m_d, const AIReference& ai,
                                 std::span<const TrialMetrics> trials, double alpha);

}  // namespace gam

#endif  // GAM_METRICS_HPP_
