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

#ifndef GAM_REPORT_HPP_
#define GAM_REPORT_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "gam/config.hpp"
#include "gam/fixation.hpp"
#include "gam/heatmap.hpp"
#include "gam/ingest.hpp"
#include "gam/metrics.hpp"
#include "gam/stats.hpp"
#include "gam/types.hpp"

namespace gam {

struct Dataset {
  Config config;
  std::vector<Trial> trials;
  std::vector<VideoMeta> videos;
  AIReference ai;
  bool has_annotations = false;
  bool has_ai = false;
};

// Empty paths skip the corresponding input.
Dataset load_dataset(const Config& config, const std::string& gaze_path,
                     const std::string& annotations_path, const std::string& ai_path);

// Classified samples and fixations of one trial.
struct TrialFixations {
  std::vector<GazeSample> samples;
  std::vector<Fixation> fixations;
};

TrialFixations detect_fixations(const Trial& trial, const Config& config);

// fixations.csv: trial_id,participant_id,session,k,s_k,S_k,cx,cy,n_members
std::string fixations_csv(const Dataset& dataset);

enum class HeatmapFilter { kPositive, kNegative, kAll };

struct StudyCounts {
  std::size_t total_trials = 0;
  std::size_t positive_trials = 0;
  std::size_t negative_trials = 0;
  std::size_t missed = 0;
  std::size_t d_nonpositive = 0;
  std::size_t d_positive = 0;
  std::size_t attended_before_crash = 0;
  std::size_t effective = 0;  // trials with L and D defined
};

struct StudyReport {
  Config config;
  std::vector<TrialMetrics> trials;  // positive-video trials in trial-key order
  StudyCounts counts;
  RecallBound recall;
  std::optional<stats::SummaryStats> latency;
  std::optional<stats::SummaryStats> early_attention;
  std::optional<double> latency_within_1s;
  std::optional<stats::SummaryStats> rho_f_pre;
  std::optional<stats::SummaryStats> rho_f_d;
  std::optional<stats::SummaryStats> rho_r_d;
  std::optional<stats::SummaryStats> rho_ratio;
  std::optional<stats::AnovaResult> anova_latency;
  std::optional<stats::AnovaResult> anova_early_attention;
  std::optional<stats::Histogram> latency_histogram;
  std::optional<stats::Histogram> early_attention_histogram;
  ComparisonResult comparison;
  bool has_ai = false;
  // Per-frame instant attention averaged over the trials of each class.
  std::vector<std::optional<double>> instant_positive;
  std::vector<std::optional<double>> instant_negative;
  Grid heat_positive{1, 1};
  Grid heat_negative{1, 1};

  Grid heatmap(HeatmapFilter filter) const;
};

// Runs the whole pipeline. Needs annotations; every trial must resolve to
// a known video.
StudyReport analyze(const Dataset& dataset);

std::string trial_metrics_csv(const StudyReport& report);
std::string comparison_csv(const StudyReport& report);
std::string anova_json(const StudyReport& report);
std::string summary_json(const StudyReport& report);

// trial_metrics.csv, summary.json, comparison.csv, heatmap_pos.pgm and
// heatmap_neg.pgm into out_dir.
void write_report(const StudyReport& report, const std::string& out_dir, double gamma = 0.5);

}  // namespace gam

#endif  // GAM_REPORT_HPP_
