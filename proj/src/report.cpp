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

#include "gam/report.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <map>

#include <json.hpp>

#include "gam/error.hpp"
#include "gam/format.hpp"

namespace gam {

namespace {

using nlohmann::ordered_json;

ordered_json num(double v) {
  if (!std::isfinite(v)) return nullptr;
  return round_g9(v);
}

ordered_json num(const std::optional<double>& v) { return v ? num(*v) : ordered_json(nullptr); }

ordered_json to_json(const std::optional<stats::SummaryStats>& s) {
  if (!s) return nullptr;
  ordered_json j;
  j["n"] = s->n;
  j["mean"] = num(s->mean);
  j["sd"] = num(s->sd);
  j["se"] = num(s->se);
  j["ci_half"] = num(s->ci_half);
  j["skewness"] = num(s->skewness);
  j["kurtosis"] = num(s->kurtosis);
  j["min"] = num(s->min);
  j["max"] = num(s->max);
  return j;
}

ordered_json to_json(const std::optional<stats::AnovaResult>& a, double alpha) {
  if (!a) return nullptr;
  ordered_json j;
  j["F"] = num(a->f);
  j["df_between"] = num(a->df_between);
  j["df_within"] = num(a->df_within);
  j["ss_between"] = num(a->ss_between);
  j["ss_within"] = num(a->ss_within);
  j["p_value"] = num(a->p_value);
  j["alpha"] = num(alpha);
  j["f_critical"] = num(a->f_critical);
  j["reject"] = a->reject;
  return j;
}

ordered_json to_json(const std::optional<stats::Histogram>& h) {
  if (!h) return nullptr;
  ordered_json edges = ordered_json::array(), counts = ordered_json::array();
  for (double e : h->edges) edges.push_back(num(e));
  for (auto c : h->counts) counts.push_back(c);
  return ordered_json{{"edges", edges}, {"counts", counts}};
}

ordered_json to_json(const std::vector<std::optional<double>>& series) {
  ordered_json arr = ordered_json::array();
  for (const auto& v : series) arr.push_back(num(v));
  return arr;
}

ordered_json grid_json(const Grid& g) {
  ordered_json j;
  j["w"] = g.w();
  j["h"] = g.h();
  j["total"] = g.total();
  if (g.total() >= 2) {
    const auto s = spread_stats(g);
    j["std_x"] = num(s.std_x);
    j["std_y"] = num(s.std_y);
    j["aspect"] = num(s.aspect);
  } else {
    j["std_x"] = j["std_y"] = j["aspect"] = nullptr;
  }
  return j;
}

std::optional<stats::SummaryStats> maybe_summary(const std::vector<double>& v, double alpha) {
  if (v.empty()) return std::nullopt;
  return stats::summarize(v, alpha);
}

std::optional<stats::AnovaResult> maybe_anova(const std::map<std::string, std::vector<double>>& by_group,
                                              double alpha) {
  std::vector<std::vector<double>> groups;
  std::size_t n = 0;
  for (const auto& [id, g] : by_group) {
    if (g.empty()) continue;
    groups.push_back(g);
    n += g.size();
  }
  if (groups.size() < 2 || n <= groups.size()) return std::nullopt;
  return stats::one_way_anova(groups, alpha);
}

// Mean over trials of per-frame values, skipping missing entries.
std::vector<std::optional<double>> mean_series(const std::vector<std::vector<std::optional<double>>>& all) {
  std::size_t frames = 0;
  for (const auto& s : all) frames = std::max(frames, s.size());
  std::vector<double> sum(frames, 0.0);
  std::vector<std::size_t> n(frames, 0);
  for (const auto& s : all) {
    for (std::size_t f = 0; f < s.size(); ++f) {
      if (!s[f]) continue;
      sum[f] += *s[f];
      ++n[f];
    }
  }
  std::vector<std::optional<double>> out(frames);
  for (std::size_t f = 0; f < frames; ++f) {
    if (n[f]) out[f] = sum[f] / static_cast<double>(n[f]);
  }
  return out;
}

}  // namespace

Dataset load_dataset(const Config& config, const std::string& gaze_path,
                     const std::string& annotations_path, const std::string& ai_path) {
  Dataset d;
  d.config = config;
  d.trials = parse_gaze_log(read_file(gaze_path), config, gaze_path);
  if (!annotations_path.empty()) {
    d.videos = parse_annotations(read_file(annotations_path), annotations_path);
    d.has_annotations = true;
  }
  if (!ai_path.empty()) {
    d.ai = parse_ai_reference(read_file(ai_path), ai_path);
    d.has_ai = true;
  }
  return d;
}

TrialFixations detect_fixations(const Trial& trial, const Config& config) {
  TrialFixations out;
  out.samples = classify_samples(trial.samples, config);
  out.fixations = group_fixations(out.samples, config);
  return out;
}

std::string fixations_csv(const Dataset& dataset) {
  std::string out = "trial_id,participant_id,session,k,s_k,S_k,cx,cy,n_members\n";
  for (const auto& tr : dataset.trials) {
    const auto fx = detect_fixations(tr, dataset.config);
    const std::string prefix =
        tr.trial_id + "," + tr.participant_id + "," + std::to_string(tr.session_index) + ",";
    for (const auto& f : fx.fixations) {
      out += prefix + std::to_string(f.k) + "," + fmt_g9(f.start) + "," + fmt_g9(f.duration) + "," +
             fmt_g9(f.cx) + "," + fmt_g9(f.cy) + "," + std::to_string(f.members.size()) + "\n";
    }
  }
  return out;
}

Grid StudyReport::heatmap(HeatmapFilter filter) const {
  switch (filter) {
    case HeatmapFilter::kPositive: return heat_positive;
    case HeatmapFilter::kNegative: return heat_negative;
    case HeatmapFilter::kAll: break;
  }
  Grid all = heat_positive;
  all += heat_negative;
  return all;
}

StudyReport analyze(const Dataset& dataset) {
  if (!dataset.has_annotations) throw InputError("analysis needs video annotations");
  const Config& cfg = dataset.config;
  std::map<std::string, const VideoMeta*> by_id;
  for (const auto& v : dataset.videos) by_id[v.video_id] = &v;

  StudyReport r;
  r.config = cfg;
  r.has_ai = dataset.has_ai;
  r.heat_positive = Grid(cfg.grid_w, cfg.grid_h);
  r.heat_negative = Grid(cfg.grid_w, cfg.grid_h);
  std::vector<std::vector<std::optional<double>>> inst_pos, inst_neg;

  for (const auto& tr : dataset.trials) {
    const auto vid = resolve_video_id(tr.trial_id, dataset.videos);
    if (!vid) throw InputError("trial '" + trial_key(tr) + "' references an unknown video");
    const VideoMeta& video = *by_id.at(*vid);
    const auto fx = detect_fixations(tr, cfg);
    ++r.counts.total_trials;
    if (video.positive()) {
      ++r.counts.positive_trials;
      accumulate(r.heat_positive, fx.samples, fx.fixations, cfg.heatmap_unit);
      inst_pos.push_back(instant_attention_series(fx.samples, video));
      r.trials.push_back(compute_trial_metrics(tr, fx.fixations, fx.samples, video));
    } else {
      ++r.counts.negative_trials;
      accumulate(r.heat_negative, fx.samples, fx.fixations, cfg.heatmap_unit);
      inst_neg.push_back(instant_attention_series(fx.samples, video));
    }
  }
  r.instant_positive = mean_series(inst_pos);
  r.instant_negative = mean_series(inst_neg);

  std::vector<double> ls, ds, pre, fd, rd, ratio;
  std::map<std::string, std::vector<double>> l_by_p, d_by_p;
  for (const auto& m : r.trials) {
    if (m.missed_cio) {
      ++r.counts.missed;
      continue;
    }
    ++r.counts.effective;
    if (m.attended_before_crash) ++r.counts.attended_before_crash;
    ls.push_back(*m.latency);
    ds.push_back(*m.early_attention);
    l_by_p[m.participant_id].push_back(*m.latency);
    d_by_p[m.participant_id].push_back(*m.early_attention);
    if (*m.early_attention > 0.0) {
      ++r.counts.d_positive;
      if (m.rho_f_pre) pre.push_back(*m.rho_f_pre);
      if (m.rho_f_d) fd.push_back(*m.rho_f_d);
      if (m.rho_r_d) rd.push_back(*m.rho_r_d);
      if (m.rho_ratio) ratio.push_back(*m.rho_ratio);
    } else {
      ++r.counts.d_nonpositive;
    }
  }
  GAM_CHECK(r.counts.missed + r.counts.d_nonpositive + r.counts.d_positive == r.trials.size(),
            "trial count partition broken");
  GAM_CHECK(r.counts.attended_before_crash <= r.counts.effective, "attended count exceeds effective trials");

  const double alpha = cfg.alpha;
  if (!r.trials.empty()) r.recall = recall_upper_bound(r.trials, alpha);
  r.latency = maybe_summary(ls, alpha);
  r.early_attention = maybe_summary(ds, alpha);
  if (!ls.empty()) r.latency_within_1s = stats::exceedance(ls, 1.0, stats::Direction::kAtMost);
  r.rho_f_pre = maybe_summary(pre, alpha);
  r.rho_f_d = maybe_summary(fd, alpha);
  r.rho_r_d = maybe_summary(rd, alpha);
  r.rho_ratio = maybe_summary(ratio, alpha);
  r.anova_latency = maybe_anova(l_by_p, alpha);
  r.anova_early_attention = maybe_anova(d_by_p, alpha);
  r.latency_histogram = stats::histogram(ls, 25, 0.0, 5.0);
  r.early_attention_histogram = stats::histogram(ds, 30, -1.0, 5.0);
  r.comparison = compare_with_ai(video_mean_d(r.trials), dataset.ai, r.trials, alpha);
  return r;
}

std::string trial_metrics_csv(const StudyReport& report) {
  std::string out =
      "trial_id,video_id,participant_id,session,T_B,T_A,L,first_cio_hit_s,D,rho_F_pre,rho_F_D,"
      "rho_R_D,rho_ratio,missed_cio,attended_before_crash\n";
  for (const auto& m : report.trials) {
    out += m.trial_id + "," + m.video_id + "," + m.participant_id + "," + std::to_string(m.session_index) +
           "," + fmt_g9(m.t_b) + "," + fmt_g9(m.t_a) + "," + fmt_opt(m.latency) + "," +
           fmt_opt(m.first_cio_hit_s) + "," + fmt_opt(m.early_attention) + "," + fmt_opt(m.rho_f_pre) +
           "," + fmt_opt(m.rho_f_d) + "," + fmt_opt(m.rho_r_d) + "," + fmt_opt(m.rho_ratio) + "," +
           (m.missed_cio ? "1" : "0") + "," + (m.attended_before_crash ? "1" : "0") + "\n";
  }
  return out;
}

std::string comparison_csv(const StudyReport& report) {
  std::string out = "video_id,mD,mTTC,diff\n";
  for (const auto& row : report.comparison.rows) {
    out += row.video_id + "," + fmt_g9(row.m_d) + "," + fmt_g9(row.m_ttc) + "," + fmt_g9(row.diff) + "\n";
  }
  return out;
}

std::string anova_json(const StudyReport& report) {
  ordered_json j;
  j["group"] = "participant";
  j["latency"] = to_json(report.anova_latency, report.config.alpha);
  j["early_attention_duration"] = to_json(report.anova_early_attention, report.config.alpha);
  return j.dump(1) + "\n";
}

std::string summary_json(const StudyReport& report) {
  const auto& c = report.counts;
  ordered_json j;
  j["counts"] = ordered_json{{"total_trials", c.total_trials},
                             {"positive_trials", c.positive_trials},
                             {"negative_trials", c.negative_trials},
                             {"missed", c.missed},
                             {"effective", c.effective},
                             {"d_nonpositive", c.d_nonpositive},
                             {"d_positive", c.d_positive},
                             {"attended_before_crash", c.attended_before_crash}};
  if (report.trials.empty()) {
    j["recall_upper_bound"] = nullptr;
  } else {
    j["recall_upper_bound"] = ordered_json{{"r_h", num(report.recall.r_h)},
                                           {"ci_half", num(report.recall.ci_half)},
                                           {"successes", report.recall.successes},
                                           {"total", report.recall.total}};
  }
  j["assumed_precision"] = kAssumedHumanPrecision;
  j["alpha"] = num(report.config.alpha);
  j["ci_convention"] = "ci_half = z(1 - alpha/2) * se, normal approximation";
  j["latency"] = to_json(report.latency);
  j["latency_fraction_within_1s"] = num(report.latency_within_1s);
  j["early_attention_duration"] = to_json(report.early_attention);
  j["rho"] = ordered_json{{"trials", "D > 0"},
                          {"rho_F_pre", to_json(report.rho_f_pre)},
                          {"rho_F_D", to_json(report.rho_f_d)},
                          {"rho_R_D", to_json(report.rho_r_d)},
                          {"rho_ratio", to_json(report.rho_ratio)}};
  j["anova"] = ordered_json{{"group", "participant"},
                            {"latency", to_json(report.anova_latency, report.config.alpha)},
                            {"early_attention_duration",
                             to_json(report.anova_early_attention, report.config.alpha)}};
  const auto& cmp = report.comparison;
  j["comparison"] = ordered_json{{"ai_reference", report.has_ai},
                                 {"n_videos", cmp.rows.size()},
                                 {"n_D_compared", cmp.n_d_compared},
                                 {"n_D_exceeding_mTTC", cmp.n_d_exceeding_mttc},
                                 {"n_mD_exceeding_mTTC", cmp.n_md_exceeding_mttc},
                                 {"mean_diff", num(cmp.mean_diff)},
                                 {"mean_diff_ci_half", num(cmp.mean_diff_ci_half)}};
  j["instant_attention"] = ordered_json{{"positive", to_json(report.instant_positive)},
                                        {"negative", to_json(report.instant_negative)}};
  j["heatmap"] = ordered_json{
      {"unit", report.config.heatmap_unit == HeatmapUnit::kSample ? "sample" : "fixation"},
      {"pooled", "all participants and sessions"},
      {"positive", grid_json(report.heat_positive)},
      {"negative", grid_json(report.heat_negative)}};
  j["histograms"] = ordered_json{{"latency", to_json(report.latency_histogram)},
                                 {"early_attention_duration", to_json(report.early_attention_histogram)}};
  return j.dump(1) + "\n";
}

void write_report(const StudyReport& report, const std::string& out_dir, double gamma) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create '" + out_dir + "': " + ec.message());
  const std::filesystem::path dir(out_dir);
  write_file((dir / "trial_metrics.csv").string(), trial_metrics_csv(report));
  write_file((dir / "summary.json").string(), summary_json(report));
  write_file((dir / "comparison.csv").string(), comparison_csv(report));
  write_file((dir / "heatmap_pos.pgm").string(), render_pgm(report.heat_positive, gamma));
  write_file((dir / "heatmap_neg.pgm").string(), render_pgm(report.heat_negative, gamma));
}

}  // namespace gam
