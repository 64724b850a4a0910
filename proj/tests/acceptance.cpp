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

// Acceptance suite: one PASS/FAIL line per criterion. Tolerances and
// runtime budgets are fixed below; the exit status is nonzero if any
// criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "gam/error.hpp"
#include "gam/fixation.hpp"
#include "gam/format.hpp"
#include "gam/heatmap.hpp"
#include "gam/intervals.hpp"
#include "gam/metrics.hpp"
#include "gam/report.hpp"
#include "gam/stats.hpp"
#include "gam/synth.hpp"
#include "oracles.hpp"
#include "recovery.hpp"

namespace fs = std::filesystem;
namespace sy = gam::synth;

namespace {

// Recall bound arithmetic.
constexpr double kRecallExpected = 0.928;
constexpr double kRecallTol = 0.0005;
constexpr double kRecallCiExpected = 0.021;
constexpr double kRecallCiTol = 0.002;
constexpr double kRecallBudgetS = 1.0;

// F critical value.
constexpr double kFCritExpected = 2.31;
constexpr double kFCritTol = 0.01;
constexpr double kFCritBudgetS = 1.0;

// Effective-trial bookkeeping.
constexpr std::size_t kPlantedMisses = 27;
constexpr std::size_t kExpectedUsable = 573;
constexpr double kBookkeepingBudgetS = 5.0;

// Session protocol.
constexpr double kSessionSeconds = 599.0;
constexpr double kSessionTol = 1e-9;

// Interval oracle.
constexpr int kIntervalCases = 1000;
constexpr double kIntervalTolS = 2e-3;
constexpr double kIntervalBudgetS = 10.0;

// Planted-parameter recovery.
constexpr int kRecoveryCases = 200;
constexpr double kRecoveryTimeTolS = 1.0 / 120.0;
constexpr double kRecoveryFractionTol = 0.02;
constexpr double kRecoveryBudgetS = 30.0;

// ANOVA oracle.
constexpr double kAnovaF = 3.0;
constexpr double kAnovaFTol = 1e-9;
constexpr double kAnovaP = 0.125;
constexpr double kAnovaPTol = 1e-4;
constexpr int kInvarianceDatasets = 100;
constexpr double kInvarianceTol = 1e-9;

// Throughput.
constexpr std::size_t kThroughputSamples = 720000;
constexpr double kThroughputBudgetS = 10.0;

int g_failures = 0;

void report(bool pass, const std::string& name, const std::string& detail) {
  std::printf("%s %s: %s\n", pass ? "PASS" : "FAIL", name.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

// Runs a criterion, turning exceptions into failures.
void criterion(const std::string& name, const std::function<std::pair<bool, std::string>()>& body) {
  try {
    const auto [pass, detail] = body();
    report(pass, name, detail);
  } catch (const std::exception& e) {
    report(false, name, std::string("exception: ") + e.what());
  }
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string g(double v) { return gam::fmt_g9(v); }

fs::path work_dir() {
  const fs::path p = fs::current_path() / "acceptance_work";
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

}  // namespace

int main() {
  const gam::Config config;
  const fs::path work = work_dir();

  criterion("recall_upper_bound", [] {
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<gam::TrialMetrics> trials(600);
    for (std::size_t i = 0; i < 557; ++i) trials[i].attended_before_crash = true;
    const auto r = gam::recall_upper_bound(trials, 0.05);
    const double dt = seconds_since(t0);
    const bool pass = std::abs(r.r_h - kRecallExpected) <= kRecallTol &&
                      std::abs(r.ci_half - kRecallCiExpected) <= kRecallCiTol && dt < kRecallBudgetS;
    return std::pair{pass, "R_H = " + g(r.r_h) + " +/- " + g(r.ci_half) + " (557/600, 95% CI), " + g(dt) + " s"};
  });

  criterion("f_critical", [] {
    const auto t0 = std::chrono::steady_clock::now();
    const double c = gam::stats::f_critical(0.05, 5, 99);
    const double dt = seconds_since(t0);
    const bool pass = std::abs(c - kFCritExpected) <= kFCritTol && dt < kFCritBudgetS;
    return std::pair{pass, "f_critical(0.05, 5, 99) = " + g(c) + ", " + g(dt) + " s"};
  });

  criterion("effective_trials", [&] {
    const auto t0 = std::chrono::steady_clock::now();
    sy::StudyParams p;
    p.n_miss = static_cast<int>(kPlantedMisses);
    const auto study = sy::plan_study(p, config);
    gam::Dataset d;
    d.config = config;
    d.trials = sy::render_study(study, config);
    d.videos = study.videos;
    d.ai = study.ai;
    d.has_annotations = d.has_ai = true;
    const auto r = gam::analyze(d);
    std::size_t usable_l = 0, usable_d = 0;
    for (const auto& m : r.trials) {
      usable_l += m.latency ? 1 : 0;
      usable_d += m.early_attention ? 1 : 0;
    }
    const double dt = seconds_since(t0);
    const bool pass = r.trials.size() == 600 && r.counts.missed == kPlantedMisses && usable_l == kExpectedUsable &&
                      usable_d == kExpectedUsable && r.latency->n == kExpectedUsable && dt < kBookkeepingBudgetS;
    return std::pair{pass, std::to_string(r.trials.size()) + " positive trials, " + std::to_string(r.counts.missed) +
                               " missed, " + std::to_string(usable_l) + " L / " + std::to_string(usable_d) +
                               " D values, " + g(dt) + " s"};
  });

  criterion("session_protocol", [&] {
    const auto s = sy::generate_session(50, 50, 7, config);
    const double last_end = s.trials.back().onset_s + sy::kVideoFrames / sy::kVideoFps;
    const bool pass = s.trials.size() == 100 && std::abs(s.total_duration_s - kSessionSeconds) <= kSessionTol &&
                      std::abs(last_end - kSessionSeconds) <= kSessionTol;
    return std::pair{pass, std::to_string(s.trials.size()) + " clips, timeline " + g(s.total_duration_s) +
                               " s, last clip ends at " + g(last_end) + " s"};
  });

  criterion("interval_oracle", [] {
    const auto t0 = std::chrono::steady_clock::now();
    sy::Rng rng(20260101);
    double worst = 0.0;
    std::size_t worst_components = 0;
    int over = 0;
    for (int c = 0; c < kIntervalCases; ++c) {
      // Sparse family: up to six raw intervals of at most 2 s over [0, 5].
      std::vector<gam::Interval> raw;
      const int n = static_cast<int>(rng.uniform_int(0, 6));
      for (int i = 0; i < n; ++i) {
        const double a = rng.uniform(0.0, 5.0);
        raw.push_back({a, std::min(5.0, a + rng.uniform(0.0, 2.0))});
      }
      const double a = rng.uniform(0.0, 5.0), b = rng.uniform(0.0, 5.0);
      const gam::Interval window{std::min(a, b), std::max(a, b)};
      const auto clipped = gam::IntervalSet::normalize(raw).intersect(window);
      const double err = std::abs(clipped.total_length() - sy::oracle_length(raw, window));
      if (err > worst) {
        worst = err;
        worst_components = clipped.intervals().size();
      }
      over += err > kIntervalTolS ? 1 : 0;
    }
    const double dt = seconds_since(t0);
    return std::pair{over == 0 && dt < kIntervalBudgetS,
                     std::to_string(kIntervalCases) + " cases, max |analytic - 1 ms grid| = " + g(worst * 1e3) +
                         " ms (windowed union of " + std::to_string(worst_components) + " components), " +
                         std::to_string(over) + " over 2 ms, " + g(dt) + " s"};
  });

  criterion("planted_recovery", [&] {
    const auto t0 = std::chrono::steady_clock::now();
    sy::Rng rng(77);
    int failed = 0;
    std::string first;
    for (int c = 0; c < kRecoveryCases; ++c) {
      const auto spec = sy::random_feasible_spec(rng, config);
      const auto r = gam::testing::check_recovery(spec, config, {kRecoveryTimeTolS, kRecoveryFractionTol});
      if (!r.ok) {
        if (failed == 0) first = r.detail;
        ++failed;
      }
    }
    const double dt = seconds_since(t0);
    std::string detail = std::to_string(kRecoveryCases - failed) + "/" + std::to_string(kRecoveryCases) +
                         " specs recovered (T_B exact, L and D within 1/120 s, rho within 0.02), " + g(dt) + " s";
    if (failed) detail += "; first failure " + first;
    return std::pair{failed == 0 && dt < kRecoveryBudgetS, detail};
  });

  criterion("anova_oracle", [] {
    const auto r = gam::stats::one_way_anova({{1, 2, 3}, {2, 3, 4}, {3, 4, 5}}, 0.05);
    const double p_oracle = 1.0 - gam::testing::oracle_f_cdf(r.f, r.df_between, r.df_within);
    bool pass = std::abs(r.f - kAnovaF) <= kAnovaFTol && std::abs(r.p_value - kAnovaP) <= kAnovaPTol &&
                std::abs(p_oracle - kAnovaP) <= kAnovaPTol;
    sy::Rng rng(99);
    double worst = 0.0;
    for (int c = 0; c < kInvarianceDatasets; ++c) {
      const int k = static_cast<int>(rng.uniform_int(2, 6));
      std::vector<std::vector<double>> groups(k), moved(k);
      for (int j = 0; j < k; ++j) {
        const int n = static_cast<int>(rng.uniform_int(2, 30));
        for (int i = 0; i < n; ++i) groups[j].push_back(rng.uniform(-1.0, 1.0) + 0.2 * j);
      }
      const double shift = rng.uniform(-1e3, 1e3), scale = std::exp(rng.uniform(-5.0, 5.0));
      for (int j = 0; j < k; ++j)
        for (double v : groups[j]) moved[j].push_back(shift + scale * v);
      const double f0 = gam::stats::one_way_anova(groups, 0.05).f;
      const double f1 = gam::stats::one_way_anova(moved, 0.05).f;
      worst = std::max(worst, std::abs(f1 - f0) / std::max(1.0, std::abs(f0)));
    }
    pass = pass && worst <= kInvarianceTol;
    return std::pair{pass, "F = " + g(r.f) + ", p = " + g(r.p_value) + " (quadrature oracle " + g(p_oracle) +
                               "), max relative F change under shift/scale over " +
                               std::to_string(kInvarianceDatasets) + " datasets = " + g(worst)};
  });

  criterion("heatmap_conservation", [&] {
    const auto s = sy::generate_session(50, 50, 7, config);
    gam::Grid pos(config.grid_w, config.grid_h), neg(pos), all(pos);
    std::uint64_t fix_samples = 0;
    for (const auto& st : s.trials) {
      const auto gen = sy::generate_trial(st.spec, config);
      const auto lab = gam::classify_samples(gen.trial.samples, config);
      const auto fx = gam::group_fixations(lab, config);
      for (const auto& x : lab) fix_samples += (x.valid && x.label == gam::Label::kFixation) ? 1 : 0;
      gam::accumulate(gen.video.positive() ? pos : neg, lab, fx, gam::HeatmapUnit::kSample);
      gam::accumulate(all, lab, fx, gam::HeatmapUnit::kSample);
    }
    gam::Grid sum = pos;
    sum += neg;
    const bool pass = all.total() == fix_samples && sum == all;
    return std::pair{pass, "grid total " + std::to_string(all.total()) + " = " + std::to_string(fix_samples) +
                               " fixation samples; positive " + std::to_string(pos.total()) + " + negative " +
                               std::to_string(neg.total()) + (sum == all ? " == " : " != ") + "unfiltered cell-wise"};
  });

  criterion("throughput", [&] {
    const fs::path in = work / "throughput_in";
    sy::write_study(sy::plan_study(sy::StudyParams{}, config), config, in.string());
    const auto t0 = std::chrono::steady_clock::now();
    const auto d = gam::load_dataset(config, (in / "gaze.csv").string(), (in / "annotations.json").string(),
                                     (in / "ai.csv").string());
    const auto r = gam::analyze(d);
    gam::write_report(r, (work / "throughput_out").string());
    const double dt = seconds_since(t0);
    std::size_t n = 0;
    for (const auto& t : d.trials) n += t.samples.size();
    return std::pair{n == kThroughputSamples && r.trials.size() == 600 && dt < kThroughputBudgetS,
                     std::to_string(n) + " samples, " + std::to_string(r.trials.size()) +
                         " positive trials of " + std::to_string(d.trials.size()) + ": ingest to report in " +
                         g(dt) + " s"};
  });

  criterion("determinism", [&] {
    const char* files[] = {"gaze.csv", "annotations.json", "ai.csv", "truth.csv", "config.cfg",
                           "trial_metrics.csv", "summary.json", "comparison.csv", "heatmap_pos.pgm",
                           "heatmap_neg.pgm", "fixations.csv", "anova.json"};
    for (const char* run : {"run_a", "run_b"}) {
      const fs::path dir = work / run;
      sy::write_study(sy::plan_study(sy::StudyParams{}, config), config, dir.string());
      const auto d = gam::load_dataset(gam::parse_config(gam::read_file((dir / "config.cfg").string())),
                                       (dir / "gaze.csv").string(), (dir / "annotations.json").string(),
                                       (dir / "ai.csv").string());
      const auto r = gam::analyze(d);
      gam::write_report(r, dir.string());
      gam::write_file((dir / "fixations.csv").string(), gam::fixations_csv(d));
      gam::write_file((dir / "anova.json").string(), gam::anova_json(r));
    }
    int same = 0;
    std::string diff;
    for (const char* f : files) {
      if (gam::read_file((work / "run_a" / f).string()) == gam::read_file((work / "run_b" / f).string())) ++same;
      else diff += std::string(" ") + f;
    }
    const int total = static_cast<int>(std::size(files));
    return std::pair{same == total, std::to_string(same) + "/" + std::to_string(total) +
                                        " output files byte-identical across two runs" +
                                        (diff.empty() ? "" : ", differing:" + diff)};
  });

  std::printf("%s: %d criteria failed\n", g_failures ? "FAIL" : "PASS", g_failures);
  return g_failures ? 1 : 0;
}
