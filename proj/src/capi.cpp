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

#include "gam/gam.h"

#include <cstring>
#include <exception>
#include <new>
#include <string>

#include "gam/config.hpp"
#include "gam/error.hpp"
#include "gam/format.hpp"
#include "gam/ingest.hpp"
#include "gam/report.hpp"
#include "gam/stats.hpp"
#include "gam/synth.hpp"

struct gam_config {
  gam::Config value;
};

struct gam_dataset {
  gam::Dataset value;
};

struct gam_study {
  gam::StudyReport value;
};

namespace {

thread_local std::string g_last_error;

class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

template <typename F>
gam_status guarded(F&& body) {
  g_last_error.clear();
  try {
    body();
    return GAM_OK;
  } catch (const gam::IoError& e) {
    g_last_error = e.what();
    return GAM_ERR_IO;
  } catch (const gam::InputError& e) {
    g_last_error = e.what();
    return GAM_ERR_INPUT;
  } catch (const gam::InvariantError& e) {
    g_last_error = e.what();
    return GAM_ERR_INTERNAL;
  } catch (const ArgumentError& e) {
    g_last_error = e.what();
    return GAM_ERR_ARGUMENT;
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return GAM_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return GAM_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown exception";
    return GAM_ERR_INTERNAL;
  }
}

void require(const void* p, const char* what) {
  if (p == nullptr) throw ArgumentError(std::string(what) + " is NULL");
}

std::string opt_path(const char* p) { return p == nullptr ? std::string() : std::string(p); }

const gam::Config& config_or_default(const gam_config* c) {
  static const gam::Config kDefault;
  return c == nullptr ? kDefault : c->value;
}

gam::HeatmapFilter to_filter(gam_video_filter f) {
  switch (f) {
    case GAM_FILTER_POSITIVE: return gam::HeatmapFilter::kPositive;
    case GAM_FILTER_NEGATIVE: return gam::HeatmapFilter::kNegative;
    case GAM_FILTER_ALL: return gam::HeatmapFilter::kAll;
  }
  throw ArgumentError("unknown video filter");
}

}  // namespace

extern "C" {

const char* gam_version(void) { return "0.1.0"; }

const char* gam_status_name(gam_status status) {
  switch (status) {
    case GAM_OK: return "ok";
    case GAM_ERR_INPUT: return "input error";
    case GAM_ERR_INTERNAL: return "internal error";
    case GAM_ERR_ARGUMENT: return "argument error";
    case GAM_ERR_IO: return "i/o error";
  }
  return "unknown status";
}

const char* gam_last_error(void) { return g_last_error.c_str(); }

gam_status gam_config_create(gam_config** out) {
  return guarded([&] {
    require(out, "out");
    *out = new gam_config{};
  });
}

void gam_config_destroy(gam_config* config) { delete config; }

gam_status gam_config_load_file(gam_config* config, const char* path) {
  return guarded([&] {
    require(config, "config");
    require(path, "path");
    config->value = gam::parse_config(gam::read_file(path), path);
  });
}

gam_status gam_config_set(gam_config* config, const char* key, const char* value) {
  return guarded([&] {
    require(config, "config");
    require(key, "key");
    require(value, "value");
    gam::Config next = config->value;
    gam::set_config_value(next, key, value);
    next.validate();
    config->value = next;
  });
}

gam_status gam_config_apply_env(gam_config* config) {
  return guarded([&] {
    require(config, "config");
    gam::Config next = config->value;
    gam::apply_env_overrides(next);
    config->value = next;
  });
}

gam_status gam_config_get(const gam_config* config, const char* key, char* buf, size_t size, size_t* needed) {
  return guarded([&] {
    require(config, "config");
    require(key, "key");
    const std::string v = gam::get_config_value(config->value, key);
    if (needed != nullptr) *needed = v.size() + 1;
    if (buf == nullptr || size < v.size() + 1) throw ArgumentError("buffer too small for '" + std::string(key) + "'");
    std::memcpy(buf, v.c_str(), v.size() + 1);
  });
}

gam_status gam_config_write_file(const gam_config* config, const char* path) {
  return guarded([&] {
    require(config, "config");
    require(path, "path");
    gam::write_file(path, gam::serialize_config(config->value));
  });
}

gam_status gam_dataset_load(const gam_config* config, const char* gaze_path, const char* annotations_path,
                            const char* ai_path, gam_dataset** out) {
  return guarded([&] {
    require(gaze_path, "gaze_path");
    require(out, "out");
    *out = nullptr;
    auto d = new gam_dataset{gam::load_dataset(config_or_default(config), gaze_path, opt_path(annotations_path),
                                               opt_path(ai_path))};
    *out = d;
  });
}

void gam_dataset_destroy(gam_dataset* dataset) { delete dataset; }

gam_status gam_dataset_counts(const gam_dataset* dataset, size_t* n_trials, size_t* n_videos) {
  return guarded([&] {
    require(dataset, "dataset");
    if (n_trials != nullptr) *n_trials = dataset->value.trials.size();
    if (n_videos != nullptr) *n_videos = dataset->value.videos.size();
  });
}

gam_status gam_dataset_validate(const gam_dataset* dataset, const char* report_path, size_t* n_errors,
                                size_t* n_warnings) {
  return guarded([&] {
    require(dataset, "dataset");
    const auto& d = dataset->value;
    const auto report = gam::validate_dataset(d.trials, d.videos, d.ai);
    if (report_path != nullptr && *report_path != '\0') gam::write_file(report_path, report.to_json());
    if (n_errors != nullptr) *n_errors = report.errors();
    if (n_warnings != nullptr) *n_warnings = report.warnings();
  });
}

gam_status gam_dataset_write_fixations(const gam_dataset* dataset, const char* path) {
  return guarded([&] {
    require(dataset, "dataset");
    require(path, "path");
    gam::write_file(path, gam::fixations_csv(dataset->value));
  });
}

gam_status gam_study_analyze(const gam_dataset* dataset, gam_study** out) {
  return guarded([&] {
    require(dataset, "dataset");
    require(out, "out");
    *out = nullptr;
    *out = new gam_study{gam::analyze(dataset->value)};
  });
}

void gam_study_destroy(gam_study* study) { delete study; }

gam_status gam_study_write_trial_metrics(const gam_study* study, const char* path) {
  return guarded([&] {
    require(study, "study");
    require(path, "path");
    gam::write_file(path, gam::trial_metrics_csv(study->value));
  });
}

gam_status gam_study_write_comparison(const gam_study* study, const char* path) {
  return guarded([&] {
    require(study, "study");
    require(path, "path");
    gam::write_file(path, gam::comparison_csv(study->value));
  });
}

gam_status gam_study_write_summary(const gam_study* study, const char* path) {
  return guarded([&] {
    require(study, "study");
    require(path, "path");
    gam::write_file(path, gam::summary_json(study->value));
  });
}

gam_status gam_study_write_anova(const gam_study* study, const char* path) {
  return guarded([&] {
    require(study, "study");
    require(path, "path");
    gam::write_file(path, gam::anova_json(study->value));
  });
}

gam_status gam_study_write_heatmap(const gam_study* study, gam_video_filter filter, double gamma,
                                   const char* pgm_path, const char* csv_path) {
  return guarded([&] {
    require(study, "study");
    if (!(gamma > 0.0)) throw ArgumentError("gamma must be positive");
    const gam::Grid grid = study->value.heatmap(to_filter(filter));
    if (pgm_path != nullptr && *pgm_path != '\0') gam::write_file(pgm_path, gam::render_pgm(grid, gamma));
    if (csv_path != nullptr && *csv_path != '\0') gam::write_file(csv_path, grid.to_csv());
  });
}

gam_status gam_study_write_report(const gam_study* study, const char* out_dir, double gamma) {
  return guarded([&] {
    require(study, "study");
    require(out_dir, "out_dir");
    if (!(gamma > 0.0)) throw ArgumentError("gamma must be positive");
    gam::write_report(study->value, out_dir, gamma);
  });
}

gam_status gam_study_recall(const gam_study* study, double* r_h, double* ci_half, size_t* successes,
                            size_t* total) {
  return guarded([&] {
    require(study, "study");
    const auto& r = study->value.recall;
    if (r_h != nullptr) *r_h = r.r_h;
    if (ci_half != nullptr) *ci_half = r.ci_half;
    if (successes != nullptr) *successes = r.successes;
    if (total != nullptr) *total = r.total;
  });
}

gam_status gam_study_comparison_counts(const gam_study* study, size_t* n_compared, size_t* n_exceeding,
                                       size_t* n_videos_exceeding) {
  return guarded([&] {
    require(study, "study");
    const auto& c = study->value.comparison;
    if (n_compared != nullptr) *n_compared = c.n_d_compared;
    if (n_exceeding != nullptr) *n_exceeding = c.n_d_exceeding_mttc;
    if (n_videos_exceeding != nullptr) *n_videos_exceeding = c.n_md_exceeding_mttc;
  });
}

gam_status gam_f_critical(double alpha, double df1, double df2, double* out) {
  return guarded([&] {
    require(out, "out");
    if (!(alpha > 0.0 && alpha < 1.0) || !(df1 > 0.0) || !(df2 > 0.0)) {
      throw ArgumentError("need 0 < alpha < 1 and positive degrees of freedom");
    }
    *out = gam::stats::f_critical(alpha, df1, df2);
  });
}

gam_status gam_f_survival(double x, double df1, double df2, double* out) {
  return guarded([&] {
    require(out, "out");
    if (!(df1 > 0.0) || !(df2 > 0.0)) throw ArgumentError("degrees of freedom must be positive");
    *out = gam::stats::f_survival(x, df1, df2);
  });
}

gam_status gam_recall_from_counts(size_t successes, size_t total, double alpha, double* r_h, double* ci_half) {
  return guarded([&] {
    if (total == 0 || successes > total) throw ArgumentError("need 0 < total and successes <= total");
    if (!(alpha > 0.0 && alpha < 1.0)) throw ArgumentError("alpha must lie in (0, 1)");
    const auto r = gam::recall_from_counts(successes, total, alpha);
    if (r_h != nullptr) *r_h = r.r_h;
    if (ci_half != nullptr) *ci_half = r.ci_half;
  });
}

void gam_synth_params_default(gam_synth_params* params) {
  if (params == nullptr) return;
  const gam::synth::StudyParams d;
  *params = gam_synth_params{d.seed, d.n_participants, d.n_sessions, d.n_pos,
                             d.n_neg, d.n_miss,         d.n_late,     d.n_exceed};
}

gam_status gam_synth_write_study(const gam_synth_params* params, const gam_config* config, const char* out_dir) {
  return guarded([&] {
    require(params, "params");
    require(out_dir, "out_dir");
    gam::synth::StudyParams p;
    p.seed = params->seed;
    p.n_participants = params->n_participants;
    p.n_sessions = params->n_sessions;
    p.n_pos = params->n_pos;
    p.n_neg = params->n_neg;
    p.n_miss = params->n_miss;
    p.n_late = params->n_late;
    p.n_exceed = params->n_exceed;
    const gam::Config& cfg = config_or_default(config);
    gam::synth::write_study(gam::synth::plan_study(p, cfg), cfg, out_dir);
  });
}

gam_status gam_synth_session_timeline(int n_pos, int n_neg, uint64_t seed, const gam_config* config,
                                      double* total_s, size_t* n_trials) {
  return guarded([&] {
    if (n_pos < 0 || n_neg < 0 || n_pos + n_neg == 0) throw ArgumentError("need at least one clip");
    const auto s = gam::synth::generate_session(n_pos, n_neg, seed, config_or_default(config));
    if (total_s != nullptr) *total_s = s.total_duration_s;
    if (n_trials != nullptr) *n_trials = s.trials.size();
  });
}

}  // extern "C"
