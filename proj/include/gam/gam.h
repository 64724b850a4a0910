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

/* C interface to the gaze-attention metrics library.
 *
 * Every call returns a gam_status. On failure a message describing the
 * most recent error on the calling thread is available from
 * gam_last_error(). Handles are opaque; each *_create or *_load pairs with
 * the matching *_destroy, which accepts NULL. */
#ifndef GAM_GAM_H_
#define GAM_GAM_H_

#include <stddef.h>
#include <stdint.h>

#if defined(GAM_BUILDING_LIBRARY)
#define GAM_API __attribute__((visibility("default")))
#else
#define GAM_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum gam_status {
  GAM_OK = 0,
  GAM_ERR_INPUT = 1,    /* malformed or inconsistent input data */
  GAM_ERR_INTERNAL = 2, /* a computed invariant failed */
  GAM_ERR_ARGUMENT = 3, /* NULL handle, unknown key or out-of-range argument */
  GAM_ERR_IO = 4        /* file could not be read or written */
} gam_status;

typedef struct gam_config gam_config;
typedef struct gam_dataset gam_dataset;
typedef struct gam_study gam_study;

typedef enum gam_video_filter {
  GAM_FILTER_POSITIVE = 0,
  GAM_FILTER_NEGATIVE = 1,
  GAM_FILTER_ALL = 2
} gam_video_filter;

GAM_API const char* gam_version(void);
GAM_API const char* gam_status_name(gam_status status);
/* Thread-local; empty string when the last call succeeded. */
GAM_API const char* gam_last_error(void);

/* Configuration. Keys match the config file ("gaze_hz", "alpha", ...). */
GAM_API gam_status gam_config_create(gam_config** out);
GAM_API void gam_config_destroy(gam_config* config);
GAM_API gam_status gam_config_load_file(gam_config* config, const char* path);
GAM_API gam_status gam_config_set(gam_config* config, const char* key, const char* value);
/* Applies GAM_<KEY> environment overrides. */
GAM_API gam_status gam_config_apply_env(gam_config* config);
/* Writes the value of key, NUL-terminated, into buf. *needed receives the
 * required size including the terminator; a too-small buffer yields
 * GAM_ERR_ARGUMENT. */
GAM_API gam_status gam_config_get(const gam_config* config, const char* key, char* buf, size_t size,
                                  size_t* needed);
GAM_API gam_status gam_config_write_file(const gam_config* config, const char* path);

/* Dataset. annotations_path and ai_path may be NULL or empty. The config
 * is copied. */
GAM_API gam_status gam_dataset_load(const gam_config* config, const char* gaze_path,
                                    const char* annotations_path, const char* ai_path, gam_dataset** out);
GAM_API void gam_dataset_destroy(gam_dataset* dataset);
GAM_API gam_status gam_dataset_counts(const gam_dataset* dataset, size_t* n_trials, size_t* n_videos);
/* Writes a JSON validation report; *n_errors and *n_warnings may be NULL. */
GAM_API gam_status gam_dataset_validate(const gam_dataset* dataset, const char* report_path, size_t* n_errors,
                                        size_t* n_warnings);
GAM_API gam_status gam_dataset_write_fixations(const gam_dataset* dataset, const char* path);

/* Study analysis. Needs annotations. */
GAM_API gam_status gam_study_analyze(const gam_dataset* dataset, gam_study** out);
GAM_API void gam_study_destroy(gam_study* study);
GAM_API gam_status gam_study_write_trial_metrics(const gam_study* study, const char* path);
GAM_API gam_status gam_study_write_comparison(const gam_study* study, const char* path);
GAM_API gam_status gam_study_write_summary(const gam_study* study, const char* path);
GAM_API gam_status gam_study_write_anova(const gam_study* study, const char* path);
/* pgm_path or csv_path may be NULL to skip that output. */
GAM_API gam_status gam_study_write_heatmap(const gam_study* study, gam_video_filter filter, double gamma,
                                           const char* pgm_path, const char* csv_path);
GAM_API gam_status gam_study_write_report(const gam_study* study, const char* out_dir, double gamma);
GAM_API gam_status gam_study_recall(const gam_study* study, double* r_h, double* ci_half, size_t* successes,
                                    size_t* total);
GAM_API gam_status gam_study_comparison_counts(const gam_study* study, size_t* n_compared, size_t* n_exceeding,
                                               size_t* n_videos_exceeding);

/* Numerics. */
GAM_API gam_status gam_f_critical(double alpha, double df1, double df2, double* out);
GAM_API gam_status gam_f_survival(double x, double df1, double df2, double* out);
GAM_API gam_status gam_recall_from_counts(size_t successes, size_t total, double alpha, double* r_h,
                                          double* ci_half);

/* Synthetic study generation. */
typedef struct gam_synth_params {
  uint64_t seed;
  int n_participants;
  int n_sessions;
  int n_pos;
  int n_neg;
  int n_miss;
  int n_late;
  int n_exceed;
} gam_synth_params;

GAM_API void gam_synth_params_default(gam_synth_params* params);
/* config may be NULL for defaults. */
GAM_API gam_status gam_synth_write_study(const gam_synth_params* params, const gam_config* config,
                                         const char* out_dir);
/* Planned session length in seconds, trials plus blanks. */
GAM_API gam_status gam_synth_session_timeline(int n_pos, int n_neg, uint64_t seed, const gam_config* config,
                                              double* total_s, size_t* n_trials);

#ifdef __cplusplus
}  /* extern "C" */
#endif

#endif  /* GAM_GAM_H_ */
