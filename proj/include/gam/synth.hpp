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

#ifndef GAM_SYNTH_HPP_
#define GAM_SYNTH_HPP_

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "gam/config.hpp"
#include "gam/intervals.hpp"
#include "gam/types.hpp"

namespace gam::synth {

// Protocol constants: 5 s clips at 10 Hz, 1 s blank between clips.
inline constexpr double kVideoFps = 10.0;
inline constexpr int kVideoFrames = 50;
inline constexpr int kFrameWidthPx = 1280;
inline constexpr int kFrameHeightPx = 720;
inline constexpr double kBlankSeconds = 1.0;

// Seeded generator with platform-independent output: mt19937_64 is fully
// specified, and every distribution below is derived from its raw bits.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  double uniform();  // [0, 1)
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  // Integer in [lo, hi].
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);
  bool bernoulli(double p) { return uniform() < p; }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      const auto j = static_cast<std::size_t>(uniform_int(0, static_cast<std::int64_t>(i) - 1));
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

struct TrialSpec {
  std::string video_id;
  Category category = Category::kPositive;
  double crash_start_s = 4.0;
  int cio_first_frame = 12;
  double planted_l = 0.5;
  double fixation_coverage = 0.8;  // target rho_F over the D window
  double cio_coverage = 0.7;       // target rho_R / rho_F
  bool miss = false;
  std::uint64_t noise_seed = 1;

  double t_b() const { return cio_first_frame / kVideoFps; }
  double planted_d() const { return crash_start_s - (t_b() + planted_l); }
};

// Video-level geometry is a deterministic function of the id, category,
// crash time and first CIO frame, so every trial of a video shares it.
VideoMeta generate_video(const std::string& video_id, Category category, double crash_start_s,
                         int cio_first_frame);

// Reason the trial spec cannot be rendered, or nullopt when it can.
std::optional<std::string> infeasibility(const TrialSpec& spec, const Config& config);

struct GeneratedTrial {
  Trial trial;  // samples unlabeled; trial_id = video_id
  VideoMeta video;
};

// Renders one trial at config.gaze_hz. Throws InputError for infeasible
// specs.
GeneratedTrial generate_trial(const TrialSpec& spec, const Config& config);

// Draws a spec from the family the generator can always render.
TrialSpec random_feasible_spec(Rng& rng, const Config& config);

struct VideoSpec {
  std::string video_id;
  Category category = Category::kNegative;
  double crash_start_s = 0.0;
  int cio_first_frame = 0;
};

std::vector<VideoSpec> make_catalog(int n_pos, int n_neg, std::uint64_t seed);

struct ScheduledTrial {
  TrialSpec spec;
  double onset_s = 0.0;  // position on the session clock
};

struct Session {
  std::string participant_id;
  int session_index = 1;
  std::vector<ScheduledTrial> trials;
  double total_duration_s = 0.0;
};

// Shuffled presentation of the catalog with a blank between adjacent
// clips. Trial parameters are drawn from the same seed.
Session generate_session(const std::vector<VideoSpec>& catalog, std::uint64_t seed, const Config& config);
Session generate_session(int n_pos, int n_neg, std::uint64_t seed, const Config& config);

struct StudyParams {
  std::uint64_t seed = 7;
  int n_participants = 6;
  int n_sessions = 2;
  int n_pos = 50;
  int n_neg = 50;
  int n_miss = 27;    // positive trials with no CIO fixation
  int n_late = 13;    // positive trials fixating a CIO only after crash start
  int n_exceed = 34;  // individual D values planted above their video's mTTC
};

struct StudyTrial {
  std::string trial_id;
  std::string participant_id;
  int session_index = 1;
  int position = 0;
  double onset_s = 0.0;
  TrialSpec spec;
};

struct Study {
  std::vector<VideoMeta> videos;
  std::vector<StudyTrial> trials;  // participant, session, presentation order
  AIReference ai;
  double session_duration_s = 0.0;
};

Study plan_study(const StudyParams& params, const Config& config);

// Renders every trial of the plan.
std::vector<Trial> render_study(const Study& study, const Config& config);

// Writes gaze.csv, annotations.json, ai.csv, truth.csv and config.cfg into
// out_dir (created if missing).
void write_study(const Study& study, const Config& config, const std::string& out_dir);

// Brute-force measure: dt times the number of grid points k*dt lying in
// the window and in at least one raw interval (both half-open).
double oracle_length(const std::vector<Interval>& intervals, Interval window, double dt = 1e-3);

}  // namespace gam::synth

#endif  // GAM_SYNTH_HPP_
