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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "gam/error.hpp"
#include "gam/ingest.hpp"
#include "gam/synth.hpp"
#include "recovery.hpp"

namespace sy = gam::synth;

TEST_SUITE("synth") {

TEST_CASE("rng is reproducible and bounded") {
  sy::Rng a(42), b(42), c(43);
  bool differs = false;
  for (int i = 0; i < 1000; ++i) {
    const auto x = a.next();
    CHECK(x == b.next());
    differs = differs || x != c.next();
    const double u = a.uniform();
    b.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    const auto k = a.uniform_int(-3, 3);
    b.uniform_int(-3, 3);
    CHECK(k >= -3);
    CHECK(k <= 3);
  }
  CHECK(differs);
  CHECK(sy::mix_seed(1, 0) != sy::mix_seed(1, 1));
  CHECK(sy::mix_seed(1, 0) == sy::mix_seed(1, 0));
}

TEST_CASE("shuffle is a permutation") {
  sy::Rng rng(1);
  std::vector<int> v(50);
  for (int i = 0; i < 50; ++i) v[i] = i;
  rng.shuffle(v);
  CHECK(std::set<int>(v.begin(), v.end()).size() == 50);
}

TEST_CASE("generated videos satisfy the annotation contract") {
  for (const auto& v : sy::make_catalog(20, 3, 5)) {
    const auto meta = sy::generate_video(v.video_id, v.category, v.crash_start_s, v.cio_first_frame);
    const auto parsed = gam::parse_annotations(gam::serialize_annotations({meta}));
    REQUIRE(parsed.size() == 1);
    CHECK(parsed[0].cio_tracks.size() == meta.cio_tracks.size());
    if (meta.positive()) {
      CHECK(*meta.crash_start_s >= 3.0);
      CHECK(*meta.crash_start_s <= 4.8);
      CHECK(meta.cio_tracks.front().boxes.front().frame == v.cio_first_frame);
      for (std::size_t t = 0; t < meta.cio_tracks.size(); ++t) {
        for (std::size_t i = 0; i < meta.cio_tracks[t].boxes.size(); ++i) {
          CHECK(parsed[0].cio_tracks[t].boxes[i].box == meta.cio_tracks[t].boxes[i].box);
        }
      }
    } else {
      CHECK(meta.cio_tracks.empty());
    }
  }
}

TEST_CASE("session protocol: clips and blanks") {
  const gam::Config c;
  const auto s = sy::generate_session(50, 50, 7, c);
  CHECK(s.trials.size() == 100);
  CHECK(s.total_duration_s == doctest::Approx(599.0));
  CHECK(s.trials.back().onset_s == doctest::Approx(594.0));
  std::set<std::string> ids;
  for (const auto& t : s.trials) ids.insert(t.spec.video_id);
  CHECK(ids.size() == 100);
  CHECK(sy::generate_session(1, 0, 7, c).total_duration_s == 5.0);
}

TEST_CASE("planted parameters are recovered") {
  const gam::Config c;
  sy::Rng rng(2024);
  for (int i = 0; i < 40; ++i) {
    const auto spec = sy::random_feasible_spec(rng, c);
    const auto r = gam::testing::check_recovery(spec, c);
    CHECK_MESSAGE(r.ok, r.detail);
  }
}

TEST_CASE("hand-picked specs, including the edges of the feasible family") {
  const gam::Config c;
  sy::TrialSpec s;
  s.video_id = "edge";
  s.cio_first_frame = 0;
  s.planted_l = 0.0;
  s.crash_start_s = 3.0;
  s.fixation_coverage = 1.0;
  s.cio_coverage = 1.0;
  CHECK(gam::testing::check_recovery(s, c).ok);
  s.fixation_coverage = 0.6;
  s.cio_coverage = 0.5;
  s.cio_first_frame = 12;
  s.planted_l = 0.3;
  s.crash_start_s = 4.5;
  const auto r = gam::testing::check_recovery(s, c);
  CHECK_MESSAGE(r.ok, r.detail);
  s.miss = true;
  CHECK(gam::testing::check_recovery(s, c).ok);
}

TEST_CASE("infeasible specs are rejected") {
  const gam::Config c;
  sy::TrialSpec s;
  s.video_id = "bad";
  s.planted_l = -0.1;
  CHECK(sy::infeasibility(s, c).has_value());
  CHECK_THROWS_AS(sy::generate_trial(s, c), gam::InputError);
  s.planted_l = 0.5;
  s.fixation_coverage = 1.5;
  CHECK(sy::infeasibility(s, c).has_value());
}

TEST_CASE("study plan plants the requested counts") {
  const gam::Config c;
  sy::StudyParams p;
  p.n_participants = 2;
  p.n_sessions = 1;
  p.n_pos = 20;
  p.n_neg = 5;
  p.n_miss = 4;
  p.n_late = 3;
  p.n_exceed = 5;
  const auto study = sy::plan_study(p, c);
  CHECK(study.trials.size() == 50);
  int miss = 0, late = 0, exceed = 0;
  for (const auto& t : study.trials) {
    const auto& s = t.spec;
    if (s.category != gam::Category::kPositive) continue;
    if (s.miss) ++miss;
    else if (s.planted_d() <= 0.0) ++late;
    if (!s.miss && s.planted_d() > study.ai.at(s.video_id)) ++exceed;
    CHECK(t.trial_id == t.participant_id + "_s" + std::to_string(t.session_index) + "_" + s.video_id);
  }
  CHECK(miss == 4);
  CHECK(late == 3);
  CHECK(exceed == 5);
  CHECK(study.ai.size() == 20);
  CHECK_THROWS_AS(sy::plan_study(sy::StudyParams{1, 1, 1, 2, 0, 3, 0, 0}, c), gam::InputError);
}

TEST_CASE("rendered study round trips through the gaze log format") {
  const gam::Config c;
  sy::StudyParams p{3, 1, 1, 3, 2, 1, 0, 0};
  const auto study = sy::plan_study(p, c);
  const auto trials = sy::render_study(study, c);
  const auto parsed = gam::parse_gaze_log(gam::serialize_gaze_log(trials), c);
  REQUIRE(parsed.size() == trials.size());
  std::size_t n = 0;
  for (const auto& t : parsed) {
    n += t.samples.size();
    const auto it = std::find_if(trials.begin(), trials.end(), [&](const gam::Trial& r) { return r.trial_id == t.trial_id; });
    REQUIRE(it != trials.end());
    REQUIRE(it->samples.size() == t.samples.size());
    for (std::size_t i = 0; i < t.samples.size(); ++i) {
      CHECK(std::abs(it->samples[i].t - t.samples[i].t) < 1e-9);
      CHECK(it->samples[i].valid == t.samples[i].valid);
      if (t.samples[i].valid) CHECK(std::abs(it->samples[i].x - t.samples[i].x) < 1e-9);
    }
  }
  CHECK(n == 5 * 600);
  CHECK(gam::serialize_gaze_log(gam::parse_gaze_log(gam::serialize_gaze_log(parsed), c)) ==
        gam::serialize_gaze_log(parsed));
}

TEST_CASE("grid oracle measure") {
  CHECK(sy::oracle_length({{0.0, 1.0}}, {0.0, 2.0}) == doctest::Approx(1.0));
  CHECK(sy::oracle_length({{0.0, 1.0}, {0.5, 1.5}}, {0.25, 2.0}) == doctest::Approx(1.25));
  CHECK(sy::oracle_length({{0.0, 1.0}}, {1.0, 1.0}) == 0.0);
}

}  // TEST_SUITE
