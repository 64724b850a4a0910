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

#include "gam/synth.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <limits>
#include <map>
#include <numbers>
#include <variant>

#include "gam/error.hpp"
#include "gam/format.hpp"
#include "gam/ingest.hpp"

namespace gam::synth {

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

std::int64_t Rng::uniform_int(std::int64_t lo, std::int64_t hi) {
  if (hi <= lo) return lo;
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  // Rejection keeps the draw unbiased.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % span;
  std::uint64_t v = 0;
  do {
    v = engine_();
  } while (v >= limit);
  return lo + static_cast<std::int64_t>(v % span);
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  // splitmix64 finalizer over the combined words.
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

namespace {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

Box box_from_px(double x1, double y1, double x2, double y2) {
  const double W = kFrameWidthPx, H = kFrameHeightPx;
  return Box{x1 / W, 1.0 - y2 / H, x2 / W, 1.0 - y1 / H};
}

// Pixel box covering a normalized (bottom-left origin) rectangle.
Box covering_box(double x1n, double y1n, double x2n, double y2n) {
  const double W = kFrameWidthPx, H = kFrameHeightPx;
  return box_from_px(std::floor(x1n * W), std::floor((1.0 - y2n) * H), std::ceil(x2n * W),
                     std::ceil((1.0 - y1n) * H));
}

// Layout shared by the renderer and the video generator.
struct Layout {
  Point cio;  // inside every CIO box of the first track
};

constexpr double kCoreHalfW = 0.05;
constexpr double kCoreHalfH = 0.07;
constexpr double kJitter = 0.0015;
constexpr Point kSaccadeCentre{0.22, 0.90};
constexpr double kSaccadeRadius = 0.04;

Layout layout_for(const std::string& video_id, int cio_first_frame) {
  Rng rng(mix_seed(fnv1a(video_id), static_cast<std::uint64_t>(cio_first_frame)));
  return Layout{{rng.uniform(0.58, 0.78), rng.uniform(0.35, 0.60)}};
}

}  // namespace

VideoMeta generate_video(const std::string& video_id, Category category, double crash_start_s,
                         int cio_first_frame) {
  VideoMeta m;
  m.video_id = video_id;
  m.category = category;
  m.fps = kVideoFps;
  m.n_frames = kVideoFrames;
  m.frame_width_px = kFrameWidthPx;
  m.frame_height_px = kFrameHeightPx;
  if (category == Category::kNegative) return m;
  m.crash_start_s = crash_start_s;

  const Layout layout = layout_for(video_id, cio_first_frame);
  Rng rng(mix_seed(fnv1a(video_id), 0xC10ULL));
  // Track 1: piecewise-constant box, every piece containing the core
  // rectangle around layout.cio.
  CioTrack first{"cio1", {}};
  const int pieces = static_cast<int>(rng.uniform_int(1, 3));
  std::vector<int> cuts{cio_first_frame};
  for (int i = 1; i < pieces; ++i) {
    cuts.push_back(static_cast<int>(rng.uniform_int(cio_first_frame, kVideoFrames - 1)));
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.push_back(kVideoFrames);
  for (std::size_t p = 0; p + 1 < cuts.size(); ++p) {
    const Box box = covering_box(layout.cio.x - kCoreHalfW - rng.uniform(0.005, 0.04),
                                 layout.cio.y - kCoreHalfH - rng.uniform(0.005, 0.04),
                                 layout.cio.x + kCoreHalfW + rng.uniform(0.005, 0.04),
                                 layout.cio.y + kCoreHalfH + rng.uniform(0.005, 0.04));
    for (int f = cuts[p]; f < cuts[p + 1]; ++f) first.boxes.push_back({f, box});
  }
  m.cio_tracks.push_back(std::move(first));

  // Optional second CIO entering later, on the right half of the frame.
  if (rng.bernoulli(0.5) && cio_first_frame + 1 < kVideoFrames) {
    const int start = static_cast<int>(
        rng.uniform_int(cio_first_frame + 1, std::min(kVideoFrames - 1, cio_first_frame + 15)));
    const double cx = rng.uniform(0.62, 0.85), cy = rng.uniform(0.2, 0.6);
    const double hw = rng.uniform(0.03, 0.06), hh = rng.uniform(0.04, 0.08);
    const Box box = covering_box(cx - hw, cy - hh, cx + hw, cy + hh);
    CioTrack second{"cio2", {}};
    for (int f = start; f < kVideoFrames; ++f) second.boxes.push_back({f, box});
    m.cio_tracks.push_back(std::move(second));
  }
  return m;
}

namespace {

int n_samples(const Config& config) {
  return static_cast<int>(std::lround(kVideoFrames / kVideoFps * config.gaze_hz));
}

// Samples a fixation needs beyond its duration in sample periods: the
// velocity estimator labels both samples next to a jump as saccade.
constexpr int kEdgeSamples = 3;
constexpr int kMinFixationUnits = 8;
// At least one sweep sample between dwells, so neighbouring dwells never
// merge even when their points happen to be close.
constexpr int kMinGapUnits = kEdgeSamples + 1;
constexpr double kTypicalFixationUnits = 36.0;

struct Segment {
  bool on_cio = true;
  int units = 0;     // fixation duration in sample periods
  int gap_after = 0;  // sample periods from its last member to the next first member
};

// How the D window is laid out, in sample periods from the first hit.
struct WindowPlan {
  int hit_index = 0;
  bool full = false;  // one on-CIO fixation spanning the whole window
  std::vector<Segment> segments;
};

int hit_index(const TrialSpec& spec, const Config& config) {
  const double t_h = spec.t_b() + spec.planted_l;
  const int h = static_cast<int>(std::ceil(t_h * config.gaze_hz - 1e-9));
  return h <= 1 ? 0 : h;
}

std::variant<WindowPlan, std::string> plan_window(const TrialSpec& spec, const Config& config) {
  const int n = n_samples(config);
  const double rate = config.gaze_hz;
  if (spec.category == Category::kNegative) return WindowPlan{};
  if (!(spec.crash_start_s >= 3.0 && spec.crash_start_s <= kVideoFrames / kVideoFps)) {
    return std::string("crash_start_s outside [3, 5]");
  }
  if (spec.cio_first_frame < 0 || spec.cio_first_frame >= kVideoFrames) {
    return std::string("cio_first_frame outside the video");
  }
  if (spec.t_b() >= spec.crash_start_s) return std::string("CIO appears after the crash starts");
  if (!(spec.fixation_coverage >= 0.0 && spec.fixation_coverage <= 1.0) ||
      !(spec.cio_coverage >= 0.0 && spec.cio_coverage <= 1.0)) {
    return std::string("coverage fractions must lie in [0, 1]");
  }
  if (spec.miss) return WindowPlan{};
  if (!(spec.planted_l >= 0.0)) return std::string("planted_l must be >= 0");

  WindowPlan plan;
  plan.hit_index = hit_index(spec, config);
  if (plan.hit_index + kMinFixationUnits + 1 > n - 1) {
    return std::string("planted hit falls after the end of the video");
  }
  const double crash_u = spec.crash_start_s * rate;
  if (spec.planted_d() <= 0.0) return plan;
  const double window_u = crash_u - plan.hit_index;
  if (window_u <= 0.0) return std::string("D window shorter than one sample period");

  const double fc = spec.fixation_coverage, cc = spec.cio_coverage;
  if (fc >= 1.0) {
    if (cc < 1.0) return std::string("full fixation coverage leaves no room for off-CIO fixations");
    if (crash_u > n - 1) return std::string("crash starts after the last gaze sample");
    plan.full = true;
    return plan;
  }
  const int cover_total = static_cast<int>(std::lround(fc * window_u));
  const int cover_on = cc >= 1.0 ? cover_total : static_cast<int>(std::lround(cc * fc * window_u));
  const int cover_off = cover_total - cover_on;
  const double gap_budget = window_u - cover_total;
  if (cover_on < kMinFixationUnits) return std::string("on-CIO coverage too short for one fixation");
  if (cover_off > 0 && cover_off < kMinFixationUnits) {
    return std::string("off-CIO coverage too short for one fixation");
  }
  int n_on = std::clamp(static_cast<int>(std::lround(cover_on / kTypicalFixationUnits)), 1,
                        cover_on / kMinFixationUnits);
  int n_off = cover_off == 0 ? 0
                             : std::clamp(static_cast<int>(std::lround(cover_off / kTypicalFixationUnits)),
                                          1, cover_off / kMinFixationUnits);
  while (kMinGapUnits * (n_on + n_off) > gap_budget && (n_on > 1 || n_off > 1)) {
    (n_on >= n_off ? n_on : n_off) -= 1;
  }
  const int count = n_on + n_off;
  if (kMinGapUnits * count > gap_budget) return std::string("gap budget too small for the fixation layout");

  std::vector<Segment> on(static_cast<std::size_t>(n_on)), off(static_cast<std::size_t>(n_off));
  for (int i = 0; i < n_on; ++i) on[static_cast<std::size_t>(i)] = {true, cover_on / n_on + (i < cover_on % n_on ? 1 : 0), 0};
  for (int i = 0; i < n_off; ++i) off[static_cast<std::size_t>(i)] = {false, cover_off / n_off + (i < cover_off % n_off ? 1 : 0), 0};
  for (std::size_t i = 0; i < std::max(on.size(), off.size()); ++i) {
    if (i < on.size()) plan.segments.push_back(on[i]);
    if (i < off.size()) plan.segments.push_back(off[i]);
  }
  // Internal gaps take everything except a trailing gap of [4, 5) periods.
  const int internal = count - 1;
  if (internal > 0) {
    const int total_internal = static_cast<int>(std::floor(gap_budget - kMinGapUnits));
    const int extra = total_internal - kMinGapUnits * internal;
    for (int i = 0; i < internal; ++i) {
      plan.segments[static_cast<std::size_t>(i)].gap_after =
          kMinGapUnits + extra / internal + (i < extra % internal ? 1 : 0);
    }
  }
  return plan;
}

// Writes a trial's sample stream position by position.
class Renderer {
 public:
  Renderer(int n, double rate, Rng& rng) : samples_(static_cast<std::size_t>(n)), rng_(rng) {
    for (int i = 0; i < n; ++i) samples_[static_cast<std::size_t>(i)].t = i / rate;
  }

  int cursor() const { return cursor_; }
  int size() const { return static_cast<int>(samples_.size()); }
  bool done() const { return cursor_ >= size(); }

  void dwell(int count, Point p) {
    count = std::min(count, size() - cursor_);
    if (count <= 0) return;
    // Occasional blink well inside long dwells; short enough to be bridged.
    int blink_at = -1, blink_len = 0;
    if (count >= 30 && rng_.bernoulli(0.3)) {
      blink_len = static_cast<int>(rng_.uniform_int(2, 4));
      blink_at = static_cast<int>(rng_.uniform_int(10, count - 10 - blink_len));
    }
    for (int i = 0; i < count; ++i) {
      auto& s = samples_[static_cast<std::size_t>(cursor_ + i)];
      if (blink_at >= 0 && i >= blink_at && i < blink_at + blink_len) {
        s.valid = false;
        s.x = s.y = std::numeric_limits<double>::quiet_NaN();
        continue;
      }
      s.x = p.x + rng_.uniform(-kJitter, kJitter);
      s.y = p.y + rng_.uniform(-kJitter, kJitter);
    }
    cursor_ += count;
  }

  // Fast sweep around a small circle away from every dwell region: each
  // step moves 60 degrees, far above any velocity threshold in use.
  void saccade(int count) {
    count = std::min(count, size() - cursor_);
    for (int i = 0; i < count; ++i) {
      const double a = phase_++ * std::numbers::pi / 3.0;
      auto& s = samples_[static_cast<std::size_t>(cursor_ + i)];
      s.x = kSaccadeCentre.x + kSaccadeRadius * std::cos(a);
      s.y = kSaccadeCentre.y + kSaccadeRadius * std::sin(a);
    }
    if (count > 0) cursor_ += count;
  }

  // Dwells on random points of the given region, separated by saccades,
  // until the cursor reaches `until`.
  void wander(int until, Point lo, Point hi) {
    until = std::min(until, size());
    while (cursor_ < until) {
      const Point p{rng_.uniform(lo.x, hi.x), rng_.uniform(lo.y, hi.y)};
      dwell(std::min(static_cast<int>(rng_.uniform_int(20, 50)), until - cursor_), p);
      if (cursor_ < until) saccade(std::min(static_cast<int>(rng_.uniform_int(2, 5)), until - cursor_));
    }
  }

  std::vector<GazeSample> take() { return std::move(samples_); }

 private:
  std::vector<GazeSample> samples_;
  Rng& rng_;
  int cursor_ = 0;
  int phase_ = 0;
};

// Distractor region: left part of the frame, clear of every CIO box.
constexpr Point kDistractLo{0.06, 0.12};
constexpr Point kDistractHi{0.40, 0.80};
// Negative videos: a wide horizontal band.
constexpr Point kNegativeLo{0.08, 0.38};
constexpr Point kNegativeHi{0.92, 0.62};

Point distractor(Rng& rng) {
  return {rng.uniform(kDistractLo.x, kDistractHi.x), rng.uniform(kDistractLo.y, kDistractHi.y)};
}

}  // namespace

std::optional<std::string> infeasibility(const TrialSpec& spec, const Config& config) {
  auto plan = plan_window(spec, config);
  if (auto* err = std::get_if<std::string>(&plan)) return *err;
  return std::nullopt;
}

GeneratedTrial generate_trial(const TrialSpec& spec, const Config& config) {
  auto planned = plan_window(spec, config);
  if (auto* err = std::get_if<std::string>(&planned)) {
    throw InputError("infeasible trial spec for '" + spec.video_id + "': " + *err);
  }
  const WindowPlan& plan = std::get<WindowPlan>(planned);

  GeneratedTrial out;
  out.video = generate_video(spec.video_id, spec.category, spec.crash_start_s, spec.cio_first_frame);
  out.trial.trial_id = spec.video_id;
  out.trial.participant_id = "P01";

  Rng rng(spec.noise_seed);
  Renderer r(n_samples(config), config.gaze_hz, rng);
  if (spec.category == Category::kNegative) {
    r.wander(r.size(), kNegativeLo, kNegativeHi);
  } else if (spec.miss) {
    r.wander(r.size(), kDistractLo, kDistractHi);
  } else {
    const Point cio = layout_for(spec.video_id, spec.cio_first_frame).cio;
    // Everything before the landing sample stays off the CIOs. The landing
    // sample (hit_index - 1) is labelled saccade by the velocity filter,
    // so the first fixation member on the CIO is hit_index.
    const int landing = plan.hit_index == 0 ? 0 : plan.hit_index - 1;
    r.wander(landing, kDistractLo, kDistractHi);
    if (spec.planted_d() <= 0.0 || plan.full) {
      r.dwell(r.size() - r.cursor(), cio);
    } else {
      const int crash_floor = static_cast<int>(std::floor(spec.crash_start_s * config.gaze_hz));
      for (std::size_t i = 0; i < plan.segments.size(); ++i) {
        const auto& seg = plan.segments[i];
        // A dwell at the very first sample has no landing sample to lose.
        const int edge = (i == 0 && plan.hit_index == 0) ? kEdgeSamples - 1 : kEdgeSamples;
        r.dwell(seg.units + edge, seg.on_cio ? cio : distractor(rng));
        if (i + 1 < plan.segments.size()) r.saccade(seg.gap_after - kEdgeSamples);
      }
      // Trailing saccade runs past the crash; the next dwell's first
      // member lands strictly after it.
      r.saccade(crash_floor + 3 - r.cursor());
      r.dwell(r.size() - r.cursor(), cio);
    }
  }
  out.trial.samples = r.take();
  return out;
}

namespace {

// Normal trial parameters for a positive video: D of at least one second.
void draw_normal(Rng& rng, TrialSpec& spec) {
  const double l_max = spec.crash_start_s - spec.t_b() - 1.0;
  double l = -1.0;
  for (int i = 0; i < 20 && !(l >= 0.0 && l <= l_max); ++i) l = -0.8 * std::log1p(-rng.uniform());
  if (!(l >= 0.0 && l <= l_max)) l = rng.uniform(0.0, l_max);
  spec.planted_l = l;
  if (rng.bernoulli(0.15)) {
    spec.fixation_coverage = 1.0;
    spec.cio_coverage = 1.0;
  } else {
    spec.fixation_coverage = rng.uniform(0.55, 0.9);
    spec.cio_coverage = rng.bernoulli(0.15) ? 1.0 : rng.uniform(0.3, 0.85);
  }
}

void draw_late(Rng& rng, TrialSpec& spec) {
  const double hit = rng.uniform(spec.crash_start_s, std::min(spec.crash_start_s + 0.6, 4.85));
  spec.planted_l = hit - spec.t_b();
}

constexpr double kLateMaxCrash = 4.6;

VideoSpec draw_video(Rng& rng, std::string id) {
  VideoSpec v;
  v.video_id = std::move(id);
  v.category = Category::kPositive;
  v.crash_start_s = std::round(rng.uniform(3.0, 4.8) * 1000.0) / 1000.0;
  const int max_frame = std::min(25, static_cast<int>(std::floor((v.crash_start_s - 1.05) * kVideoFps)));
  v.cio_first_frame = static_cast<int>(rng.uniform_int(0, max_frame));
  return v;
}

TrialSpec spec_for(const VideoSpec& v) {
  TrialSpec s;
  s.video_id = v.video_id;
  s.category = v.category;
  s.crash_start_s = v.crash_start_s;
  s.cio_first_frame = v.cio_first_frame;
  s.planted_l = 0.0;
  s.fixation_coverage = 0.0;
  s.cio_coverage = 0.0;
  return s;
}

}  // namespace

TrialSpec random_feasible_spec(Rng& rng, const Config& config) {
  for (;;) {
    TrialSpec spec = spec_for(draw_video(rng, "rnd" + std::to_string(rng.uniform_int(0, 999999))));
    const double kind = rng.uniform();
    if (kind < 0.1) {
      spec.miss = true;
    } else if (kind < 0.2 && spec.crash_start_s <= kLateMaxCrash) {
      draw_late(rng, spec);
    } else {
      draw_normal(rng, spec);
    }
    spec.noise_seed = rng.next();
    if (!infeasibility(spec, config)) return spec;
  }
}

std::vector<VideoSpec> make_catalog(int n_pos, int n_neg, std::uint64_t seed) {
  if (n_pos < 0 || n_neg < 0) throw InputError("video counts must be non-negative");
  Rng rng(mix_seed(seed, 0xCA7ULL));
  std::vector<VideoSpec> out;
  char id[32];
  for (int i = 0; i < n_pos; ++i) {
    std::snprintf(id, sizeof(id), "pos%03d", i + 1);
    out.push_back(draw_video(rng, id));
  }
  for (int i = 0; i < n_neg; ++i) {
    std::snprintf(id, sizeof(id), "neg%03d", i + 1);
    out.push_back(VideoSpec{id, Category::kNegative, 0.0, 0});
  }
  return out;
}

namespace {

double session_duration(std::size_t n_videos) {
  if (n_videos == 0) return 0.0;
  const double clip = kVideoFrames / kVideoFps;
  return static_cast<double>(n_videos) * clip + static_cast<double>(n_videos - 1) * kBlankSeconds;
}

// Kind of positive trial to render.
enum class Kind { kNormal, kMiss, kLate };

TrialSpec draw_trial(Rng& rng, const VideoSpec& v, Kind kind, const Config& config) {
  TrialSpec spec = spec_for(v);
  spec.noise_seed = rng.next();
  if (v.category == Category::kNegative) return spec;
  if (kind == Kind::kMiss) {
    spec.miss = true;
    return spec;
  }
  for (int attempt = 0; attempt < 50; ++attempt) {
    kind == Kind::kLate ? draw_late(rng, spec) : draw_normal(rng, spec);
    if (!infeasibility(spec, config)) return spec;
  }
  spec.fixation_coverage = 1.0;
  spec.cio_coverage = 1.0;
  if (auto err = infeasibility(spec, config)) throw InvariantError("cannot draw a feasible trial: " + *err);
  return spec;
}

}  // namespace

Session generate_session(const std::vector<VideoSpec>& catalog, std::uint64_t seed, const Config& config) {
  Rng rng(mix_seed(seed, 0x5E55ULL));
  std::vector<std::size_t> order(catalog.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  rng.shuffle(order);
  Session s;
  s.participant_id = "P01";
  const double clip = kVideoFrames / kVideoFps;
  for (std::size_t pos = 0; pos < order.size(); ++pos) {
    ScheduledTrial st;
    st.spec = draw_trial(rng, catalog[order[pos]], Kind::kNormal, config);
    st.onset_s = static_cast<double>(pos) * (clip + kBlankSeconds);
    s.trials.push_back(std::move(st));
  }
  s.total_duration_s = session_duration(order.size());
  return s;
}

Session generate_session(int n_pos, int n_neg, std::uint64_t seed, const Config& config) {
  return generate_session(make_catalog(n_pos, n_neg, seed), seed, config);
}

namespace {

constexpr double kCutGap = 0.05;  // D spacing needed around a planted mTTC

// Assigns per-video mTTC so that exactly n_exceed individual planted D
// values exceed their video's mTTC, each by a clear margin.
AIReference plant_ai(const std::vector<VideoSpec>& catalog, const std::vector<StudyTrial>& trials,
                     int n_exceed, Rng& rng) {
  std::map<std::string, std::vector<double>> d_by_video;
  for (const auto& t : trials) {
    if (t.spec.category == Category::kPositive && !t.spec.miss) {
      d_by_video[t.spec.video_id].push_back(t.spec.planted_d());
    }
  }
  AIReference ai;
  std::vector<std::string> ids;
  for (const auto& v : catalog) {
    if (v.category != Category::kPositive) continue;
    ids.push_back(v.video_id);
    auto& d = d_by_video[v.video_id];
    std::sort(d.begin(), d.end());
    if (d.empty()) {
      ai[v.video_id] = rng.uniform(1.5, 3.5);
      continue;
    }
    double mean = 0.0;
    for (double x : d) mean += x;
    mean /= static_cast<double>(d.size());
    ai[v.video_id] = std::max(d.back() + kCutGap, mean + rng.uniform(0.6, 1.4));
  }
  rng.shuffle(ids);
  // A cut leaving the top e values above the threshold, if it is clear.
  auto cut_for = [&](const std::vector<double>& d, std::size_t e) -> std::optional<double> {
    const std::size_t m = d.size();
    const double above = d[m - e];
    const double below = e < m ? d[m - e - 1] : above - 2.0 * kCutGap;
    if (above - below < kCutGap) return std::nullopt;
    const double cut = 0.5 * (above + below);
    if (cut < 0.0) return std::nullopt;
    return cut;
  };
  int remaining = n_exceed;
  std::map<std::string, bool> used;
  for (std::size_t cap : {std::size_t{3}, std::numeric_limits<std::size_t>::max()}) {
    for (const auto& id : ids) {
      if (remaining == 0) break;
      if (used[id]) continue;
      const auto& d = d_by_video[id];
      const std::size_t max_e = std::min({cap, d.size(), static_cast<std::size_t>(remaining)});
      for (std::size_t e = 1; e <= max_e; ++e) {
        if (auto cut = cut_for(d, e)) {
          ai[id] = *cut;
          used[id] = true;
          remaining -= static_cast<int>(e);
          break;
        }
      }
    }
  }
  if (remaining != 0) {
    throw InputError("cannot plant " + std::to_string(n_exceed) + " D values above mTTC");
  }
  return ai;
}

}  // namespace

Study plan_study(const StudyParams& params, const Config& config) {
  if (params.n_participants < 1 || params.n_sessions < 1) {
    throw InputError("study needs at least one participant and one session");
  }
  if (params.n_miss < 0 || params.n_late < 0 || params.n_exceed < 0) {
    throw InputError("planted counts must be non-negative");
  }
  const auto catalog = make_catalog(params.n_pos, params.n_neg, params.seed);
  Study study;
  for (const auto& v : catalog) {
    study.videos.push_back(generate_video(v.video_id, v.category, v.crash_start_s, v.cio_first_frame));
  }
  study.session_duration_s = session_duration(catalog.size());

  // Positive slots in (participant, session, catalog) order.
  const std::size_t per_session = static_cast<std::size_t>(params.n_pos);
  const std::size_t slots = per_session * static_cast<std::size_t>(params.n_participants * params.n_sessions);
  if (static_cast<std::size_t>(params.n_miss + params.n_late) > slots) {
    throw InputError("more planted misses and late hits than positive trials");
  }
  Rng rng(mix_seed(params.seed, 0x57D9ULL));
  std::vector<Kind> kinds(slots, Kind::kNormal);
  std::vector<std::size_t> idx(slots);
  for (std::size_t i = 0; i < slots; ++i) idx[i] = i;
  rng.shuffle(idx);
  int misses = 0, lates = 0;
  for (auto i : idx) {
    if (misses < params.n_miss) {
      kinds[i] = Kind::kMiss;
      ++misses;
    } else if (lates < params.n_late && catalog[i % per_session].crash_start_s <= kLateMaxCrash) {
      kinds[i] = Kind::kLate;
      ++lates;
    }
  }
  if (lates < params.n_late) throw InputError("not enough videos can host a late CIO fixation");

  const double clip = kVideoFrames / kVideoFps;
  std::size_t slot = 0;
  for (int p = 0; p < params.n_participants; ++p) {
    for (int s = 1; s <= params.n_sessions; ++s) {
      char pid[16];
      std::snprintf(pid, sizeof(pid), "P%02d", p + 1);
      Rng srng(mix_seed(params.seed, 0x1000ULL + static_cast<std::uint64_t>(p) * 64 + static_cast<std::uint64_t>(s)));
      std::vector<std::size_t> order(catalog.size());
      for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
      srng.shuffle(order);
      // Trial parameters are drawn in catalog order so that the kind of a
      // slot does not depend on presentation order.
      std::vector<TrialSpec> specs(catalog.size());
      for (std::size_t v = 0; v < catalog.size(); ++v) {
        const Kind kind = catalog[v].category == Category::kPositive ? kinds[slot + v] : Kind::kNormal;
        specs[v] = draw_trial(srng, catalog[v], kind, config);
      }
      slot += per_session;
      for (std::size_t pos = 0; pos < order.size(); ++pos) {
        StudyTrial t;
        t.participant_id = pid;
        t.session_index = s;
        t.position = static_cast<int>(pos);
        t.onset_s = static_cast<double>(pos) * (clip + kBlankSeconds);
        t.spec = specs[order[pos]];
        t.trial_id = std::string(pid) + "_s" + std::to_string(s) + "_" + t.spec.video_id;
        study.trials.push_back(std::move(t));
      }
    }
  }
  study.ai = plant_ai(catalog, study.trials, params.n_exceed, rng);
  return study;
}

std::vector<Trial> render_study(const Study& study, const Config& config) {
  std::vector<Trial> out;
  out.reserve(study.trials.size());
  for (const auto& t : study.trials) {
    auto g = generate_trial(t.spec, config);
    g.trial.trial_id = t.trial_id;
    g.trial.participant_id = t.participant_id;
    g.trial.session_index = t.session_index;
    out.push_back(std::move(g.trial));
  }
  return out;
}

void write_study(const Study& study, const Config& config, const std::string& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create '" + out_dir + "': " + ec.message());
  const std::filesystem::path dir(out_dir);
  write_file((dir / "gaze.csv").string(), serialize_gaze_log(render_study(study, config)));
  write_file((dir / "annotations.json").string(), serialize_annotations(study.videos));
  write_file((dir / "ai.csv").string(), serialize_ai_reference(study.ai));
  write_file((dir / "config.cfg").string(), serialize_config(config));
  std::string truth =
      "trial_id,participant_id,session,position,onset_s,video_id,category,T_B,planted_L,planted_D,"
      "fixation_coverage,cio_coverage,miss\n";
  for (const auto& t : study.trials) {
    const auto& s = t.spec;
    const bool pos = s.category == Category::kPositive;
    truth += t.trial_id + "," + t.participant_id + "," + std::to_string(t.session_index) + "," +
             std::to_string(t.position) + "," + fmt_g9(t.onset_s) + "," + s.video_id + "," +
             (pos ? "positive" : "negative") + ",";
    if (pos) {
      truth += fmt_g9(s.t_b()) + ",";
      truth += s.miss ? "," : fmt_g9(s.planted_l) + "," + fmt_g9(s.planted_d());
      truth += "," + fmt_g9(s.fixation_coverage) + "," + fmt_g9(s.cio_coverage) + "," +
               (s.miss ? "1" : "0");
    } else {
      truth += ",,,,,";
    }
    truth += "\n";
  }
  write_file((dir / "truth.csv").string(), truth);
}

double oracle_length(const std::vector<Interval>& intervals, Interval window, double dt) {
  if (!(dt > 0.0)) throw InputError("oracle_length: dt must be positive");
  if (!(window.end > window.start)) return 0.0;
  std::size_t count = 0;
  const auto first = static_cast<long long>(std::ceil(window.start / dt));
  for (long long k = first;; ++k) {
    const double p = static_cast<double>(k) * dt;
    if (p >= window.end) break;
    if (p < window.start) continue;
    for (const auto& iv : intervals) {
      if (p >= iv.start && p < iv.end) {
        ++count;
        break;
      }
    }
  }
  return static_cast<double>(count) * dt;
}

}  // namespace gam::synth
