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

#include "gam/ingest.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <tuple>

#include <json.hpp>

#include "gam/error.hpp"
#include "gam/format.hpp"

namespace gam {

namespace {

constexpr std::string_view kGazeHeader = "trial_id,participant_id,session,t,x,y,label,valid";
constexpr std::string_view kAiHeader = "video_id,mttc_s";

// Iterates lines, stripping a trailing '\r'.
template <typename Fn>
void for_each_line(std::string_view text, Fn&& fn) {
  std::size_t pos = 0, line_no = 0;
  while (pos < text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    pos = nl + 1;
    fn(++line_no, line);
  }
}

Label parse_label(std::string_view tok) {
  if (tok == "F") return Label::kFixation;
  if (tok == "S") return Label::kSaccade;
  if (tok == "U") return Label::kUnknown;
  if (tok == "-") return Label::kUnlabeled;
  throw InputError("unknown label token '" + std::string(tok) + "'");
}

}  // namespace

char label_token(Label label) {
  switch (label) {
    case Label::kFixation: return 'F';
    case Label::kSaccade: return 'S';
    case Label::kUnknown: return 'U';
    case Label::kUnlabeled: return '-';
  }
  return '-';
}

std::vector<Trial> parse_gaze_log(std::string_view text, const Config& /*config*/,
                                  const std::string& source) {
  using Key = std::tuple<std::string, int, std::string>;
  std::map<Key, std::size_t> index;
  std::vector<Trial> trials;
  std::vector<double> last_t;
  bool header_seen = false;

  Key cached_key;
  std::size_t cached = std::numeric_limits<std::size_t>::max();

  for_each_line(text, [&](std::size_t line_no, std::string_view line) {
    if (trim(line).empty()) return;
    if (!header_seen) {
      if (trim(line) != kGazeHeader) {
        throw InputError(source, line_no, "expected header '" + std::string(kGazeHeader) + "'");
      }
      header_seen = true;
      return;
    }
    const auto f = split_csv(line);
    if (f.size() != 8) {
      throw InputError(source, line_no, "expected 8 fields, got " + std::to_string(f.size()));
    }
    const auto trial_id = trim(f[0]);
    const auto participant = trim(f[1]);
    if (trial_id.empty() || participant.empty()) {
      throw InputError(source, line_no, "empty trial_id or participant_id");
    }
    const auto session = parse_int(f[2]);
    if (!session || *session < 1) throw InputError(source, line_no, "session must be an integer >= 1");

    GazeSample s;
    const auto t = parse_double(f[3]);
    if (!t || !std::isfinite(*t) || *t < 0.0) {
      throw InputError(source, line_no, "t must be a finite number >= 0");
    }
    s.t = *t;
    const auto valid = trim(f[7]);
    if (valid == "1") s.valid = true;
    else if (valid == "0") s.valid = false;
    else throw InputError(source, line_no, "valid must be 0 or 1");
    try {
      s.label = parse_label(trim(f[6]));
    } catch (const InputError& e) {
      throw InputError(source, line_no, e.what());
    }
    const auto x = parse_double(f[4]);
    const auto y = parse_double(f[5]);
    if (s.valid) {
      if (!x || !y) throw InputError(source, line_no, "valid sample without coordinates");
      if (!(*x >= 0.0 && *x <= 1.0 && *y >= 0.0 && *y <= 1.0)) {
        throw InputError(source, line_no, "valid sample coordinates outside [0,1]");
      }
    } else if ((!x && !trim(f[4]).empty()) || (!y && !trim(f[5]).empty())) {
      throw InputError(source, line_no, "unparsable coordinates");
    }
    const double nan = std::numeric_limits<double>::quiet_NaN();
    s.x = x.value_or(nan);
    s.y = y.value_or(nan);

    const int sess = static_cast<int>(*session);
    if (cached == std::numeric_limits<std::size_t>::max() || std::get<0>(cached_key) != participant ||
        std::get<1>(cached_key) != sess || std::get<2>(cached_key) != trial_id) {
      cached_key = Key(std::string(participant), sess, std::string(trial_id));
      auto [it, inserted] = index.try_emplace(cached_key, trials.size());
      if (inserted) {
        Trial tr;
        tr.trial_id = std::string(trial_id);
        tr.participant_id = std::string(participant);
        tr.session_index = sess;
        trials.push_back(std::move(tr));
        last_t.push_back(-std::numeric_limits<double>::infinity());
      }
      cached = it->second;
    }
    if (s.t < last_t[cached]) {
      throw InputError(source, line_no, "timestamp regression within trial '" +
                                            std::string(trial_id) + "'");
    }
    last_t[cached] = s.t;
    trials[cached].samples.push_back(s);
  });

  if (!header_seen) return {};
  std::vector<Trial> ordered;
  ordered.reserve(trials.size());
  for (auto& [key, i] : index) ordered.push_back(std::move(trials[i]));
  return ordered;
}

std::string serialize_gaze_log(const std::vector<Trial>& trials) {
  std::string out(kGazeHeader);
  out += '\n';
  for (const auto& tr : trials) {
    const std::string prefix =
        tr.trial_id + "," + tr.participant_id + "," + std::to_string(tr.session_index) + ",";
    for (const auto& s : tr.samples) {
      out += prefix;
      out += fmt_fixed(s.t, 9);
      out += ',';
      if (!std::isnan(s.x)) out += fmt_fixed(s.x, 9);
      out += ',';
      if (!std::isnan(s.y)) out += fmt_fixed(s.y, 9);
      out += ',';
      out += label_token(s.label);
      out += s.valid ? ",1\n" : ",0\n";
    }
  }
  return out;
}

std::vector<VideoMeta> parse_annotations(std::string_view text, const std::string& source) {
  using nlohmann::json;
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw InputError(source + ": invalid JSON: " + e.what());
  }
  auto fail = [&](const std::string& vid, const std::string& msg) -> InputError {
    return InputError(source + ": video '" + vid + "': " + msg);
  };
  if (!doc.is_object() || !doc.contains("videos") || !doc["videos"].is_array()) {
    throw InputError(source + ": expected an object with a 'videos' array");
  }
  std::vector<VideoMeta> videos;
  std::set<std::string> seen;
  for (const auto& v : doc["videos"]) {
    if (!v.is_object() || !v.contains("video_id") || !v["video_id"].is_string()) {
      throw InputError(source + ": every video needs a string video_id");
    }
    VideoMeta m;
    m.video_id = v["video_id"].get<std::string>();
    if (!seen.insert(m.video_id).second) throw fail(m.video_id, "duplicate video_id");
    try {
      const auto cat = v.at("category").get<std::string>();
      if (cat == "positive") m.category = Category::kPositive;
      else if (cat == "negative") m.category = Category::kNegative;
      else throw fail(m.video_id, "category must be 'positive' or 'negative'");
      m.fps = v.at("fps").get<double>();
      m.n_frames = v.at("n_frames").get<int>();
      m.frame_width_px = v.at("frame_width_px").get<int>();
      m.frame_height_px = v.at("frame_height_px").get<int>();
      if (v.contains("crash_start_s") && !v["crash_start_s"].is_null()) {
        m.crash_start_s = v["crash_start_s"].get<double>();
      }
    } catch (const json::exception& e) {
      throw fail(m.video_id, std::string("bad or missing field: ") + e.what());
    }
    if (!(m.fps > 0.0) || !std::isfinite(m.fps)) throw fail(m.video_id, "fps must be positive");
    if (m.n_frames < 1) throw fail(m.video_id, "n_frames must be positive");
    if (m.frame_width_px < 1 || m.frame_height_px < 1) {
      throw fail(m.video_id, "frame size must be positive");
    }
    const double W = m.frame_width_px, H = m.frame_height_px;
    if (v.contains("cio_tracks") && !v["cio_tracks"].is_null()) {
      if (!v["cio_tracks"].is_array()) throw fail(m.video_id, "cio_tracks must be an array");
      for (const auto& t : v["cio_tracks"]) {
        CioTrack track;
        try {
          const auto& oid = t.at("object_id");
          track.object_id = oid.is_string() ? oid.get<std::string>() : oid.dump();
          for (const auto& b : t.at("boxes")) {
            TrackBox tb;
            tb.frame = b.at("frame").get<int>();
            const double x1 = b.at("x1_px").get<double>(), y1 = b.at("y1_px").get<double>();
            const double x2 = b.at("x2_px").get<double>(), y2 = b.at("y2_px").get<double>();
            if (tb.frame < 0 || tb.frame >= m.n_frames) {
              throw fail(m.video_id, "box frame " + std::to_string(tb.frame) + " outside [0, n_frames)");
            }
            if (!(x1 >= 0.0 && x2 <= W && y1 >= 0.0 && y2 <= H)) {
              throw fail(m.video_id, "box outside frame at frame " + std::to_string(tb.frame));
            }
            if (!(x1 < x2 && y1 < y2)) {
              throw fail(m.video_id, "degenerate box at frame " + std::to_string(tb.frame));
            }
            tb.box = Box{x1 / W, 1.0 - y2 / H, x2 / W, 1.0 - y1 / H};
            track.boxes.push_back(tb);
          }
        } catch (const json::exception& e) {
          throw fail(m.video_id, std::string("bad CIO track: ") + e.what());
        }
        std::stable_sort(track.boxes.begin(), track.boxes.end(),
                         [](const TrackBox& a, const TrackBox& b) { return a.frame < b.frame; });
        m.cio_tracks.push_back(std::move(track));
      }
    }
    std::size_t n_boxes = 0;
    for (const auto& t : m.cio_tracks) n_boxes += t.boxes.size();
    if (m.positive()) {
      if (!m.crash_start_s) throw fail(m.video_id, "positive video without crash_start_s");
      if (!(*m.crash_start_s >= 3.0 && *m.crash_start_s <= m.duration_s())) {
        throw fail(m.video_id, "crash_start_s must lie in [3, duration]");
      }
      if (n_boxes == 0) throw fail(m.video_id, "positive video without annotated CIO boxes");
    } else {
      if (m.crash_start_s) throw fail(m.video_id, "negative video carrying crash_start_s");
      if (!m.cio_tracks.empty()) throw fail(m.video_id, "negative video carrying cio_tracks");
    }
    videos.push_back(std::move(m));
  }
  return videos;
}

std::string serialize_annotations(const std::vector<VideoMeta>& videos) {
  using nlohmann::ordered_json;
  ordered_json arr = ordered_json::array();
  for (const auto& m : videos) {
    ordered_json v;
    v["video_id"] = m.video_id;
    v["category"] = m.positive() ? "positive" : "negative";
    v["fps"] = m.fps;
    v["n_frames"] = m.n_frames;
    v["frame_width_px"] = m.frame_width_px;
    v["frame_height_px"] = m.frame_height_px;
    if (m.crash_start_s) v["crash_start_s"] = *m.crash_start_s;
    ordered_json tracks = ordered_json::array();
    const double W = m.frame_width_px, H = m.frame_height_px;
    for (const auto& t : m.cio_tracks) {
      ordered_json boxes = ordered_json::array();
      for (const auto& tb : t.boxes) {
        ordered_json b;
        b["frame"] = tb.frame;
        b["x1_px"] = tb.box.x1 * W;
        b["y1_px"] = (1.0 - tb.box.y2) * H;
        b["x2_px"] = tb.box.x2 * W;
        b["y2_px"] = (1.0 - tb.box.y1) * H;
        boxes.push_back(std::move(b));
      }
      tracks.push_back(ordered_json{{"object_id", t.object_id}, {"boxes", std::move(boxes)}});
    }
    v["cio_tracks"] = std::move(tracks);
    arr.push_back(std::move(v));
  }
  ordered_json doc;
  doc["videos"] = std::move(arr);
  return doc.dump(1) + "\n";
}

AIReference parse_ai_reference(std::string_view text, const std::string& source) {
  AIReference ai;
  bool header_seen = false;
  for_each_line(text, [&](std::size_t line_no, std::string_view line) {
    if (trim(line).empty()) return;
    if (!header_seen) {
      if (trim(line) != kAiHeader) {
        throw InputError(source, line_no, "expected header '" + std::string(kAiHeader) + "'");
      }
      header_seen = true;
      return;
    }
    const auto f = split_csv(line);
    if (f.size() != 2) throw InputError(source, line_no, "expected 2 fields");
    const auto id = std::string(trim(f[0]));
    if (id.empty()) throw InputError(source, line_no, "empty video_id");
    const auto v = parse_double(f[1]);
    if (!v || !std::isfinite(*v)) throw InputError(source, line_no, "mttc_s must be a finite number");
    if (*v < 0.0) throw InputError(source, line_no, "negative mttc_s for '" + id + "'");
    if (!ai.emplace(id, *v).second) throw InputError(source, line_no, "duplicate video_id '" + id + "'");
  });
  return ai;
}

std::string serialize_ai_reference(const AIReference& ai) {
  std::string out(kAiHeader);
  out += '\n';
  for (const auto& [id, v] : ai) out += id + "," + fmt_g9(v) + "\n";
  return out;
}

std::optional<std::string> resolve_video_id(std::string_view trial_id,
                                            const std::vector<VideoMeta>& videos) {
  const VideoMeta* best = nullptr;
  for (const auto& v : videos) {
    if (v.video_id == trial_id) return v.video_id;
    const auto& id = v.video_id;
    if (id.size() < trial_id.size() && trial_id.ends_with(id)) {
      const char sep = trial_id[trial_id.size() - id.size() - 1];
      if (std::string_view("_-/:.").find(sep) != std::string_view::npos &&
          (!best || id.size() > best->video_id.size())) {
        best = &v;
      }
    }
  }
  if (best) return best->video_id;
  return std::nullopt;
}

std::size_t ValidationReport::errors() const {
  return static_cast<std::size_t>(std::count_if(issues.begin(), issues.end(), [](const Issue& i) {
    return i.severity == Severity::kError;
  }));
}

std::size_t ValidationReport::warnings() const { return issues.size() - errors(); }

std::string ValidationReport::to_json() const {
  nlohmann::ordered_json doc;
  doc["n_issues"] = issues.size();
  doc["n_errors"] = errors();
  doc["n_warnings"] = warnings();
  auto arr = nlohmann::ordered_json::array();
  for (const auto& i : issues) {
    arr.push_back(nlohmann::ordered_json{
        {"severity", i.severity == Severity::kError ? "error" : "warning"},
        {"subject", i.subject},
        {"message", i.message}});
  }
  doc["issues"] = std::move(arr);
  return doc.dump(1) + "\n";
}

std::string trial_key(const Trial& trial) {
  return trial.participant_id + "/" + std::to_string(trial.session_index) + "/" + trial.trial_id;
}

ValidationReport validate_dataset(const std::vector<Trial>& trials,
                                  const std::vector<VideoMeta>& videos,
                                  const AIReference& ai) {
  ValidationReport report;
  std::map<std::string, const VideoMeta*> by_id;
  for (const auto& v : videos) by_id[v.video_id] = &v;

  for (const auto& tr : trials) {
    const auto key = trial_key(tr);
    const auto vid = resolve_video_id(tr.trial_id, videos);
    if (!vid) {
      report.issues.push_back({Severity::kError, key, "trial references unknown video"});
    }
    const auto n_valid = static_cast<std::size_t>(
        std::count_if(tr.samples.begin(), tr.samples.end(), [](const GazeSample& s) { return s.valid; }));
    if (tr.samples.empty() || 2 * n_valid < tr.samples.size()) {
      report.issues.push_back({Severity::kWarning, key,
                               "fewer than 50% valid samples (" + std::to_string(n_valid) + " of " +
                                   std::to_string(tr.samples.size()) + ")"});
    } else if (vid) {
      const double per_frame = static_cast<double>(n_valid) / by_id[*vid]->n_frames;
      if (per_frame < kMinValidSamplesPerFrame) {
        report.issues.push_back({Severity::kWarning, key,
                                 "average valid samples per frame " + fmt_g9(per_frame) +
                                     " below " + fmt_g9(kMinValidSamplesPerFrame)});
      }
    }
  }
  for (const auto& v : videos) {
    if (v.positive() && !ai.count(v.video_id)) {
      report.issues.push_back({Severity::kWarning, v.video_id, "positive video without AI reference"});
    }
  }
  for (const auto& [id, mttc] : ai) {
    auto it = by_id.find(id);
    if (it == by_id.end() || !it->second->positive()) {
      report.issues.push_back({Severity::kWarning, id, "AI reference for a video that is not a known positive video"});
    }
  }
  return report;
}

}  // namespace gam
