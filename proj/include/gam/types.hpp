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

#ifndef GAM_TYPES_HPP_
#define GAM_TYPES_HPP_

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace gam {

// Movement label attached to a gaze sample. Unlabeled samples are filled
// in by the velocity classifier; the other three pass through unchanged.
enum class Label { kFixation, kSaccade, kUnknown, kUnlabeled };

// One gaze point. t is seconds from the start of the trial's video; x, y
// are normalized frame coordinates with the origin at the bottom-left.
// Invalid samples (blink, track loss) keep their slot but carry NaN
// coordinates when the log left them blank.
struct GazeSample {
  double t = 0.0;
  double x = 0.0;
  double y = 0.0;
  Label label = Label::kUnlabeled;
  bool valid = true;
};

// One participant watching one video once.
struct Trial {
  std::string trial_id;
  std::string participant_id;
  int session_index = 1;
  std::vector<GazeSample> samples;
};

enum class Category { kPositive, kNegative };

// Axis-aligned box in normalized coordinates: (x1, y1) lower-left,
// (x2, y2) upper-right. Membership is closed on every edge.
struct Box {
  double x1 = 0.0;
  double y1 = 0.0;
  double x2 = 0.0;
  double y2 = 0.0;

  bool contains(double x, double y) const {
    return x >= x1 && x <= x2 && y >= y1 && y <= y2;
  }
  friend bool operator==(const Box&, const Box&) = default;
};

struct TrackBox {
  int frame = 0;
  Box box;
};

// Boxes of one crash-involving object, keyed by 0-based frame index.
struct CioTrack {
  std::string object_id;
  std::vector<TrackBox> boxes;
};

struct VideoMeta {
  std::string video_id;
  Category category = Category::kNegative;
  double fps = 10.0;
  int n_frames = 50;
  int frame_width_px = 1280;
  int frame_height_px = 720;
  std::optional<double> crash_start_s;
  std::vector<CioTrack> cio_tracks;

  double duration_s() const { return n_frames / fps; }
  bool positive() const { return category == Category::kPositive; }
};

// Per-video mean time-to-crash of the reference anticipation model.
using AIReference = std::map<std::string, double>;

}  // namespace gam

#endif  // GAM_TYPES_HPP_
