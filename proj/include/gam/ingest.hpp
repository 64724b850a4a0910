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

#ifndef GAM_INGEST_HPP_
#define GAM_INGEST_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gam/config.hpp"
#include "gam/types.hpp"

namespace gam {

// Gaze log CSV: trial_id,participant_id,session,t,x,y,label,valid
// Trials are keyed by (participant_id, session, trial_id) and returned in
// that lexicographic order, samples sorted by t. A timestamp that goes
// backwards inside one trial is an error naming the line.
std::vector<Trial> parse_gaze_log(std::string_view text, const Config& config,
                                  const std::string& source = "gaze");
std::string serialize_gaze_log(const std::vector<Trial>& trials);

char label_token(Label label);

// Annotation JSON. Pixel boxes use the image convention (origin top-left,
// y down) and are normalized to the bottom-left frame on the way in.
std::vector<VideoMeta> parse_annotations(std::string_view text,
                                         const std::string& source = "annotations");
std::string serialize_annotations(const std::vector<VideoMeta>& videos);

// AI reference CSV: video_id,mttc_s
AIReference parse_ai_reference(std::string_view text, const std::string& source = "ai");
std::string serialize_ai_reference(const AIReference& ai);

// Maps a trial id onto a known video id: an exact match, otherwise the
// longest video id that ends the trial id after one of the separators
// "_-/:.". Returns nullopt when nothing matches.
std::optional<std::string> resolve_video_id(std::string_view trial_id,
                                            const std::vector<VideoMeta>& videos);

enum class Severity { kError, kWarning };

struct Issue {
  Severity severity = Severity::kWarning;
  std::string subject;  // trial key or video id
  std::string message;
};

struct ValidationReport {
  std::vector<Issue> issues;

  std::size_t errors() const;
  std::size_t warnings() const;
  bool clean() const { return issues.empty(); }
  std::string to_json() const;
};

// Trial key used in reports: participant/session/trial_id.
std::string trial_key(const Trial& trial);

// Average valid samples per video frame below which a recording is
// flagged as degraded (the tracker delivers about 12 per frame at 120 Hz).
inline constexpr double kMinValidSamplesPerFrame = 6.0;

ValidationReport validate_dataset(const std::vector<Trial>& trials,
                                  const std::vector<VideoMeta>& videos,
                                  const AIReference& ai);

}  // namespace gam

#endif  // GAM_INGEST_HPP_
