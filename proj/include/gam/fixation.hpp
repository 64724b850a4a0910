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

#ifndef GAM_FIXATION_HPP_
#define GAM_FIXATION_HPP_

#include <cstddef>
#include <span>
#include <vector>

#include "gam/config.hpp"
#include "gam/intervals.hpp"
#include "gam/types.hpp"

namespace gam {

// A run of fixation samples: starts at `start`, lasts `duration` (last
// member time minus first), centred on the mean member coordinate.
struct Fixation {
  std::size_t k = 0;
  double start = 0.0;
  double duration = 0.0;
  double cx = 0.0;
  double cy = 0.0;
  // Indices into the trial's sample vector.
  std::vector<std::size_t> members;

  double end() const { return start + duration; }
};

// Visual angle between the two gaze points divided by the time between
// them, in degrees per second. The eye sits on the normal through the
// screen centre at viewer_distance_mm. Throws InputError unless a.t < b.t.
double angular_velocity(const GazeSample& a, const GazeSample& b, const Config& config);

// Visual angle in degrees between two normalized screen points.
double visual_angle_deg(double ax, double ay, double bx, double by, const Config& config);

// I-VT labelling. Unlabeled valid samples get kFixation when the centred
// velocity estimate (previous to next valid sample; one-sided at the ends)
// is below the threshold and kSaccade otherwise. Unlabeled invalid samples
// become kUnknown. Samples that already carry a label are left untouched.
std::vector<GazeSample> classify_samples(std::span<const GazeSample> samples, const Config& config);

// Groups classified samples into fixations. Valid saccade samples end a
// run; unknown and invalid samples are bridged as long as consecutive
// members stay within max_gap_ms. Runs shorter than min_fixation_ms are
// dropped.
std::vector<Fixation> group_fixations(std::span<const GazeSample> samples, const Config& config);

// Union of [start, end] over all fixations.
IntervalSet fixation_union(std::span<const Fixation> fixations);

}  // namespace gam

#endif  // GAM_FIXATION_HPP_
