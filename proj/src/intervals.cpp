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

#include "gam/intervals.hpp"

#include <algorithm>
#include <cmath>

#include "gam/error.hpp"
#include "gam/format.hpp"

namespace gam {

IntervalSet IntervalSet::normalize(std::vector<Interval> raw) {
  for (const auto& iv : raw) {
    if (!(iv.start <= iv.end)) {
      throw InputError("interval start " + fmt_g9(iv.start) + " exceeds end " + fmt_g9(iv.end));
    }
  }
  std::erase_if(raw, [](const Interval& iv) { return iv.end - iv.start <= 0.0; });
  std::sort(raw.begin(), raw.end(), [](const Interval& a, const Interval& b) {
    return a.start < b.start || (a.start == b.start && a.end < b.end);
  });
  IntervalSet out;
  for (const auto& iv : raw) {
    if (!out.intervals_.empty() && iv.start - out.intervals_.back().end < kMergeGap) {
      out.intervals_.back().end = std::max(out.intervals_.back().end, iv.end);
    } else {
      out.intervals_.push_back(iv);
    }
  }
  return out;
}

IntervalSet IntervalSet::intersect(Interval window) const {
  IntervalSet out;
  if (!(window.end > window.start)) return out;
  // First element that ends after the window opens.
  auto it = std::upper_bound(intervals_.begin(), intervals_.end(), window.start,
                             [](double s, const Interval& iv) { return s < iv.end; });
  for (; it != intervals_.end() && it->start < window.end; ++it) {
    const double s = std::max(it->start, window.start);
    const double e = std::min(it->end, window.end);
    if (e > s) out.intervals_.push_back({s, e});
  }
  return out;
}

IntervalSet IntervalSet::unite(const IntervalSet& other) const {
  std::vector<Interval> all = intervals_;
  all.insert(all.end(), other.intervals_.begin(), other.intervals_.end());
  return normalize(std::move(all));
}

double IntervalSet::total_length() const {
  double sum = 0.0;
  for (const auto& iv : intervals_) sum += iv.end - iv.start;
  return sum;
}

}  // namespace gam
