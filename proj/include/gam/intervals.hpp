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

#ifndef GAM_INTERVALS_HPP_
#define GAM_INTERVALS_HPP_

#include <utility>
#include <vector>

namespace gam {

struct Interval {
  double start = 0.0;
  double end = 0.0;

  double length() const { return end - start; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

// Finite union of time intervals in canonical form: sorted, every element
// has start < end, and neighbours are separated by more than kMergeGap.
// Open/closed endpoints are not distinguished; only measure matters.
class IntervalSet {
 public:
  // Intervals closer than this are merged to absorb float noise.
  static constexpr double kMergeGap = 1e-9;

  IntervalSet() = default;

  // Canonicalizes an arbitrary list. Zero-length pairs are dropped;
  // start > end throws InputError.
  static IntervalSet normalize(std::vector<Interval> raw);

  IntervalSet intersect(Interval window) const;
  IntervalSet unite(const IntervalSet& other) const;
  double total_length() const;

  bool empty() const { return intervals_.empty(); }
  const std::vector<Interval>& intervals() const { return intervals_; }

  friend bool operator==(const IntervalSet&, const IntervalSet&) = default;

 private:
  std::vector<Interval> intervals_;
};

}  // namespace gam

#endif  // GAM_INTERVALS_HPP_
