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

#include <cmath>
#include <vector>

#include "gam/error.hpp"
#include "gam/intervals.hpp"
#include "gam/synth.hpp"

using gam::Interval;
using gam::IntervalSet;

TEST_SUITE("intervals") {

TEST_CASE("normalize sorts, merges and drops empty pieces") {
  const auto s = IntervalSet::normalize({{3, 4}, {0, 1}, {0.5, 2}, {2, 2.5}, {5, 5}});
  REQUIRE(s.intervals().size() == 2);
  CHECK(s.intervals()[0] == Interval{0, 2.5});
  CHECK(s.intervals()[1] == Interval{3, 4});
  CHECK(s.total_length() == 3.5);
  CHECK(IntervalSet::normalize({}).empty());
  CHECK_THROWS_AS(IntervalSet::normalize({{2, 1}}), gam::InputError);
  // Float noise below the merge gap does not split a run.
  CHECK(IntervalSet::normalize({{0, 0.1 + 0.2}, {0.3, 1}}).intervals().size() == 1);
}

TEST_CASE("intersect clips to the window") {
  const auto s = IntervalSet::normalize({{0, 1}, {2, 3}, {4, 6}});
  const auto w = s.intersect({0.5, 4.5});
  REQUIRE(w.intervals().size() == 3);
  CHECK(w.intervals().front() == Interval{0.5, 1});
  CHECK(w.intervals().back() == Interval{4, 4.5});
  CHECK(w.total_length() == doctest::Approx(2.0));
  CHECK(s.intersect({1, 2}).empty());
  CHECK(s.intersect({3, 3}).empty());
  CHECK(s.intersect({-10, 10}) == s);
}

TEST_CASE("unite is commutative and canonical") {
  const auto a = IntervalSet::normalize({{0, 1}, {3, 4}});
  const auto b = IntervalSet::normalize({{0.5, 3.5}});
  CHECK(a.unite(b) == b.unite(a));
  CHECK(a.unite(b).intervals().size() == 1);
  CHECK(a.unite(IntervalSet{}) == a);
}

TEST_CASE("millisecond endpoints match the grid count exactly") {
  gam::synth::Rng rng(11);
  for (int c = 0; c < 300; ++c) {
    std::vector<Interval> raw;
    const int n = static_cast<int>(rng.uniform_int(0, 12));
    for (int i = 0; i < n; ++i) {
      const auto a = rng.uniform_int(0, 5000), len = rng.uniform_int(0, 1500);
      raw.push_back({a / 1000.0, (a + len) / 1000.0});
    }
    const auto a = rng.uniform_int(0, 5000), b = rng.uniform_int(0, 5000);
    const Interval window{std::min(a, b) / 1000.0, std::max(a, b) / 1000.0};
    const double analytic = IntervalSet::normalize(raw).intersect(window).total_length();
    CHECK(std::abs(analytic - gam::synth::oracle_length(raw, window)) < 1e-6);
  }
}

TEST_CASE("dense random sets stay within one grid step per component") {
  gam::synth::Rng rng(12);
  for (int c = 0; c < 300; ++c) {
    std::vector<Interval> raw;
    const int n = static_cast<int>(rng.uniform_int(1, 40));
    for (int i = 0; i < n; ++i) {
      const double a = rng.uniform(0.0, 5.0);
      raw.push_back({a, a + rng.uniform(0.0, 0.3)});
    }
    const double a = rng.uniform(0.0, 5.0), b = rng.uniform(0.0, 5.0);
    const Interval window{std::min(a, b), std::max(a, b)};
    const auto set = IntervalSet::normalize(raw).intersect(window);
    const double bound = 1e-3 * static_cast<double>(set.intervals().size() + 1);
    CHECK(std::abs(set.total_length() - gam::synth::oracle_length(raw, window)) <= bound);
  }
}

TEST_CASE("measure is additive over a split window") {
  gam::synth::Rng rng(13);
  for (int c = 0; c < 200; ++c) {
    std::vector<Interval> raw;
    for (int i = 0; i < 8; ++i) {
      const double a = rng.uniform(0.0, 10.0);
      raw.push_back({a, a + rng.uniform(0.0, 2.0)});
    }
    const auto s = IntervalSet::normalize(raw);
    const double m = rng.uniform(0.0, 12.0);
    CHECK(s.intersect({0, m}).total_length() + s.intersect({m, 12}).total_length() ==
          doctest::Approx(s.total_length()).epsilon(1e-12));
  }
}

}  // TEST_SUITE
