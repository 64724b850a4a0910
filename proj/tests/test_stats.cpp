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
#include <numbers>
#include <vector>

#include "gam/error.hpp"
#include "gam/stats.hpp"
#include "gam/synth.hpp"
#include "oracles.hpp"

namespace st = gam::stats;

namespace {

double normal(gam::synth::Rng& rng) {
  const double u1 = 1.0 - rng.uniform(), u2 = rng.uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace

TEST_SUITE("stats") {

TEST_CASE("summary of a textbook sample") {
  const std::vector<double> x = {2, 4, 4, 4, 5, 5, 7, 9};
  const auto s = st::summarize(x, 0.05);
  CHECK(s.n == 8);
  CHECK(s.mean == 5.0);
  CHECK(*s.sd == doctest::Approx(std::sqrt(32.0 / 7.0)));
  CHECK(*s.se == doctest::Approx(std::sqrt(32.0 / 7.0) / std::sqrt(8.0)));
  CHECK(*s.ci_half == doctest::Approx(1.959963984540054 * *s.se));
  CHECK(*s.skewness == doctest::Approx(0.65625));
  CHECK(*s.kurtosis == doctest::Approx(2.78125));
  CHECK(s.min == 2.0);
  CHECK(s.max == 9.0);
}

TEST_CASE("summary edge cases") {
  const std::vector<double> one = {3.0};
  const auto s1 = st::summarize(one, 0.05);
  CHECK_FALSE(s1.sd.has_value());
  CHECK_FALSE(s1.skewness.has_value());
  const std::vector<double> flat = {0.1 + 0.2, 0.3, 0.30000000000000004, 0.3};
  const auto s2 = st::summarize(flat, 0.05);
  CHECK_FALSE(s2.skewness.has_value());
  CHECK_FALSE(s2.kurtosis.has_value());
  CHECK_THROWS_AS(st::summarize(std::vector<double>{}, 0.05), gam::InputError);
}

TEST_CASE("normal quantile") {
  CHECK(st::normal_quantile(0.975) == doctest::Approx(1.959963984540054).epsilon(1e-13));
  CHECK(st::normal_quantile(0.5) == doctest::Approx(0.0));
  CHECK(st::normal_quantile(0.995) == doctest::Approx(2.5758293035489).epsilon(1e-12));
  CHECK(st::normal_quantile(0.025) == doctest::Approx(-1.959963984540054).epsilon(1e-13));
}

TEST_CASE("incomplete beta closed forms and symmetry") {
  for (double x : {0.01, 0.2, 0.5, 0.77, 0.99}) {
    CHECK(st::regularized_beta(1, 1, x) == doctest::Approx(x).epsilon(1e-13));
    CHECK(st::regularized_beta(3.5, 1, x) == doctest::Approx(std::pow(x, 3.5)).epsilon(1e-12));
    CHECK(st::regularized_beta(1, 2.5, x) == doctest::Approx(1 - std::pow(1 - x, 2.5)).epsilon(1e-12));
    CHECK(st::regularized_beta(2.5, 49.5, x) + st::regularized_beta(49.5, 2.5, 1 - x) ==
          doctest::Approx(1.0).epsilon(1e-12));
  }
  CHECK(st::regularized_beta(2, 3, 0) == 0.0);
  CHECK(st::regularized_beta(2, 3, 1) == 1.0);
}

TEST_CASE("F distribution matches numerical integration of its density") {
  const double cases[][3] = {{0.5, 1, 10}, {2.31, 5, 99}, {3.0, 2, 6}, {1.0, 7, 3}, {4.5, 10, 40}, {0.2, 3, 3}};
  for (const auto& c : cases) {
    const double cdf = st::f_cdf(c[0], c[1], c[2]);
    CHECK(cdf == doctest::Approx(gam::testing::oracle_f_cdf(c[0], c[1], c[2])).epsilon(1e-7));
    CHECK(cdf + st::f_survival(c[0], c[1], c[2]) == doctest::Approx(1.0).epsilon(1e-13));
  }
}

TEST_CASE("F tail for df1 = 2 has a closed form") {
  // S(x) = (1 + 2x/d2)^(-d2/2)
  for (double d2 : {2.0, 6.0, 17.0, 99.0}) {
    for (double x : {0.1, 1.0, 3.0, 25.0}) {
      CHECK(st::f_survival(x, 2, d2) == doctest::Approx(std::pow(1 + 2 * x / d2, -d2 / 2)).epsilon(1e-11));
    }
    const double crit = d2 / 2 * (std::pow(0.05, -2 / d2) - 1);
    CHECK(st::f_critical(0.05, 2, d2) == doctest::Approx(crit).epsilon(1e-10));
  }
}

TEST_CASE("F critical values") {
  CHECK(st::f_critical(0.05, 5, 99) == doctest::Approx(2.30625908).epsilon(1e-7));
  CHECK(st::f_critical(0.05, 1, 10) == doctest::Approx(4.96460274).epsilon(1e-7));
  CHECK(st::f_critical(0.01, 3, 20) == doctest::Approx(4.93819338).epsilon(1e-7));
  const double c = st::f_critical(0.05, 5, 567);
  CHECK(st::f_survival(c, 5, 567) == doctest::Approx(0.05).epsilon(1e-10));
  CHECK_THROWS_AS(st::f_critical(0.0, 5, 99), gam::InputError);
}

TEST_CASE("one-way ANOVA on the three-group fixture") {
  const auto r = st::one_way_anova({{1, 2, 3}, {2, 3, 4}, {3, 4, 5}}, 0.05);
  CHECK(r.ss_between == doctest::Approx(6.0));
  CHECK(r.ss_within == doctest::Approx(6.0));
  CHECK(r.df_between == 2.0);
  CHECK(r.df_within == 6.0);
  CHECK(r.f == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(r.p_value == doctest::Approx(0.125).epsilon(1e-12));
  CHECK_FALSE(r.reject);
}

TEST_CASE("two-group ANOVA equals the squared pooled t statistic") {
  gam::synth::Rng rng(3);
  for (int c = 0; c < 20; ++c) {
    std::vector<double> a, b;
    for (int i = 0; i < 5 + c; ++i) a.push_back(normal(rng));
    for (int i = 0; i < 8; ++i) b.push_back(normal(rng) + 0.5);
    const auto sa = st::summarize(a, 0.05), sb = st::summarize(b, 0.05);
    const double na = a.size(), nb = b.size();
    const double sp2 = ((na - 1) * *sa.sd * *sa.sd + (nb - 1) * *sb.sd * *sb.sd) / (na + nb - 2);
    const double t = (sa.mean - sb.mean) / std::sqrt(sp2 * (1 / na + 1 / nb));
    CHECK(st::one_way_anova({a, b}, 0.05).f == doctest::Approx(t * t).epsilon(1e-10));
  }
}

TEST_CASE("F is invariant to shifting and scaling all data") {
  gam::synth::Rng rng(4);
  for (int c = 0; c < 50; ++c) {
    std::vector<std::vector<double>> g(3), h(3);
    for (int k = 0; k < 3; ++k)
      for (int i = 0; i < 6; ++i) g[k].push_back(normal(rng) + 0.3 * k);
    const double shift = rng.uniform(-100, 100), scale = rng.uniform(0.01, 50);
    for (int k = 0; k < 3; ++k)
      for (double v : g[k]) h[k].push_back(shift + scale * v);
    CHECK(st::one_way_anova(h, 0.05).f == doctest::Approx(st::one_way_anova(g, 0.05).f).epsilon(1e-9));
  }
}

TEST_CASE("null F averages d2 / (d2 - 2)") {
  gam::synth::Rng rng(5);
  double sum = 0.0;
  const int reps = 4000;
  for (int c = 0; c < reps; ++c) {
    std::vector<std::vector<double>> g(4);
    for (auto& grp : g)
      for (int i = 0; i < 6; ++i) grp.push_back(normal(rng));
    sum += st::one_way_anova(g, 0.05).f;
  }
  CHECK(sum / reps == doctest::Approx(20.0 / 18.0).epsilon(0.05));
}

TEST_CASE("degenerate ANOVA inputs") {
  const auto same = st::one_way_anova({{2, 2}, {2, 2}, {2, 2}}, 0.05);
  CHECK(same.f == 0.0);
  CHECK(same.p_value == 1.0);
  const auto sep = st::one_way_anova({{1, 1}, {2, 2}}, 0.05);
  CHECK(std::isinf(sep.f));
  CHECK(sep.p_value == 0.0);
  CHECK(sep.reject);
  CHECK_THROWS_AS(st::one_way_anova({{1, 2}}, 0.05), gam::InputError);
  CHECK_THROWS_AS(st::one_way_anova({{1}, {2}}, 0.05), gam::InputError);
  CHECK_THROWS_AS(st::one_way_anova({{1, 2}, {}}, 0.05), gam::InputError);
}

TEST_CASE("exceedance and half-open histogram bins") {
  const std::vector<double> x = {0.0, 0.5, 1.0, 1.0, 2.0, 5.0};
  CHECK(st::exceedance(x, 1.0, st::Direction::kAtMost) == doctest::Approx(4.0 / 6.0));
  CHECK(st::exceedance(x, 1.0, st::Direction::kAtLeast) == doctest::Approx(4.0 / 6.0));
  const auto h = st::histogram(x, 5, 0.0, 5.0);
  REQUIRE(h.counts.size() == 5);
  CHECK(h.edges.size() == 6);
  CHECK(h.counts[0] == 2);
  CHECK(h.counts[1] == 2);
  CHECK(h.counts[2] == 1);
  CHECK(h.counts[4] == 0);  // 5.0 is outside [0, 5)
  const auto fine = st::histogram(std::vector<double>{0.3, 0.7}, 10, 0.0, 1.0);
  CHECK(fine.counts[3] == 1);
  CHECK(fine.counts[7] == 1);
  CHECK_THROWS_AS(st::histogram(x, 0, 0.0, 1.0), gam::InputError);
}

}  // TEST_SUITE
