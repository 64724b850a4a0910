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

#ifndef GAM_STATS_HPP_
#define GAM_STATS_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace gam::stats {

// Descriptive summary. ci_half is the normal-approximation half-width
// z_{1-alpha/2} * se. Moments use the biased central form; kurtosis is
// Pearson (3 for a normal).
struct SummaryStats {
  std::size_t n = 0;
  double mean = 0.0;
  std::optional<double> sd;  // sample (n - 1) standard deviation, n >= 2
  std::optional<double> se;
  std::optional<double> ci_half;
  std::optional<double> skewness;  // n >= 3 and non-constant
  std::optional<double> kurtosis;
  double min = 0.0;
  double max = 0.0;
};

SummaryStats summarize(std::span<const double> samples, double alpha);

// Standard normal quantile by bisection on erfc.
double normal_quantile(double p);

// Regularized incomplete beta I_x(a, b), continued-fraction evaluation.
double regularized_beta(double a, double b, double x);

double f_cdf(double x, double df1, double df2);
double f_survival(double x, double df1, double df2);

// x with f_survival(x) == alpha, bisection to 1e-10.
double f_critical(double alpha, double df1, double df2);

struct AnovaResult {
  double f = 0.0;
  double df_between = 0.0;
  double df_within = 0.0;
  double ss_between = 0.0;
  double ss_within = 0.0;
  double p_value = 1.0;
  double f_critical = 0.0;
  bool reject = false;
};

// One-way ANOVA. Needs at least two groups, none empty, and more
// observations than groups. All-identical data gives F = 0, p = 1.
AnovaResult one_way_anova(const std::vector<std::vector<double>>& groups, double alpha);

enum class Direction { kAtMost, kAtLeast };

// Fraction of samples <= threshold (kAtMost) or >= threshold (kAtLeast).
double exceedance(std::span<const double> samples, double threshold, Direction direction);

struct Histogram {
  std::vector<double> edges;  // n_bins + 1 uniform edges
  std::vector<std::size_t> counts;
};

// Bins are half-open [e_i, e_{i+1}); values outside [lo, hi) are skipped.
Histogram histogram(std::span<const double> samples, std::size_t n_bins, double lo, double hi);

// Half-width of the normal-approximation binomial interval.
double binomial_ci_half(std::size_t successes, std::size_t trials, double alpha);

}  // namespace gam::stats

#endif  // GAM_STATS_HPP_
