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

#include "gam/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gam/error.hpp"
#include "gam/format.hpp"

namespace gam::stats {

SummaryStats summarize(std::span<const double> x, double alpha) {
  if (x.empty()) throw InputError("summarize: empty sample");
  if (!(alpha > 0.0 && alpha < 1.0)) throw InputError("summarize: alpha must lie in (0, 1)");
  SummaryStats s;
  s.n = x.size();
  const double n = static_cast<double>(s.n);
  double sum = 0.0;
  for (double v : x) sum += v;
  s.mean = sum / n;
  s.min = *std::min_element(x.begin(), x.end());
  s.max = *std::max_element(x.begin(), x.end());
  double m2 = 0.0, m3 = 0.0, m4 = 0.0;
  for (double v : x) {
    const double d = v - s.mean;
    const double d2 = d * d;
    m2 += d2;
    m3 += d2 * d;
    m4 += d2 * d2;
  }
  if (s.n >= 2) {
    s.sd = std::sqrt(m2 / (n - 1.0));
    s.se = *s.sd / std::sqrt(n);
    s.ci_half = normal_quantile(1.0 - alpha / 2.0) * *s.se;
  }
  m2 /= n;
  m3 /= n;
  m4 /= n;
  // Relative threshold so that a constant sample with rounding noise in
  // the mean still counts as constant.
  const double scale = std::max(std::abs(s.min), std::abs(s.max));
  if (s.n >= 3 && m2 > 1e-28 * std::max(1.0, scale * scale)) {
    s.skewness = m3 / std::pow(m2, 1.5);
    s.kurtosis = m4 / (m2 * m2);
  }
  return s;
}

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) throw InputError("normal_quantile: p must lie in (0, 1)");
  auto cdf = [](double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); };
  double lo = -40.0, hi = 40.0;
  for (int i = 0; i < 200 && hi - lo > 1e-15; ++i) {
    const double mid = 0.5 * (lo + hi);
    (cdf(mid) < p ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

namespace {

// Modified Lentz evaluation of the incomplete-beta continued fraction.
double beta_continued_fraction(double a, double b, double x) {
  constexpr double kTiny = 1e-300;
  constexpr double kEps = 1e-16;
  const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= 20000; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kEps) return h;
  }
  throw InvariantError("incomplete beta continued fraction did not converge");
}

}  // namespace

double regularized_beta(double a, double b, double x) {
  if (!(a > 0.0 && b > 0.0)) throw InputError("regularized_beta: a and b must be positive");
  if (std::isnan(x)) throw InputError("regularized_beta: x is NaN");
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double log_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                           a * std::log(x) + b * std::log1p(-x);
  const double front = std::exp(log_front);
  if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_continued_fraction(a, b, x) / a;
  return 1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b;
}

double f_cdf(double x, double df1, double df2) {
  if (!(df1 > 0.0 && df2 > 0.0)) throw InputError("F distribution: degrees of freedom must be positive");
  if (x <= 0.0) return 0.0;
  if (std::isinf(x)) return 1.0;
  return regularized_beta(df1 / 2.0, df2 / 2.0, df1 * x / (df1 * x + df2));
}

double f_survival(double x, double df1, double df2) {
  if (!(df1 > 0.0 && df2 > 0.0)) throw InputError("F distribution: degrees of freedom must be positive");
  if (x <= 0.0) return 1.0;
  if (std::isinf(x)) return 0.0;
  // Complementary form keeps precision in the upper tail.
  return regularized_beta(df2 / 2.0, df1 / 2.0, df2 / (df2 + df1 * x));
}

double f_critical(double alpha, double df1, double df2) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw InputError("f_critical: alpha must lie in (0, 1)");
  if (!(df1 >= 1.0 && df2 >= 1.0)) throw InputError("f_critical: degrees of freedom must be >= 1");
  double lo = 0.0, hi = 1.0;
  while (f_survival(hi, df1, df2) > alpha) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e300) throw InvariantError("f_critical: failed to bracket the quantile");
  }
  while (hi - lo > 1e-13 * std::max(1.0, hi)) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (f_survival(mid, df1, df2) > alpha ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

AnovaResult one_way_anova(const std::vector<std::vector<double>>& groups, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw InputError("one_way_anova: alpha must lie in (0, 1)");
  if (groups.size() < 2) throw InputError("one_way_anova: need at least two groups");
  std::size_t total = 0;
  double grand_sum = 0.0;
  for (const auto& g : groups) {
    if (g.empty()) throw InputError("one_way_anova: empty group");
    total += g.size();
    for (double v : g) grand_sum += v;
  }
  const double k = static_cast<double>(groups.size());
  const double N = static_cast<double>(total);
  if (total <= groups.size()) throw InputError("one_way_anova: need more observations than groups");
  const double grand_mean = grand_sum / N;

  AnovaResult r;
  for (const auto& g : groups) {
    double sum = 0.0;
    for (double v : g) sum += v;
    const double mean = sum / static_cast<double>(g.size());
    r.ss_between += static_cast<double>(g.size()) * (mean - grand_mean) * (mean - grand_mean);
    for (double v : g) r.ss_within += (v - mean) * (v - mean);
  }
  r.df_between = k - 1.0;
  r.df_within = N - k;
  r.f_critical = f_critical(alpha, r.df_between, r.df_within);
  // Sums of squares below this relative level are rounding noise.
  double scale = 0.0;
  for (const auto& g : groups)
    for (double v : g) scale = std::max(scale, std::abs(v - grand_mean));
  const double noise = 1e-24 * std::max(1.0, scale * scale) * N;
  if (r.ss_between <= noise && r.ss_within <= noise) {
    r.f = 0.0;
    r.p_value = 1.0;
  } else if (r.ss_within <= noise) {
    r.f = std::numeric_limits<double>::infinity();
    r.p_value = 0.0;
  } else {
    r.f = (r.ss_between / r.df_between) / (r.ss_within / r.df_within);
    r.p_value = f_survival(r.f, r.df_between, r.df_within);
  }
  r.reject = r.p_value < alpha;
  return r;
}

double exceedance(std::span<const double> x, double threshold, Direction direction) {
  if (x.empty()) throw InputError("exceedance: empty sample");
  std::size_t hits = 0;
  for (double v : x) {
    if (direction == Direction::kAtMost ? v <= threshold : v >= threshold) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(x.size());
}

Histogram histogram(std::span<const double> x, std::size_t n_bins, double lo, double hi) {
  if (n_bins < 1) throw InputError("histogram: need at least one bin");
  if (!(hi > lo) || !std::isfinite(lo) || !std::isfinite(hi)) {
    throw InputError("histogram: degenerate range [" + fmt_g9(lo) + ", " + fmt_g9(hi) + ")");
  }
  Histogram h;
  h.edges.resize(n_bins + 1);
  const double width = (hi - lo) / static_cast<double>(n_bins);
  for (std::size_t i = 0; i <= n_bins; ++i) {
    h.edges[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n_bins);
  }
  h.edges.back() = hi;
  h.counts.assign(n_bins, 0);
  for (double v : x) {
    if (!(v >= lo && v < hi)) continue;
    auto bin = static_cast<std::size_t>((v - lo) / width);
    if (bin >= n_bins) bin = n_bins - 1;
    // Edge rounding: keep the half-open convention exact.
    while (bin > 0 && v < h.edges[bin]) --bin;
    while (bin + 1 < n_bins && v >= h.edges[bin + 1]) ++bin;
    ++h.counts[bin];
  }
  return h;
}

double binomial_ci_half(std::size_t successes, std::size_t trials, double alpha) {
  if (trials == 0) throw InputError("binomial_ci_half: zero trials");
  if (successes > trials) throw InputError("binomial_ci_half: successes exceed trials");
  const double p = static_cast<double>(successes) / static_cast<double>(trials);
  return normal_quantile(1.0 - alpha / 2.0) * std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
}

}  // namespace gam::stats
