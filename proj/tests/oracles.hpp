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

#ifndef GAM_TESTS_ORACLES_HPP_
#define GAM_TESTS_ORACLES_HPP_

#include <cmath>

namespace gam::testing {

// F CDF by composite Simpson integration of the density after x = u^2,
// which keeps the integrand finite at zero for df1 = 1.
inline double oracle_f_cdf(double x, double d1, double d2, int n = 200000) {
  const double log_b = std::lgamma(d1 / 2) + std::lgamma(d2 / 2) - std::lgamma((d1 + d2) / 2);
  auto g = [&](double u) {
    if (u <= 0.0) return d1 == 1.0 ? 2.0 * std::exp(0.5 * (std::log(d1) - std::log(d2)) - log_b) : 0.0;
    const double t = u * u;
    const double log_f = 0.5 * (d1 * std::log(d1 * t) + d2 * std::log(d2) - (d1 + d2) * std::log(d1 * t + d2)) -
                         std::log(t) - log_b;
    return 2.0 * u * std::exp(log_f);
  };
  const double hi = std::sqrt(x), h = hi / n;
  double sum = g(0.0) + g(hi);
  for (int i = 1; i < n; ++i) sum += (i % 2 ? 4.0 : 2.0) * g(i * h);
  return sum * h / 3.0;
}

}  // namespace gam::testing

#endif  // GAM_TESTS_ORACLES_HPP_
