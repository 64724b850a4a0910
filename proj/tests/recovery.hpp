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

#ifndef GAM_TESTS_RECOVERY_HPP_
#define GAM_TESTS_RECOVERY_HPP_

// Runs one generated trial through the analysis and compares the result
// with the parameters it was generated from.

#include <cmath>
#include <string>

#include "gam/fixation.hpp"
#include "gam/metrics.hpp"
#include "gam/synth.hpp"

namespace gam::testing {

struct RecoveryTolerance {
  double time_s = 1.0 / 120.0;
  double fraction = 0.02;
};

struct RecoveryResult {
  bool ok = true;
  std::string detail;
};

inline RecoveryResult check_recovery(const synth::TrialSpec& spec, const Config& config,
                                     const RecoveryTolerance& tol = {}) {
  RecoveryResult r;
  auto fail = [&](const std::string& what) {
    if (r.ok) r.detail = spec.video_id + ": " + what;
    r.ok = false;
  };
  const auto gen = synth::generate_trial(spec, config);
  const auto lab = classify_samples(gen.trial.samples, config);
  const auto fx = group_fixations(lab, config);
  const auto m = compute_trial_metrics(gen.trial, fx, lab, gen.video);

  if (m.t_b != spec.t_b()) fail("T_B " + std::to_string(m.t_b) + " vs " + std::to_string(spec.t_b()));
  if (m.missed_cio != spec.miss) fail("missed flag");
  const bool attended = !spec.miss && spec.planted_d() > 0.0;
  if (m.attended_before_crash != attended) fail("attended flag");
  if (spec.miss) return r;
  if (!m.latency || std::abs(*m.latency - spec.planted_l) > tol.time_s) {
    fail("L " + (m.latency ? std::to_string(*m.latency) : std::string("missing")) + " vs " +
         std::to_string(spec.planted_l));
  }
  if (!m.early_attention || std::abs(*m.early_attention - spec.planted_d()) > tol.time_s) {
    fail("D vs " + std::to_string(spec.planted_d()));
  }
  if (spec.planted_d() > 0.0) {
    const double rho_r = spec.fixation_coverage * spec.cio_coverage;
    if (!m.rho_f_d || std::abs(*m.rho_f_d - spec.fixation_coverage) > tol.fraction) {
      fail("rho_F " + (m.rho_f_d ? std::to_string(*m.rho_f_d) : std::string("missing")) + " vs " +
           std::to_string(spec.fixation_coverage));
    }
    if (!m.rho_r_d || std::abs(*m.rho_r_d - rho_r) > tol.fraction) {
      fail("rho_R " + (m.rho_r_d ? std::to_string(*m.rho_r_d) : std::string("missing")) + " vs " +
           std::to_string(rho_r));
    }
  }
  return r;
}

}  // namespace gam::testing

#endif  // GAM_TESTS_RECOVERY_HPP_
