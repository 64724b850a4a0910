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

// gam: batch analytics over eye-tracker logs and crash-video annotations.
// All work goes through the C interface in gam/gam.h.

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gam/gam.h"

namespace {

// Exit codes: 0 success, 1 input-contract violation, 2 internal failure.
int exit_code(gam_status s) {
  switch (s) {
    case GAM_OK: return 0;
    case GAM_ERR_INTERNAL: return 2;
    case GAM_ERR_INPUT:
    case GAM_ERR_ARGUMENT:
    case GAM_ERR_IO: return 1;
  }
  return 2;
}

class Failure {
 public:
  explicit Failure(gam_status s) : status(s) {}
  gam_status status;
};

void check(gam_status s) {
  if (s != GAM_OK) throw Failure(s);
}

struct Handles {
  gam_config* config = nullptr;
  gam_dataset* dataset = nullptr;
  gam_study* study = nullptr;

  ~Handles() {
    gam_study_destroy(study);
    gam_dataset_destroy(dataset);
    gam_config_destroy(config);
  }
};

struct Options {
  std::string config_path;
  std::vector<std::string> overrides;  // key=value
  std::string gaze;
  std::string ann;
  std::string ai;
  std::string out;
  std::string filter = "pos";
  double gamma = 0.5;
  std::string pgm;
  std::string csv;
  gam_synth_params synth{};
};

// Defaults, then the config file, then GAM_* variables, then --set.
void build_config(const Options& o, Handles& h) {
  check(gam_config_create(&h.config));
  if (!o.config_path.empty()) check(gam_config_load_file(h.config, o.config_path.c_str()));
  check(gam_config_apply_env(h.config));
  for (const auto& kv : o.overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) {
      std::fprintf(stderr, "gam: --set expects key=value, got '%s'\n", kv.c_str());
      throw Failure(GAM_ERR_ARGUMENT);
    }
    check(gam_config_set(h.config, kv.substr(0, eq).c_str(), kv.substr(eq + 1).c_str()));
  }
}

void load(const Options& o, Handles& h, bool need_ann, bool need_ai) {
  build_config(o, h);
  if (need_ann && o.ann.empty()) {
    std::fprintf(stderr, "gam: --ann is required\n");
    throw Failure(GAM_ERR_ARGUMENT);
  }
  if (need_ai && o.ai.empty()) {
    std::fprintf(stderr, "gam: --ai is required\n");
    throw Failure(GAM_ERR_ARGUMENT);
  }
  check(gam_dataset_load(h.config, o.gaze.c_str(), o.ann.c_str(), o.ai.c_str(), &h.dataset));
}

void analyze(const Options& o, Handles& h, bool need_ai) {
  load(o, h, true, need_ai);
  check(gam_study_analyze(h.dataset, &h.study));
}

int run_validate(const Options& o) {
  Handles h;
  load(o, h, false, false);
  std::size_t errors = 0, warnings = 0;
  const std::string target = o.out.empty() ? "/dev/stdout" : o.out;
  check(gam_dataset_validate(h.dataset, target.c_str(), &errors, &warnings));
  std::fprintf(stderr, "gam validate: %zu issue(s): %zu error(s), %zu warning(s)\n", errors + warnings, errors,
               warnings);
  return 0;
}

int run_fixations(const Options& o) {
  Handles h;
  load(o, h, false, false);
  check(gam_dataset_write_fixations(h.dataset, o.out.c_str()));
  return 0;
}

int run_metrics(const Options& o) {
  Handles h;
  analyze(o, h, false);
  check(gam_study_write_trial_metrics(h.study, o.out.c_str()));
  return 0;
}

int run_anova(const Options& o) {
  Handles h;
  analyze(o, h, false);
  check(gam_study_write_anova(h.study, o.out.c_str()));
  return 0;
}

int run_compare(const Options& o) {
  Handles h;
  analyze(o, h, true);
  check(gam_study_write_comparison(h.study, o.out.c_str()));
  return 0;
}

int run_heatmap(const Options& o) {
  Handles h;
  analyze(o, h, false);
  gam_video_filter f = GAM_FILTER_ALL;
  if (o.filter == "pos") f = GAM_FILTER_POSITIVE;
  if (o.filter == "neg") f = GAM_FILTER_NEGATIVE;
  if (o.pgm.empty() && o.csv.empty()) {
    std::fprintf(stderr, "gam heatmap: give --pgm and/or --csv\n");
    throw Failure(GAM_ERR_ARGUMENT);
  }
  check(gam_study_write_heatmap(h.study, f, o.gamma, o.pgm.c_str(), o.csv.c_str()));
  return 0;
}

int run_synth(const Options& o) {
  Handles h;
  build_config(o, h);
  check(gam_synth_write_study(&o.synth, h.config, o.out.c_str()));
  return 0;
}

int run_report(const Options& o) {
  Handles h;
  analyze(o, h, false);
  check(gam_study_write_report(h.study, o.out.c_str(), o.gamma));
  return 0;
}

void add_common(CLI::App* cmd, Options& o) {
  cmd->add_option("--config", o.config_path, "config file (key = value)")->check(CLI::ExistingFile);
  cmd->add_option("--set", o.overrides, "override a config key, key=value (repeatable)");
}

void add_inputs(CLI::App* cmd, Options& o, bool ann_required, bool ai_required) {
  cmd->add_option("--gaze", o.gaze, "gaze log CSV")->required();
  auto* ann = cmd->add_option("--ann", o.ann, "video annotation JSON");
  if (ann_required) ann->required();
  auto* ai = cmd->add_option("--ai", o.ai, "AI reference CSV (video_id,mttc_s)");
  if (ai_required) ai->required();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gam: gaze-based crash-anticipation metrics"};
  app.require_subcommand(1);
  app.set_version_flag("--version", gam_version());
  Options o;
  gam_synth_params_default(&o.synth);

  auto* validate = app.add_subcommand("validate", "check a dataset and write an issue report (JSON)");
  add_inputs(validate, o, false, false);
  validate->add_option("--out", o.out, "report path (default: stdout)");

  auto* fixations = app.add_subcommand("fixations", "detect fixations and write fixations.csv");
  add_inputs(fixations, o, false, false);
  fixations->add_option("--out", o.out, "output CSV")->required();

  auto* metrics = app.add_subcommand("metrics", "write per-trial metrics CSV");
  add_inputs(metrics, o, true, false);
  metrics->add_option("--out", o.out, "output CSV")->required();

  auto* anova = app.add_subcommand("anova", "one-way ANOVA of L and D by participant (JSON)");
  add_inputs(anova, o, true, false);
  anova->add_option("--out", o.out, "output JSON")->required();

  auto* compare = app.add_subcommand("compare", "per-video mD against AI mTTC (CSV)");
  add_inputs(compare, o, true, true);
  compare->add_option("--out", o.out, "output CSV")->required();

  auto* heatmap = app.add_subcommand("heatmap", "gaze heat map as PGM and/or CSV counts");
  add_inputs(heatmap, o, true, false);
  heatmap->add_option("--filter", o.filter, "pos, neg or all")->check(CLI::IsMember({"pos", "neg", "all"}));
  heatmap->add_option("--gamma", o.gamma, "PGM intensity exponent")->check(CLI::PositiveNumber);
  heatmap->add_option("--pgm", o.pgm, "output PGM");
  heatmap->add_option("--csv", o.csv, "output CSV of cell counts");

  auto* synth = app.add_subcommand("synth", "write a synthetic study with planted ground truth");
  synth->add_option("--seed", o.synth.seed, "RNG seed");
  synth->add_option("--participants", o.synth.n_participants)->check(CLI::PositiveNumber);
  synth->add_option("--sessions", o.synth.n_sessions)->check(CLI::PositiveNumber);
  synth->add_option("--pos", o.synth.n_pos, "positive videos")->check(CLI::NonNegativeNumber);
  synth->add_option("--neg", o.synth.n_neg, "negative videos")->check(CLI::NonNegativeNumber);
  synth->add_option("--misses", o.synth.n_miss, "planted CIO misses")->check(CLI::NonNegativeNumber);
  synth->add_option("--late", o.synth.n_late, "planted after-crash hits")->check(CLI::NonNegativeNumber);
  synth->add_option("--exceed", o.synth.n_exceed, "D values planted above mTTC")->check(CLI::NonNegativeNumber);
  synth->add_option("--out", o.out, "output directory")->required();

  auto* report = app.add_subcommand("report", "full report bundle into a directory");
  add_inputs(report, o, true, false);
  report->add_option("--gamma", o.gamma, "PGM intensity exponent")->check(CLI::PositiveNumber);
  report->add_option("--out", o.out, "output directory")->required();

  for (auto* cmd : {validate, fixations, metrics, anova, compare, heatmap, synth, report}) add_common(cmd, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    std::cout << app.help();
    return 0;
  } catch (const CLI::CallForVersion&) {
    std::cout << gam_version() << "\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    const auto* sub = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
    // Unknown arguments take precedence over missing required ones.
    std::string unknown;
    for (const auto& arg : sub->remaining()) unknown += " " + arg;
    if (sub != &app)
      for (const auto& arg : app.remaining()) unknown += " " + arg;
    if (!unknown.empty()) std::cerr << "gam: unknown argument(s):" << unknown << "\n\n";
    else std::cerr << "gam: " << e.what() << "\n\n";
    std::cerr << sub->help();
    return 1;
  }

  try {
    if (*validate) return run_validate(o);
    if (*fixations) return run_fixations(o);
    if (*metrics) return run_metrics(o);
    if (*anova) return run_anova(o);
    if (*compare) return run_compare(o);
    if (*heatmap) return run_heatmap(o);
    if (*synth) return run_synth(o);
    if (*report) return run_report(o);
  } catch (const Failure& f) {
    const char* msg = gam_last_error();
    if (msg != nullptr && *msg != '\0') std::fprintf(stderr, "gam: %s: %s\n", gam_status_name(f.status), msg);
    return exit_code(f.status);
  }
  return 1;
}
