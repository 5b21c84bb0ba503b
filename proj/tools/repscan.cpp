// Copyright 2026 The repscan Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// repscan: fit | analyze | poison | synth
//
// Exit codes: 0 clean, 1 contamination found, 2 configuration error,
// 3 data or numeric error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "repscan/config.hpp"
#include "repscan/contamination.hpp"
#include "repscan/errors.hpp"
#include "repscan/io.hpp"
#include "repscan/pipeline.hpp"
#include "repscan/synth.hpp"

namespace {

using namespace repscan;

constexpr int kExitClean = 0;
constexpr int kExitFlagged = 1;
constexpr int kExitConfig = 2;
constexpr int kExitData = 3;

struct CommonFlags {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<double> threshold;
  std::optional<std::string> dof_mode;
  std::optional<double> dof_value;
  std::optional<double> ridge;
  std::optional<int> em_max_iters;
  std::optional<double> em_tol;
  std::optional<int> untangle_max_iters;

  void attach(CLI::App* cmd) {
    cmd->add_option("--config", config_path, "key = value configuration file");
    cmd->add_option("--seed", seed, "random seed");
    cmd->add_option("--threshold", threshold, "J* rejection threshold (default e^2)");
    cmd->add_option("--dof-mode", dof_mode, "degrees of freedom: dim | custom");
    cmd->add_option("--dof-value", dof_value, "degrees of freedom when --dof-mode custom");
    cmd->add_option("--ridge", ridge, "relative ridge added to covariance estimates");
    cmd->add_option("--em-max-iters", em_max_iters, "EM iteration cap");
    cmd->add_option("--em-tol", em_tol, "EM relative Frobenius tolerance");
    cmd->add_option("--untangle-max-iters", untangle_max_iters, "untangling iteration cap");
  }

  RunConfig resolve() const {
    RunConfig cfg = config_path.empty() ? RunConfig{} : load_config_file(config_path);
    if (seed) cfg.seed = *seed;
    if (threshold) cfg.threshold = *threshold;
    if (dof_mode) cfg.dof_mode = parse_dof_mode(*dof_mode);
    if (dof_value) cfg.dof_value = *dof_value;
    if (ridge) cfg.ridge_scale = *ridge;
    if (em_max_iters) cfg.em_max_iters = *em_max_iters;
    if (em_tol) cfg.em_tol = *em_tol;
    if (untangle_max_iters) cfg.untangle_max_iters = *untangle_max_iters;
    cfg.validate();
    return cfg;
  }
};

int cmd_fit(const std::string& clean_path, const std::string& out_path,
            const CommonFlags& flags) {
  const RunConfig cfg = flags.resolve();
  const LabeledMatrix clean = read_lrm(clean_path);
  const GlobalStats stats = fit_global_model(clean, cfg);
  for (const auto& w : stats.warnings) std::cerr << "warning: " << w << '\n';
  write_stats(out_path, stats);
  std::cout << "d=" << stats.d() << " classes=" << clean.present_labels().size()
            << " iters=" << stats.em_iters_used
            << " converged=" << (stats.converged ? "true" : "false")
            << " fingerprint=" << stats_fingerprint(stats.s_mu, stats.s_eps) << '\n';
  return kExitClean;
}

int cmd_analyze(const std::string& data_path, const std::string& stats_path,
                const std::string& out_path, const CommonFlags& flags) {
  const RunConfig cfg = flags.resolve();
  const LabeledMatrix data = read_lrm(data_path);
  const GlobalStats stats = read_stats(stats_path);
  const ScanReport report = analyze(data, stats, cfg);
  const std::string json = report_to_json(report);
  if (out_path.empty() || out_path == "-") {
    std::cerr << json;
  } else {
    std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot write " + out_path);
    out << json;
  }
  const auto flagged = report.flagged_labels();
  for (int label : flagged) std::cout << label << '\n';
  return flagged.empty() ? kExitClean : kExitFlagged;
}

struct PoisonFlags {
  std::string data_path;
  std::string trigger_path;
  std::string out_path;
  std::string provenance_path;
  int source = 0;
  int target = 1;
  std::vector<int> cover_labels;
  double attack = 0.02;
  double cover = 0.01;
};

int cmd_poison(const PoisonFlags& p, const CommonFlags& flags) {
  const RunConfig cfg = flags.resolve();
  PoisonPlan plan;
  plan.source_label = p.source;
  plan.target_label = p.target;
  plan.cover_labels = p.cover_labels;
  plan.attack_fraction = p.attack;
  plan.cover_fraction = p.cover;
  plan.seed = cfg.seed;
  plan.validate();

  const LabeledMatrix data = read_lrm(p.data_path);
  const TriggerSpec trigger = read_trigger(p.trigger_path);
  const PoisonedData poisoned = poison_dataset(data, trigger, plan);
  write_lrm(p.out_path, poisoned.data);
  std::vector<std::string> tags;
  for (Provenance t : poisoned.appended) tags.push_back(to_string(t));
  if (!p.provenance_path.empty()) write_tags(p.provenance_path, tags);
  std::cout << "appended=" << poisoned.appended.size() << " n=" << poisoned.data.n() << '\n';
  return kExitClean;
}

struct SynthFlags {
  std::string out_path;
  std::string truth_path;
  int dim = 16;
  int classes = 43;
  int samples = 100;
  double mu_var = 4.0;
  double eps_var = 1.0;
  std::vector<std::string> infections;
};

Infection parse_infection(const std::string& text) {
  // label:fraction:separation
  std::istringstream in(text);
  Infection inf;
  char c1 = 0;
  char c2 = 0;
  if (!(in >> inf.class_label >> c1 >> inf.mix_fraction >> c2 >> inf.separation) || c1 != ':' ||
      c2 != ':' || !in.eof()) {
    throw ConfigError("--infect expects label:fraction:separation, got '" + text + "'");
  }
  return inf;
}

int cmd_synth(const SynthFlags& s, const CommonFlags& flags) {
  const RunConfig cfg = flags.resolve();
  if (s.dim < 1) throw ConfigError("--dim must be positive");
  if (!(s.mu_var > 0.0) || !(s.eps_var > 0.0)) {
    throw ConfigError("--mu-var and --eps-var must be positive");
  }
  SynthSpec spec{s.dim, s.classes, s.samples, ramp_diagonal(s.dim, s.mu_var),
                 ramp_diagonal(s.dim, s.eps_var), {}, cfg.seed};
  for (const auto& text : s.infections) spec.infections.push_back(parse_infection(text));
  const SynthData synth = generate(spec);
  write_lrm(s.out_path, synth.data);
  if (!s.truth_path.empty()) {
    std::vector<std::string> tags;
    for (SampleTag t : synth.truth) tags.push_back(to_string(t));
    write_tags(s.truth_path, tags);
  }
  std::cout << "n=" << synth.data.n() << " d=" << synth.data.d() << '\n';
  return kExitClean;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Detect contaminated classes in representation space"};
  app.require_subcommand(1);

  CommonFlags fit_flags;
  std::string fit_clean;
  std::string fit_out;
  auto* fit = app.add_subcommand("fit", "Fit the global identity/variation model on clean data");
  fit->add_option("--clean", fit_clean, "clean representations (lrm)")->required();
  fit->add_option("--out", fit_out, "output global stats file")->required();
  fit_flags.attach(fit);

  CommonFlags an_flags;
  std::string an_data;
  std::string an_stats;
  std::string an_out;
  auto* an = app.add_subcommand("analyze", "Score every class and flag contaminated ones");
  an->add_option("--data", an_data, "representations to scan (lrm)")->required();
  an->add_option("--stats", an_stats, "global stats from 'fit'")->required();
  an->add_option("--out", an_out, "report JSON path ('-' for stderr)");
  an_flags.attach(an);

  CommonFlags po_flags;
  PoisonFlags po;
  auto* poison = app.add_subcommand("poison", "Append attack and cover samples");
  poison->add_option("--data", po.data_path, "input data (lrm)")->required();
  poison->add_option("--trigger", po.trigger_path, "trigger file")->required();
  poison->add_option("--out", po.out_path, "poisoned output (lrm)")->required();
  poison->add_option("--provenance", po.provenance_path, "per appended row: attack|cover");
  poison->add_option("--source", po.source, "source label")->required();
  poison->add_option("--target", po.target, "target label")->required();
  poison->add_option("--cover-labels", po.cover_labels, "cover labels")->delimiter(',');
  poison->add_option("--attack", po.attack, "attack fraction of n")->capture_default_str();
  poison->add_option("--cover", po.cover, "cover fraction of n")->capture_default_str();
  po_flags.attach(poison);

  CommonFlags sy_flags;
  SynthFlags sy;
  auto* synth = app.add_subcommand("synth", "Generate synthetic representations");
  synth->add_option("--out", sy.out_path, "output (lrm)")->required();
  synth->add_option("--truth", sy.truth_path, "per-row tags: clean|mix");
  synth->add_option("--dim", sy.dim, "dimension")->capture_default_str();
  synth->add_option("--classes", sy.classes, "class count")->capture_default_str();
  synth->add_option("--samples", sy.samples, "samples per class")->capture_default_str();
  synth->add_option("--mu-var", sy.mu_var, "identity variance base")->capture_default_str();
  synth->add_option("--eps-var", sy.eps_var, "variation variance base")->capture_default_str();
  synth->add_option("--infect", sy.infections, "label:fraction:separation (repeatable)");
  sy_flags.attach(synth);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*fit) return cmd_fit(fit_clean, fit_out, fit_flags);
    if (*an) return cmd_analyze(an_data, an_stats, an_out, an_flags);
    if (*poison) return cmd_poison(po, po_flags);
    if (*synth) return cmd_synth(sy, sy_flags);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  }
  return kExitConfig;
}
