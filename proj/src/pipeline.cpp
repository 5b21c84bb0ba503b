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

#include "repscan/pipeline.hpp"

#include <string>

#include "repscan/errors.hpp"
#include "repscan/io.hpp"

namespace repscan {

GlobalStats fit_global_model(const LabeledMatrix& clean, const RunConfig& config) {
  config.validate();
  EmOptions options;
  options.max_iters = config.em_max_iters;
  options.tol = config.em_tol;
  options.ridge_scale = config.ridge_scale;
  return fit_em(clean, options);
}

std::vector<ClassAnalysis> analyze_classes(const LabeledMatrix& data, const GlobalStats& stats,
                                           const RunConfig& config) {
  config.validate();
  if (data.d() != stats.d() || stats.center.size() != stats.d()) {
    throw DimensionError("analyze: data has dimension " + std::to_string(data.d()) +
                         ", global stats have " + std::to_string(stats.d()));
  }
  const auto by_label = data.indices_by_label();
  if (by_label.size() < 3) {
    throw TooFewClassesError("analyze: need at least 3 classes, got " +
                             std::to_string(by_label.size()));
  }
  const SpdFactor eps_factor(stats.s_eps);
  const Matrix centered = data.rows().rowwise() - stats.center.transpose();

  std::vector<ClassAnalysis> out;
  out.reserve(by_label.size());
  for (const auto& [label, idx] : by_label) {
    const Matrix rows = gather_rows(centered, idx);
    ClassAnalysis a;
    a.label = label;
    a.decomposition = posterior_identity(rows, stats.s_mu, stats.s_eps, label);
    if (rows.rows() < 2) {
      a.degenerate = true;
      a.untangled.degenerate = true;
    } else {
      a.untangled = untangle_class(rows, stats.s_eps, config.untangle_max_iters);
      a.degenerate = a.untangled.degenerate;
      a.j = j_statistic(rows, a.decomposition.mu, a.untangled, eps_factor);
    }
    out.push_back(std::move(a));
  }
  return out;
}

ScanReport analyze(const LabeledMatrix& data, const GlobalStats& stats, const RunConfig& config) {
  const auto classes = analyze_classes(data, stats, config);
  std::vector<ClassStatistic> per_class;
  per_class.reserve(classes.size());
  for (const auto& c : classes) per_class.push_back({c.label, c.j, c.degenerate});
  ScanReport report = assemble_report(std::move(per_class), config.dof_for(data.d()),
                                      config.threshold);
  report.config = config;
  report.global_fingerprint = stats_fingerprint(stats.s_mu, stats.s_eps);
  return report;
}

}  // namespace repscan
