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

#ifndef REPSCAN_PIPELINE_HPP
#define REPSCAN_PIPELINE_HPP

#include <vector>

#include "repscan/config.hpp"
#include "repscan/dataset.hpp"
#include "repscan/decomposition.hpp"
#include "repscan/scoring.hpp"
#include "repscan/untangle.hpp"

namespace repscan {

/// fit_em with the EM fields of `config`.
GlobalStats fit_global_model(const LabeledMatrix& clean, const RunConfig& config);

/// Per-class intermediate results, kept for inspection and tests.
struct ClassAnalysis {
  int label = 0;
  ClassDecomposition decomposition;
  UntangleResult untangled;
  double j = 0.0;
  bool degenerate = false;
};

/// Centers `data` with stats.center, then per class: posterior identity,
/// two-subgroup untangling and J. Classes with a single row are treated as
/// degenerate (J = 0).
std::vector<ClassAnalysis> analyze_classes(const LabeledMatrix& data, const GlobalStats& stats,
                                           const RunConfig& config);

/// analyze_classes followed by assemble_report; fills the config echo and
/// fingerprint. Throws TooFewClassesError for fewer than 3 classes and
/// DimensionError when data and stats dimensions differ.
ScanReport analyze(const LabeledMatrix& data, const GlobalStats& stats, const RunConfig& config);

}  // namespace repscan

#endif  // REPSCAN_PIPELINE_HPP
