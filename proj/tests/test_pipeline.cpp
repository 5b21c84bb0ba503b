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

#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "repscan/errors.hpp"
#include "repscan/pipeline.hpp"
#include "repscan/synth.hpp"

using namespace repscan;

namespace {

// Scan data drawn with `seed`; the global model is fit on an independent
// clean draw with the same covariances.
ScanReport scan(SynthSpec spec, std::uint64_t seed) {
  spec.seed = seed;
  const auto data = generate(spec);
  SynthSpec clean_spec = spec;
  clean_spec.infections.clear();
  clean_spec.seed = seed + 1000;
  const auto clean = generate(clean_spec);
  const RunConfig cfg;
  return analyze(data.data, fit_global_model(clean.data, cfg), cfg);
}

}  // namespace

TEST_CASE("one planted infection is the only flag") {
  SynthSpec spec = default_synth_spec(16, 43, 100, 0);
  spec.infections = {{0, 0.3, 6.0}};
  const auto report = scan(spec, 7);
  CHECK(report.flagged_labels() == std::vector<int>{0});
  CHECK(report.scores.size() == 43);
}

TEST_CASE("null scans stay below the threshold") {
  const SynthSpec spec = default_synth_spec(16, 43, 100, 0);
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto report = scan(spec, seed);
    double max_star = 0.0;
    for (const auto& s : report.scores) max_star = std::max(max_star, s.j_star);
    CAPTURE(seed);
    CHECK(max_star < kDefaultThreshold);
  }
}

// Known red: with k = d the null J is the gain of the best two-way split, far
// above a chi-square with d degrees of freedom (mean J_bar is about 19 here).
TEST_CASE("null J_bar has mean within [-3, 3]" * doctest::may_fail()) {
  const SynthSpec spec = default_synth_spec(16, 43, 100, 0);
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto report = scan(spec, seed);
    double mean = 0.0;
    for (const auto& s : report.scores) mean += s.j_bar;
    mean /= static_cast<double>(report.scores.size());
    CAPTURE(seed);
    CHECK(mean >= -3.0);
    CHECK(mean <= 3.0);
  }
}

TEST_CASE("J grows with planted separation") {
  double previous = -1.0;
  for (double s : {0.0, 2.0, 4.0, 6.0, 8.0}) {
    SynthSpec spec = default_synth_spec(16, 43, 100, 0);
    spec.infections = {{0, 0.3, s}};
    const auto report = scan(spec, 3);
    CAPTURE(s);
    CHECK(report.scores[0].j >= previous);
    previous = report.scores[0].j;
  }
}

TEST_CASE("analyze contracts") {
  const auto clean = generate(default_synth_spec(4, 6, 20, 1));
  const RunConfig cfg;
  const GlobalStats stats = fit_global_model(clean.data, cfg);

  SUBCASE("dimension mismatch") {
    const auto other = generate(default_synth_spec(5, 6, 20, 1));
    CHECK_THROWS_AS(analyze(other.data, stats, cfg), DimensionError);
  }
  SUBCASE("too few classes") {
    const auto small = generate(default_synth_spec(4, 2, 20, 1));
    CHECK_THROWS_AS(analyze(small.data, stats, cfg), TooFewClassesError);
  }
  SUBCASE("singleton class is degenerate") {
    Matrix rows = clean.data.rows();
    std::vector<int> labels = clean.data.labels();
    rows.conservativeResize(rows.rows() + 1, Eigen::NoChange);
    rows.row(rows.rows() - 1) = clean.data.rows().row(0);
    labels.push_back(9);
    const auto report = analyze(LabeledMatrix(rows, labels), stats, cfg);
    CHECK(report.scores.back().class_label == 9);
    CHECK(report.scores.back().degenerate);
    CHECK(report.scores.back().j == 0.0);
  }
  SUBCASE("reconstruction holds for every class") {
    for (const auto& c : analyze_classes(clean.data, stats, cfg)) {
      const Matrix rows = (clean.data.class_rows(c.label).rowwise() - stats.center.transpose());
      const Matrix rebuilt = c.decomposition.eps.rowwise() + c.decomposition.mu.transpose();
      CHECK((rebuilt - rows).cwiseAbs().maxCoeff() <= 1e-10);
    }
  }
  SUBCASE("custom dof changes J_bar but not flags") {
    RunConfig custom = cfg;
    custom.dof_mode = DofMode::kCustom;
    custom.dof_value = 250.0;
    const auto a = analyze(clean.data, stats, cfg);
    const auto b = analyze(clean.data, stats, custom);
    CHECK(b.dof == 250.0);
    CHECK(a.flagged_labels() == b.flagged_labels());
    for (std::size_t i = 0; i < a.scores.size(); ++i) {
      CHECK(std::abs(a.scores[i].j_star - b.scores[i].j_star) <= 1e-9);
    }
  }
}
