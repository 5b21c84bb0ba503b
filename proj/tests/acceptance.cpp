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

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "repscan/contamination.hpp"
#include "repscan/decomposition.hpp"
#include "repscan/pipeline.hpp"
#include "repscan/scoring.hpp"
#include "repscan/synth.hpp"
#include "repscan/untangle.hpp"
#include "support.hpp"

using namespace repscan;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

constexpr std::uint64_t kSeeds[] = {1, 2, 3, 4, 5};

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), pattern, a, b, c);
  return buf;
}

// A scan fixture: data to analyze plus a global model fit on an independent
// clean draw with the same covariances.
struct Fixture {
  SynthData scan;
  GlobalStats stats;
};

Fixture make_fixture(int d, int classes, int m, std::uint64_t seed,
                     std::vector<Infection> infections = {}) {
  SynthSpec spec = default_synth_spec(d, classes, m, 1000 + seed);
  spec.infections = std::move(infections);
  SynthSpec clean = default_synth_spec(d, classes, m, 5000 + seed);
  return {generate(spec), fit_global_model(generate(clean).data, RunConfig{})};
}

Outcome inverse_equivalence() {
  std::mt19937_64 gen(101);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const int d = 1 + trial % 8;
    const int m = 1 + (trial / 8) % 6;
    const SymMatrix s_mu = testing::random_spd(gen, d);
    const SymMatrix s_eps = testing::random_spd(gen, d);
    const Matrix fast = assemble_block_inverse(block_inverse_parts(s_mu, s_eps, m));
    const Matrix dense = assemble_class_covariance(s_mu, s_eps, m).inverse();
    worst = std::max(worst, (fast - dense).cwiseAbs().maxCoeff());
  }
  return {worst <= 1e-7, fmt("max entry error %.3g over 100 pairs", worst)};
}

Outcome reconstruction() {
  double worst = 0.0;
  int fixtures = 0;
  auto check = [&](const LabeledMatrix& data, const GlobalStats& stats) {
    for (const auto& c : analyze_classes(data, stats, RunConfig{})) {
      const Matrix centered = data.class_rows(c.label).rowwise() - stats.center.transpose();
      const Matrix rebuilt = c.decomposition.eps.rowwise() + c.decomposition.mu.transpose();
      worst = std::max(worst, (rebuilt - centered).cwiseAbs().maxCoeff());
    }
    ++fixtures;
  };
  for (std::uint64_t seed : kSeeds) {
    const auto null = make_fixture(16, 43, 100, seed);
    check(null.scan.data, null.stats);
    const auto infected = make_fixture(16, 43, 100, seed, {{0, 0.3, 6.0}});
    check(infected.scan.data, infected.stats);
  }
  std::mt19937_64 gen(102);
  for (int trial = 0; trial < 20; ++trial) {
    const int d = 1 + trial % 6;
    SynthSpec spec = default_synth_spec(d, 4, 2 + trial % 9, 200 + trial);
    spec.s_mu_true = testing::random_spd(gen, d);
    spec.s_eps_true = testing::random_spd(gen, d);
    const auto data = generate(spec).data;
    check(data, fit_global_model(data, RunConfig{}));
  }
  return {worst <= 1e-10, fmt("max component error %.3g over %.0f fixtures", worst, fixtures)};
}

Outcome estep_equivalence() {
  std::mt19937_64 gen(103);
  double worst = 0.0;
  int cases = 0;
  for (int d = 1; d <= 4; ++d) {
    for (int m = 1; m <= 4; ++m) {
      for (int rep = 0; rep < 5; ++rep, ++cases) {
        const SymMatrix s_mu = testing::random_spd(gen, d);
        const SymMatrix s_eps = testing::random_spd(gen, d);
        const Matrix rows = testing::random_matrix(gen, m, d);
        const Vector fast = posterior_identity(rows, s_mu, s_eps).mu;
        const Vector dense = testing::dense_posterior_identity(rows, s_mu, s_eps);
        worst = std::max(worst, (fast - dense).norm() / std::max(dense.norm(), 1e-300));
      }
    }
  }
  return {worst <= 1e-7, fmt("max relative error %.3g over %.0f cases", worst, cases)};
}

Outcome em_recovery() {
  double worst = 0.0;
  for (std::uint64_t seed : kSeeds) {
    const SynthSpec spec = default_synth_spec(16, 50, 40, seed);
    const GlobalStats fit = fit_em(generate(spec).data);
    const Matrix& truth = spec.s_eps_true.matrix();
    worst = std::max(worst, (fit.s_eps.matrix() - truth).norm() / truth.norm());
  }
  return {worst <= 0.15, fmt("worst relative Frobenius error %.4f", worst)};
}

double max_star(const ScanReport& r, int skip = -1) {
  double best = -1.0;
  for (const auto& s : r.scores) {
    if (s.class_label != skip) best = std::max(best, s.j_star);
  }
  return best;
}

Outcome null_calibration() {
  double worst = 0.0;
  for (std::uint64_t seed : kSeeds) {
    const auto f = make_fixture(16, 43, 100, seed);
    worst = std::max(worst, max_star(analyze(f.scan.data, f.stats, RunConfig{})));
  }
  return {worst < 7.3891, fmt("max J* %.3f across seeds", worst)};
}

Outcome detection_power() {
  bool ok = true;
  double lowest_hit = INFINITY, highest_clean = 0.0;
  for (std::uint64_t seed : kSeeds) {
    const auto f = make_fixture(16, 43, 100, seed, {{0, 0.3, 6.0}});
    const auto r = analyze(f.scan.data, f.stats, RunConfig{});
    const double hit = r.scores[0].j_star;
    const double rest = max_star(r, 0);
    ok = ok && r.scores[0].flagged && hit > rest && rest < r.threshold;
    lowest_hit = std::min(lowest_hit, hit);
    highest_clean = std::max(highest_clean, rest);
  }
  return {ok, fmt("infected J* >= %.2f, clean J* <= %.3f", lowest_hit, highest_clean)};
}

Outcome multi_infection() {
  const std::vector<int> infected{0, 7, 14, 21, 28};
  std::vector<Infection> plan;
  for (int c : infected) plan.push_back({c, 0.3, 6.0});
  int missed = 0, false_pos = 0;
  for (std::uint64_t seed : kSeeds) {
    const auto f = make_fixture(16, 43, 100, seed, plan);
    const auto flagged = analyze(f.scan.data, f.stats, RunConfig{}).flagged_labels();
    for (int c : infected) missed += std::count(flagged.begin(), flagged.end(), c) == 0;
    for (int c : flagged) false_pos += std::count(infected.begin(), infected.end(), c) == 0;
  }
  return {missed == 0 && false_pos == 0,
          fmt("%.0f missed, %.0f false positives over 5 seeds", missed, false_pos)};
}

Outcome untangle_recovery() {
  std::ostringstream detail;
  bool ok = true;
  for (double p : {0.1, 0.3, 0.5}) {
    double worst = 1.0;
    for (std::uint64_t seed : kSeeds) {
      SynthSpec spec = default_synth_spec(16, 1, 200, seed);
      spec.infections = {{0, p, 4.0}};
      const auto data = generate(spec);
      const auto u = untangle_class(data.data.rows(), spec.s_eps_true);
      int agree = 0;
      for (std::size_t i = 0; i < u.labels.size(); ++i) {
        agree += (u.labels[i] == 2) == (data.truth[i] == SampleTag::kMix);
      }
      const double n = static_cast<double>(u.labels.size());
      worst = std::min(worst, std::max(agree, static_cast<int>(n) - agree) / n);
    }
    ok = ok && worst >= 0.95;
    detail << (p == 0.1 ? "" : ", ") << "p=" << p << " worst " << fmt("%.3f", worst);
  }
  return {ok, "s=4, m=200: " + detail.str()};
}

Outcome scoring_exactness() {
  Matrix rows(4, 1);
  rows << -2, -2, 2, 2;
  UntangleResult u;
  u.labels = {1, 1, 2, 2};
  u.mu1 = Vector::Constant(1, -2.0);
  u.mu2 = Vector::Constant(1, 2.0);
  u.v = Vector::Ones(1);
  const double j = j_statistic(rows, Vector::Zero(1), u, SymMatrix::identity(1));
  const std::vector<double> list{1, 2, 3, 4, 100};
  const double star = mad_scores(list)[4];
  const double k = 16.0;
  const double err = std::max({std::abs(j - 16.0), std::abs(star - 97.0 / 1.4826),
                               std::abs(regularize_j(k, k)),
                               std::abs(regularize_j(k + std::sqrt(2 * k), k) - 1.0)});
  return {err <= 1e-9, fmt("J=%.12g, MAD score=%.6f, max error %.3g", j, star, err)};
}

Outcome poisoning_exactness() {
  std::mt19937_64 gen(110);
  bool ok = true;
  const Vector x = testing::random_matrix(gen, 5, 1).col(0);
  const Vector delta = testing::random_matrix(gen, 5, 1).col(0);
  ok = ok && stamp(x, TriggerSpec(Vector::Zero(5), delta)) == x;
  ok = ok && stamp(x, TriggerSpec(Vector::Ones(5), delta)) == delta;

  std::vector<int> labels;
  for (int c = 0; c < 10; ++c) labels.insert(labels.end(), 100, c);
  const LabeledMatrix data(testing::random_matrix(gen, 1000, 5), labels);
  const TriggerSpec t(Vector::Constant(5, 0.25), delta);
  PoisonPlan plan;
  plan.source_label = 0;
  plan.target_label = 1;
  plan.cover_labels = {2, 3};
  plan.seed = 42;
  const auto a = poison_dataset(data, t, plan);
  const auto b = poison_dataset(data, t, plan);
  const auto attacks = std::count(a.appended.begin(), a.appended.end(), Provenance::kAttack);
  ok = ok && a.data.n() == 1030 && attacks == 20 && a.appended.size() == 30;
  ok = ok && a.data.rows().topRows(1000) == data.rows();
  ok = ok && std::equal(labels.begin(), labels.end(), a.data.labels().begin());
  ok = ok && a.data == b.data && a.appended == b.appended;
  return {ok, fmt("n 1000 -> %.0f rows, %.0f attack + %.0f cover", a.data.n(), attacks,
                  static_cast<double>(a.appended.size()) - attacks)};
}

Outcome mad_invariance() {
  std::mt19937_64 gen(111);
  std::uniform_int_distribution<int> len(5, 60);
  std::uniform_real_distribution<double> scale(-3.0, 3.0), shift(-1e3, 1e3), val(-50.0, 50.0);
  const double thresholds[] = {0.5, 1.0, 2.0, kDefaultThreshold};
  double worst = 0.0;
  bool same_flags = true;
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<double> v(static_cast<std::size_t>(len(gen)));
    for (double& x : v) x = val(gen);
    const double a = std::pow(10.0, scale(gen));
    const double b = shift(gen);
    std::vector<double> w(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) w[i] = a * v[i] + b;
    const auto sv = mad_scores(v), sw = mad_scores(w);
    for (std::size_t i = 0; i < v.size(); ++i) {
      worst = std::max(worst, std::abs(sv[i] - sw[i]));
      for (double th : thresholds) same_flags = same_flags && ((sv[i] > th) == (sw[i] > th));
    }
  }
  return {worst <= 1e-9 && same_flags, fmt("max score change %.3g over 1000 lists", worst)};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
    double budget_s;  // 0 = unbounded
  };
  const std::vector<Criterion> criteria = {
      {"block inverse matches dense inverse", inverse_equivalence, 5.0},
      {"identity + variation reconstructs centered rows", reconstruction, 0.0},
      {"posterior identity matches dense evaluation", estep_equivalence, 0.0},
      {"EM recovers the variation covariance", em_recovery, 30.0},
      {"clean data raises no flag", null_calibration, 60.0},
      {"single infection is the unique flagged argmax", detection_power, 0.0},
      {"five infections flagged without false positives", multi_infection, 0.0},
      {"untangling recovers planted subgroups", untangle_recovery, 0.0},
      {"hand-derived scores", scoring_exactness, 0.0},
      {"poisoning arithmetic and determinism", poisoning_exactness, 0.0},
      {"robust score is affine invariant", mad_invariance, 0.0},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = criteria[i].run();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (criteria[i].budget_s > 0.0 && secs >= criteria[i].budget_s) {
      out.pass = false;
      out.detail += fmt(" (over the %.0f s budget)", criteria[i].budget_s);
    }
    failures += !out.pass;
    std::printf("%s [%2zu] %s: %s (%.2f s)\n", out.pass ? "PASS" : "FAIL", i + 1,
                criteria[i].name, out.detail.c_str(), secs);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
