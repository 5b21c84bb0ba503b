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

#include "repscan/scoring.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "repscan/errors.hpp"

namespace repscan {

double j_statistic(const Matrix& class_rows, const Vector& mu_t,
                   const UntangleResult& untangled, const SpdFactor& s_eps) {
  if (class_rows.cols() != s_eps.dim() || mu_t.size() != s_eps.dim()) {
    throw DimensionError("j_statistic: dimension mismatch");
  }
  if (untangled.degenerate) return 0.0;
  if (untangled.labels.size() != static_cast<std::size_t>(class_rows.rows())) {
    throw DimensionError("j_statistic: " + std::to_string(untangled.labels.size()) +
                         " labels for " + std::to_string(class_rows.rows()) + " rows");
  }
  if (untangled.mu1.size() != s_eps.dim() || untangled.mu2.size() != s_eps.dim()) {
    throw DimensionError("j_statistic: subgroup means have the wrong dimension");
  }
  double j = 0.0;
  for (Eigen::Index i = 0; i < class_rows.rows(); ++i) {
    const Vector r = class_rows.row(i).transpose();
    const Vector& mu_j = untangled.labels[static_cast<std::size_t>(i)] == 1 ? untangled.mu1
                                                                             : untangled.mu2;
    j += s_eps.inv_quadratic(r - mu_t) - s_eps.inv_quadratic(r - mu_j);
  }
  return j;
}

double j_statistic(const Matrix& class_rows, const Vector& mu_t,
                   const UntangleResult& untangled, const SymMatrix& s_eps) {
  return j_statistic(class_rows, mu_t, untangled, SpdFactor(s_eps));
}

double regularize_j(double j, double k) {
  if (!(k > 0.0) || !std::isfinite(k)) {
    throw ConfigError("regularize_j: degrees of freedom must be positive");
  }
  return (j - k) / std::sqrt(2.0 * k);
}

double median(std::vector<double> values) {
  if (values.empty()) throw DataError("median of an empty list");
  const std::size_t n = values.size();
  const std::size_t half = n / 2;
  std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(half),
                   values.end());
  const double upper = values[half];
  if (n % 2 == 1) return upper;
  const double lower =
      *std::max_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(half));
  return 0.5 * (lower + upper);
}

namespace {

std::vector<double> deviations(std::span<const double> values, bool keep_sign) {
  if (values.size() < 3) {
    throw TooFewClassesError("MAD scoring needs at least 3 values, got " +
                             std::to_string(values.size()));
  }
  const double center = median(std::vector<double>(values.begin(), values.end()));
  std::vector<double> abs_dev(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) abs_dev[i] = std::abs(values[i] - center);
  const double scale = median(abs_dev) * kMadToSigma;

  std::vector<double> out(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double dev = keep_sign ? values[i] - center : abs_dev[i];
    if (scale > 0.0) {
      out[i] = dev / scale;
    } else if (dev == 0.0) {
      out[i] = 0.0;
    } else {
      out[i] = std::copysign(std::numeric_limits<double>::infinity(), dev);
    }
  }
  return out;
}

}  // namespace

std::vector<double> mad_scores(std::span<const double> values) {
  return deviations(values, false);
}

std::vector<double> anomaly_index(std::span<const double> values) {
  return deviations(values, true);
}

std::vector<int> ScanReport::flagged_labels() const {
  std::vector<int> out;
  for (const auto& s : scores) {
    if (s.flagged) out.push_back(s.class_label);
  }
  return out;
}

ScanReport assemble_report(std::vector<ClassStatistic> per_class, double k,
                           double threshold) {
  if (!(threshold > 0.0)) throw ConfigError("assemble_report: threshold must be positive");
  std::sort(per_class.begin(), per_class.end(),
            [](const ClassStatistic& a, const ClassStatistic& b) { return a.label < b.label; });

  ScanReport report;
  report.threshold = threshold;
  report.dof = k;
  std::vector<double> j_bar(per_class.size());
  for (std::size_t i = 0; i < per_class.size(); ++i) j_bar[i] = regularize_j(per_class[i].j, k);
  const std::vector<double> j_star = mad_scores(j_bar);

  report.scores.reserve(per_class.size());
  for (std::size_t i = 0; i < per_class.size(); ++i) {
    ClassScore s;
    s.class_label = per_class[i].label;
    s.j = per_class[i].j;
    s.j_bar = j_bar[i];
    s.j_star = j_star[i];
    s.flagged = j_star[i] > threshold;
    s.degenerate = per_class[i].degenerate;
    report.scores.push_back(s);
  }
  return report;
}

}  // namespace repscan
