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

#ifndef REPSCAN_SCORING_HPP
#define REPSCAN_SCORING_HPP

#include <span>
#include <string>
#include <vector>

#include "repscan/config.hpp"
#include "repscan/linalg.hpp"
#include "repscan/untangle.hpp"

namespace repscan {

/// Scales a median absolute deviation to the standard deviation of a normal.
inline constexpr double kMadToSigma = 1.4826;

/// Log-likelihood ratio of the two-subgroup fit against the single-identity
/// fit, both with covariance s_eps:
///   J = sum_r [ |r - mu_t|^2 - |r - mu_j(r)|^2 ]   (Mahalanobis under s_eps)
/// Zero when the untangling was degenerate.
double j_statistic(const Matrix& class_rows, const Vector& mu_t,
                   const UntangleResult& untangled, const SymMatrix& s_eps);
double j_statistic(const Matrix& class_rows, const Vector& mu_t,
                   const UntangleResult& untangled, const SpdFactor& s_eps);

/// (j - k) / sqrt(2k). Throws ConfigError unless k > 0.
double regularize_j(double j, double k);

/// |v_i - median| / (1.4826 * MAD). When MAD is zero, zero deviations score 0
/// and the rest score +infinity. Throws TooFewClassesError for fewer than 3
/// values.
std::vector<double> mad_scores(std::span<const double> values);

/// Signed variant: (v_i - median) / (1.4826 * MAD), same MAD == 0 convention
/// with the sign of the deviation.
std::vector<double> anomaly_index(std::span<const double> values);

double median(std::vector<double> values);

struct ClassStatistic {
  int label = 0;
  double j = 0.0;
  bool degenerate = false;
};

struct ClassScore {
  int class_label = 0;
  double j = 0.0;
  double j_bar = 0.0;
  double j_star = 0.0;
  bool flagged = false;
  bool degenerate = false;
};

struct ScanReport {
  std::vector<ClassScore> scores;  // ascending class label
  double threshold = kDefaultThreshold;
  double dof = 0.0;
  RunConfig config;
  std::string global_fingerprint;

  std::vector<int> flagged_labels() const;
};

/// Regularizes each J with dof k, scores all classes jointly with
/// mad_scores and flags j_star > threshold.
ScanReport assemble_report(std::vector<ClassStatistic> per_class, double k,
                           double threshold = kDefaultThreshold);

}  // namespace repscan

#endif  // REPSCAN_SCORING_HPP
