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

#ifndef REPSCAN_DECOMPOSITION_HPP
#define REPSCAN_DECOMPOSITION_HPP

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "repscan/dataset.hpp"
#include "repscan/linalg.hpp"

namespace repscan {

/// Global identity/variation model: r - center = mu + eps with
/// mu ~ N(0, s_mu) shared by a class and eps ~ N(0, s_eps) per sample.
struct GlobalStats {
  Vector center;
  SymMatrix s_mu;
  SymMatrix s_eps;
  int em_iters_used = 0;
  bool converged = false;
  std::vector<std::string> warnings;

  Eigen::Index d() const noexcept { return s_eps.dim(); }
};

/// Identity estimate and per-sample variations of one class. Row j of `eps`
/// is r_j - mu.
struct ClassDecomposition {
  int class_label = 0;
  Vector mu;
  Matrix eps;
  int m = 0;
};

struct EmOptions {
  int max_iters = 50;
  double tol = 1e-5;
  double ridge_scale = kDefaultRidgeScale;
  /// Called with iteration 0 for the initial estimate, then after each M-step.
  std::function<void(int, const SymMatrix&, const SymMatrix&)> on_iteration;
};

/// Subtracts the column mean. Throws DataError on empty input.
std::pair<LabeledMatrix, Vector> center(const LabeledMatrix& data);

/// Posterior mean of the class identity given m rows,
///   mu = sum_i S_mu (F + m G) r_i,
/// using the block-structured inverse, and eps_j = r_j - mu.
ClassDecomposition posterior_identity(const Matrix& class_rows, const SymMatrix& s_mu,
                                      const SymMatrix& s_eps, int class_label = 0);

/// Point-estimate EM for (S_mu, S_eps) on clean data. The data is centered
/// internally and the mean recorded in the result.
///
/// Initial estimate: between-class covariance of class means and pooled
/// covariance of deviations from class means. Each iteration computes the
/// posterior identity of every class, then sets S_mu to the covariance of the
/// identities and S_eps to the covariance of all variation vectors. Both are
/// symmetrized and receive a ridge of ridge_scale * trace(total covariance) / d.
///
/// Throws TooFewClassesError for fewer than two populated classes and
/// DegenerateDataError when S_eps collapses.
GlobalStats fit_em(const LabeledMatrix& clean, const EmOptions& options = {});

}  // namespace repscan

#endif  // REPSCAN_DECOMPOSITION_HPP
