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

#ifndef REPSCAN_UNTANGLE_HPP
#define REPSCAN_UNTANGLE_HPP

#include <optional>
#include <utility>
#include <vector>

#include "repscan/linalg.hpp"

namespace repscan {

inline constexpr int kDefaultUntangleIters = 100;

/// Fisher discriminant between two Gaussians sharing covariance s_eps:
///   v = s_eps^{-1} (mu1 - mu2),
///   t = (mu1^T s_eps^{-1} mu1 - mu2^T s_eps^{-1} mu2) / 2.
struct Hyperplane {
  Vector v;
  double t = 0.0;
};

Hyperplane lda_direction(const Vector& mu1, const Vector& mu2, const SymMatrix& s_eps);
Hyperplane lda_direction(const Vector& mu1, const Vector& mu2, const SpdFactor& s_eps);

/// Plain means of the rows labelled 1 and 2. Returns nullopt when either
/// subgroup is empty. Throws DimensionError if labels and rows disagree.
std::optional<std::pair<Vector, Vector>> subgroup_means(const Matrix& class_rows,
                                                        const std::vector<int>& labels);

/// Fisher criterion v^T Sb v / v^T Sw v with Sb = (mu1-mu2)(mu1-mu2)^T and
/// Sw = 2 s_eps.
double fisher_criterion(const Vector& v, const Vector& mu1, const Vector& mu2,
                        const SymMatrix& s_eps);

struct UntangleResult {
  Vector mu1;
  Vector mu2;
  std::vector<int> labels;  // 1 or 2 per row
  Vector v;
  double t = 0.0;
  int iters = 0;
  bool converged = false;
  bool degenerate = false;
  /// Fisher criterion of each hyperplane computed, in order.
  std::vector<double> fld_history;

  std::size_t count(int label) const;
};

/// Alternating two-subgroup fit with S_eps held fixed: subgroup means, then
/// the discriminant hyperplane, then relabelling. A row gets label 1 when
/// v^T r >= t (it lies on mu1's side; rows on the plane within 1e-12 go to 1)
/// and label 2 otherwise.
///
/// Initial labels split the rows at the median of their projection on the
/// leading eigenvector of the class covariance. Stops when the labels repeat
/// (converged), when a previously seen labelling recurs (cycle, not
/// converged), or after max_iters. An empty subgroup yields degenerate=true
/// with the last two-sided labelling.
///
/// Throws TooFewSamplesError when class_rows has fewer than two rows.
UntangleResult untangle_class(const Matrix& class_rows, const SymMatrix& s_eps,
                              int max_iters = kDefaultUntangleIters);

/// Same iteration from caller-supplied initial labels (values 1 or 2).
UntangleResult untangle_class_from(const Matrix& class_rows, const SymMatrix& s_eps,
                                   std::vector<int> initial_labels,
                                   int max_iters = kDefaultUntangleIters);

/// The median-split initialization used by untangle_class.
std::vector<int> initial_split(const Matrix& class_rows);

/// Label of one row under hyperplane h.
int assign_side(const Hyperplane& h, const Eigen::Ref<const Vector>& r);

}  // namespace repscan

#endif  // REPSCAN_UNTANGLE_HPP
