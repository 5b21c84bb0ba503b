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

#include "repscan/decomposition.hpp"

#include <cmath>
#include <map>
#include <string>

#include "repscan/errors.hpp"

namespace repscan {

namespace {

constexpr double kCollapseTrace = 1e-300;

struct Covariances {
  Matrix s_mu;
  Matrix s_eps;
};

// Covariance of the identity vectors (one per class) and of the pooled
// variation vectors.
Covariances covariances_of(const std::vector<Vector>& identities,
                           const std::vector<const Matrix*>& variations,
                           Eigen::Index total_rows, Eigen::Index d) {
  Matrix ids(static_cast<Eigen::Index>(identities.size()), d);
  for (std::size_t t = 0; t < identities.size(); ++t) {
    ids.row(static_cast<Eigen::Index>(t)) = identities[t].transpose();
  }
  Matrix pooled(total_rows, d);
  Eigen::Index at = 0;
  for (const Matrix* eps : variations) {
    pooled.middleRows(at, eps->rows()) = *eps;
    at += eps->rows();
  }
  return {sample_covariance(ids), sample_covariance(pooled)};
}

double frobenius_change(const SymMatrix& mu_old, const SymMatrix& eps_old,
                        const SymMatrix& mu_new, const SymMatrix& eps_new) {
  const double num = (mu_new.matrix() - mu_old.matrix()).squaredNorm() +
                     (eps_new.matrix() - eps_old.matrix()).squaredNorm();
  const double den = mu_old.matrix().squaredNorm() + eps_old.matrix().squaredNorm();
  if (den == 0.0) return num == 0.0 ? 0.0 : INFINITY;
  return std::sqrt(num / den);
}

void check_collapse(const SymMatrix& s_eps) {
  if (!(s_eps.trace() >= kCollapseTrace)) {
    throw DegenerateDataError("fit_em: variation covariance collapsed (trace " +
                              std::to_string(s_eps.trace()) +
                              "); all representations coincide");
  }
}

}  // namespace

std::pair<LabeledMatrix, Vector> center(const LabeledMatrix& data) {
  if (data.n() == 0) {
    throw DataError("center: empty input");
  }
  const Vector mean = data.rows().colwise().mean().transpose();
  Matrix rows = data.rows().rowwise() - mean.transpose();
  return {LabeledMatrix(std::move(rows), data.labels(), data.class_count()), mean};
}

ClassDecomposition posterior_identity(const Matrix& class_rows, const SymMatrix& s_mu,
                                      const SymMatrix& s_eps, int class_label) {
  const Eigen::Index m = class_rows.rows();
  if (m < 1) {
    throw TooFewSamplesError("posterior_identity: class " + std::to_string(class_label) +
                             " has no rows");
  }
  if (class_rows.cols() != s_eps.dim() || s_mu.dim() != s_eps.dim()) {
    throw DimensionError("posterior_identity: rows are " + std::to_string(class_rows.cols()) +
                         "-dimensional, model is " + std::to_string(s_eps.dim()));
  }
  const BlockInverseParts parts = block_inverse_parts(s_mu, s_eps, static_cast<int>(m));
  const Vector row_sum = class_rows.colwise().sum().transpose();
  const Matrix weight =
      s_mu.matrix() * (parts.f.matrix() + static_cast<double>(m) * parts.g.matrix());

  ClassDecomposition out;
  out.class_label = class_label;
  out.m = static_cast<int>(m);
  out.mu = weight * row_sum;
  out.eps = class_rows.rowwise() - out.mu.transpose();
  return out;
}

GlobalStats fit_em(const LabeledMatrix& clean, const EmOptions& options) {
  if (options.max_iters < 0) throw ConfigError("fit_em: max_iters must be >= 0");
  if (!(options.tol > 0.0)) throw ConfigError("fit_em: tol must be positive");
  if (clean.n() == 0) throw DataError("fit_em: no rows");

  auto [data, mean] = center(clean);
  const Eigen::Index d = data.d();
  const auto by_label = data.indices_by_label();
  if (by_label.size() < 2) {
    throw TooFewClassesError("fit_em: need at least 2 classes, got " +
                             std::to_string(by_label.size()));
  }

  std::vector<std::string> warnings;
  if (data.n() < d + 2) {
    warnings.push_back("fit_em: only " + std::to_string(data.n()) + " rows for dimension " +
                       std::to_string(d) + "; covariance estimates rely on the ridge");
  }

  std::vector<Matrix> class_rows;
  std::vector<int> class_labels;
  class_rows.reserve(by_label.size());
  for (const auto& [label, idx] : by_label) {
    class_rows.push_back(gather_rows(data.rows(), idx));
    class_labels.push_back(label);
  }

  const Matrix total_cov = sample_covariance(data.rows());
  const double ridge = options.ridge_scale * total_cov.trace() / static_cast<double>(d);

  // Initial estimate from plain class means.
  std::vector<Vector> identities(class_rows.size());
  std::vector<Matrix> variations(class_rows.size());
  std::vector<const Matrix*> variation_refs(class_rows.size());
  for (std::size_t t = 0; t < class_rows.size(); ++t) {
    identities[t] = class_rows[t].colwise().mean().transpose();
    variations[t] = class_rows[t].rowwise() - identities[t].transpose();
    variation_refs[t] = &variations[t];
  }
  Covariances cov = covariances_of(identities, variation_refs, data.n(), d);
  SymMatrix s_mu = symmetrize_add_ridge(cov.s_mu, ridge);
  SymMatrix s_eps = symmetrize_add_ridge(cov.s_eps, ridge);
  check_collapse(s_eps);
  if (options.on_iteration) options.on_iteration(0, s_mu, s_eps);

  int iters = 0;
  bool converged = false;
  while (iters < options.max_iters) {
    for (std::size_t t = 0; t < class_rows.size(); ++t) {
      ClassDecomposition dec = posterior_identity(class_rows[t], s_mu, s_eps, class_labels[t]);
      identities[t] = std::move(dec.mu);
      variations[t] = std::move(dec.eps);
    }
    cov = covariances_of(identities, variation_refs, data.n(), d);
    SymMatrix next_mu = symmetrize_add_ridge(cov.s_mu, ridge);
    SymMatrix next_eps = symmetrize_add_ridge(cov.s_eps, ridge);
    check_collapse(next_eps);
    ++iters;

    const double change = frobenius_change(s_mu, s_eps, next_mu, next_eps);
    s_mu = std::move(next_mu);
    s_eps = std::move(next_eps);
    if (options.on_iteration) options.on_iteration(iters, s_mu, s_eps);
    if (change < options.tol) {
      converged = true;
      break;
    }
  }

  return GlobalStats{std::move(mean), std::move(s_mu), std::move(s_eps), iters, converged,
                     std::move(warnings)};
}

}  // namespace repscan
