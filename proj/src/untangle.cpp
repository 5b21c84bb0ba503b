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

#include "repscan/untangle.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "repscan/errors.hpp"

namespace repscan {

namespace {

constexpr double kTieTolerance = 1e-12;

bool two_sided(const std::vector<int>& labels) {
  bool has1 = false;
  bool has2 = false;
  for (int l : labels) {
    has1 |= (l == 1);
    has2 |= (l == 2);
  }
  return has1 && has2;
}

std::vector<int> relabel(const Matrix& rows, const Hyperplane& h) {
  std::vector<int> out(static_cast<std::size_t>(rows.rows()));
  for (Eigen::Index i = 0; i < rows.rows(); ++i) {
    out[static_cast<std::size_t>(i)] = assign_side(h, rows.row(i).transpose());
  }
  return out;
}

}  // namespace

Hyperplane lda_direction(const Vector& mu1, const Vector& mu2, const SpdFactor& s_eps) {
  if (mu1.size() != mu2.size() || mu1.size() != s_eps.dim()) {
    throw DimensionError("lda_direction: dimension mismatch");
  }
  Hyperplane h;
  h.v = s_eps.solve(Vector(mu1 - mu2));
  h.t = 0.5 * (s_eps.inv_quadratic(mu1) - s_eps.inv_quadratic(mu2));
  return h;
}

Hyperplane lda_direction(const Vector& mu1, const Vector& mu2, const SymMatrix& s_eps) {
  return lda_direction(mu1, mu2, SpdFactor(s_eps));
}

std::optional<std::pair<Vector, Vector>> subgroup_means(const Matrix& class_rows,
                                                        const std::vector<int>& labels) {
  if (static_cast<std::size_t>(class_rows.rows()) != labels.size()) {
    throw DimensionError("subgroup_means: " + std::to_string(class_rows.rows()) +
                         " rows but " + std::to_string(labels.size()) + " labels");
  }
  Vector sum1 = Vector::Zero(class_rows.cols());
  Vector sum2 = Vector::Zero(class_rows.cols());
  Eigen::Index n1 = 0;
  Eigen::Index n2 = 0;
  for (Eigen::Index i = 0; i < class_rows.rows(); ++i) {
    const int l = labels[static_cast<std::size_t>(i)];
    if (l == 1) {
      sum1 += class_rows.row(i).transpose();
      ++n1;
    } else if (l == 2) {
      sum2 += class_rows.row(i).transpose();
      ++n2;
    } else {
      throw DataError("subgroup_means: label " + std::to_string(l) + " is not 1 or 2");
    }
  }
  if (n1 == 0 || n2 == 0) return std::nullopt;
  return std::make_pair(Vector(sum1 / static_cast<double>(n1)),
                        Vector(sum2 / static_cast<double>(n2)));
}

double fisher_criterion(const Vector& v, const Vector& mu1, const Vector& mu2,
                        const SymMatrix& s_eps) {
  const double between = v.dot(mu1 - mu2);
  const double within = 2.0 * v.dot(s_eps.matrix() * v);
  if (within <= 0.0) return 0.0;
  return between * between / within;
}

std::size_t UntangleResult::count(int label) const {
  return static_cast<std::size_t>(std::count(labels.begin(), labels.end(), label));
}

int assign_side(const Hyperplane& h, const Eigen::Ref<const Vector>& r) {
  const double score = h.v.dot(r);
  const double tol = kTieTolerance * (1.0 + std::abs(h.t));
  return score >= h.t - tol ? 1 : 2;
}

std::vector<int> initial_split(const Matrix& class_rows) {
  const Eigen::Index m = class_rows.rows();
  const Matrix cov = sample_covariance(class_rows);
  Eigen::SelfAdjointEigenSolver<Matrix> eig(cov);
  Vector dir = eig.eigenvectors().col(cov.cols() - 1);
  Eigen::Index pivot = 0;
  dir.cwiseAbs().maxCoeff(&pivot);
  if (dir(pivot) < 0.0) dir = -dir;

  const Vector proj = class_rows * dir;
  std::vector<double> sorted(proj.data(), proj.data() + m);
  std::sort(sorted.begin(), sorted.end());
  const std::size_t half = static_cast<std::size_t>(m / 2);
  const double median = (m % 2 == 1) ? sorted[half] : 0.5 * (sorted[half - 1] + sorted[half]);

  std::vector<int> labels(static_cast<std::size_t>(m));
  for (Eigen::Index i = 0; i < m; ++i) {
    labels[static_cast<std::size_t>(i)] = proj(i) < median ? 1 : 2;
  }
  return labels;
}

UntangleResult untangle_class_from(const Matrix& class_rows, const SymMatrix& s_eps,
                                   std::vector<int> initial_labels, int max_iters) {
  if (class_rows.rows() < 2) {
    throw TooFewSamplesError("untangle_class: need at least 2 rows, got " +
                             std::to_string(class_rows.rows()));
  }
  if (class_rows.cols() != s_eps.dim()) {
    throw DimensionError("untangle_class: rows are " + std::to_string(class_rows.cols()) +
                         "-dimensional, S_eps is " + std::to_string(s_eps.dim()));
  }
  if (max_iters < 1) throw ConfigError("untangle_class: max_iters must be positive");
  const SpdFactor factor(s_eps);

  UntangleResult out;
  std::vector<int> labels = std::move(initial_labels);
  const auto first = subgroup_means(class_rows, labels);
  if (!first) {
    const Vector mean = class_rows.colwise().mean().transpose();
    out.mu1 = mean;
    out.mu2 = mean;
    out.v = Vector::Zero(class_rows.cols());
    out.labels = std::move(labels);
    out.degenerate = true;
    return out;
  }

  std::set<std::vector<int>> seen;
  for (int iter = 1; iter <= max_iters; ++iter) {
    auto means = subgroup_means(class_rows, labels);
    const Hyperplane h = lda_direction(means->first, means->second, factor);
    out.fld_history.push_back(fisher_criterion(h.v, means->first, means->second, s_eps));
    out.mu1 = std::move(means->first);
    out.mu2 = std::move(means->second);
    out.v = h.v;
    out.t = h.t;
    out.iters = iter;

    std::vector<int> next = relabel(class_rows, h);
    if (!two_sided(next)) {
      out.labels = std::move(labels);
      out.degenerate = true;
      return out;
    }
    if (next == labels) {
      out.labels = std::move(next);
      out.converged = true;
      return out;
    }
    if (seen.count(next) != 0) {
      out.labels = std::move(next);
      return out;
    }
    seen.insert(labels);
    labels = std::move(next);
  }
  out.labels = std::move(labels);
  return out;
}

UntangleResult untangle_class(const Matrix& class_rows, const SymMatrix& s_eps,
                              int max_iters) {
  if (class_rows.rows() < 2) {
    throw TooFewSamplesError("untangle_class: need at least 2 rows, got " +
                             std::to_string(class_rows.rows()));
  }
  return untangle_class_from(class_rows, s_eps, initial_split(class_rows), max_iters);
}

}  // namespace repscan
