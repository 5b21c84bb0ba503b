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

#include "repscan/linalg.hpp"

#include <cmath>
#include <string>

#include "repscan/errors.hpp"

namespace repscan {

namespace {

void check_square(const Matrix& a, const char* what) {
  if (a.rows() == 0 || a.rows() != a.cols()) {
    throw DimensionError(std::string(what) + ": expected a non-empty square matrix, got " +
                         std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
  }
}

void check_finite(const Matrix& a, const char* what) {
  if (!a.allFinite()) {
    throw NumericError(std::string(what) + ": non-finite entry");
  }
}

Matrix symmetric_part(const Matrix& a) {
  const Eigen::Index d = a.rows();
  Matrix s(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    s(i, i) = a(i, i);
    for (Eigen::Index j = i + 1; j < d; ++j) {
      const double v = 0.5 * (a(i, j) + a(j, i));
      s(i, j) = v;
      s(j, i) = v;
    }
  }
  return s;
}

}  // namespace

SymMatrix::SymMatrix(const Matrix& a) {
  check_square(a, "SymMatrix");
  check_finite(a, "SymMatrix");
  m_ = symmetric_part(a);
}

SymMatrix SymMatrix::identity(Eigen::Index d) {
  return SymMatrix(Matrix::Identity(d, d));
}

SymMatrix SymMatrix::zero(Eigen::Index d) { return SymMatrix(Matrix::Zero(d, d)); }

SymMatrix SymMatrix::diagonal(const Vector& diag) {
  return SymMatrix(Matrix(diag.asDiagonal()));
}

SymMatrix symmetrize_regularize(const Matrix& a, double ridge_scale) {
  if (!(ridge_scale >= 0.0) || !std::isfinite(ridge_scale)) {
    throw ConfigError("ridge_scale must be a finite non-negative number");
  }
  check_square(a, "symmetrize_regularize");
  check_finite(a, "symmetrize_regularize");
  Matrix s = symmetric_part(a);
  const double ridge = ridge_scale * s.trace() / static_cast<double>(s.rows());
  s.diagonal().array() += ridge;
  return SymMatrix(s);
}

SymMatrix symmetrize_add_ridge(const Matrix& a, double ridge) {
  if (!(ridge >= 0.0) || !std::isfinite(ridge)) {
    throw ConfigError("ridge must be a finite non-negative number");
  }
  check_square(a, "symmetrize_add_ridge");
  check_finite(a, "symmetrize_add_ridge");
  Matrix s = symmetric_part(a);
  s.diagonal().array() += ridge;
  return SymMatrix(s);
}

SpdFactor::SpdFactor(const SymMatrix& a) : lower_(Matrix::Zero(a.dim(), a.dim())) {
  const Matrix& src = a.matrix();
  const Eigen::Index d = a.dim();
  for (Eigen::Index j = 0; j < d; ++j) {
    double pivot = src(j, j) - lower_.row(j).head(j).squaredNorm();
    if (!(pivot > 0.0) || !std::isfinite(pivot)) {
      throw SingularError("matrix is not positive definite (pivot " + std::to_string(j) +
                              " = " + std::to_string(pivot) + ")",
                          static_cast<std::size_t>(j));
    }
    const double ljj = std::sqrt(pivot);
    lower_(j, j) = ljj;
    for (Eigen::Index i = j + 1; i < d; ++i) {
      const double s = src(i, j) - lower_.row(i).head(j).dot(lower_.row(j).head(j));
      lower_(i, j) = s / ljj;
    }
  }
}

Matrix SpdFactor::solve(const Matrix& b) const {
  if (b.rows() != dim()) {
    throw DimensionError("spd_solve: right-hand side has " + std::to_string(b.rows()) +
                         " rows, expected " + std::to_string(dim()));
  }
  const auto l = lower_.triangularView<Eigen::Lower>();
  Matrix y = l.solve(b);
  return l.transpose().solve(y);
}

Vector SpdFactor::solve(const Vector& b) const {
  Matrix x = solve(Matrix(b));
  return x.col(0);
}

double SpdFactor::inv_quadratic(const Vector& x) const {
  if (x.size() != dim()) {
    throw DimensionError("inv_quadratic: vector has length " + std::to_string(x.size()) +
                         ", expected " + std::to_string(dim()));
  }
  const Vector y = lower_.triangularView<Eigen::Lower>().solve(x);
  return y.squaredNorm();
}

SymMatrix SpdFactor::inverse() const {
  return SymMatrix(solve(Matrix(Matrix::Identity(dim(), dim()))));
}

Matrix spd_solve(const SymMatrix& a, const Matrix& b) { return SpdFactor(a).solve(b); }

BlockInverseParts block_inverse_parts(const SymMatrix& s_mu, const SymMatrix& s_eps,
                                      int m) {
  if (m < 1) {
    throw ConfigError("block_inverse_parts: m must be positive");
  }
  if (s_mu.dim() != s_eps.dim()) {
    throw DimensionError("block_inverse_parts: S_mu is " + std::to_string(s_mu.dim()) +
                         "-dimensional but S_eps is " + std::to_string(s_eps.dim()));
  }
  const SpdFactor eps_factor(s_eps);
  SymMatrix f = eps_factor.inverse();

  const SymMatrix coupled(static_cast<double>(m) * s_mu.matrix() + s_eps.matrix());
  const SpdFactor coupled_factor(coupled);
  // S_mu S_eps^{-1}, then left-multiply by -(m S_mu + S_eps)^{-1}.
  const Matrix mu_f = s_mu.matrix() * f.matrix();
  SymMatrix g(-coupled_factor.solve(mu_f));
  return BlockInverseParts{std::move(f), std::move(g), m};
}

Matrix assemble_block_inverse(const BlockInverseParts& parts) {
  const Eigen::Index d = parts.f.dim();
  const Eigen::Index m = parts.m;
  Matrix out(m * d, m * d);
  const Matrix diag_block = parts.f.matrix() + parts.g.matrix();
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) {
      out.block(i * d, j * d, d, d) = (i == j) ? diag_block : parts.g.matrix();
    }
  }
  return out;
}

Matrix assemble_class_covariance(const SymMatrix& s_mu, const SymMatrix& s_eps, int m) {
  if (s_mu.dim() != s_eps.dim()) {
    throw DimensionError("assemble_class_covariance: dimension mismatch");
  }
  const Eigen::Index d = s_mu.dim();
  Matrix out(m * d, m * d);
  const Matrix diag_block = s_mu.matrix() + s_eps.matrix();
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) {
      out.block(i * d, j * d, d, d) = (i == j) ? diag_block : s_mu.matrix();
    }
  }
  return out;
}

double mahalanobis_sq(const Vector& x, const Vector& mu, const SpdFactor& s) {
  if (x.size() != mu.size() || x.size() != s.dim()) {
    throw DimensionError("mahalanobis_sq: dimension mismatch");
  }
  return s.inv_quadratic(x - mu);
}

double mahalanobis_sq(const Vector& x, const Vector& mu, const SymMatrix& s) {
  return mahalanobis_sq(x, mu, SpdFactor(s));
}

Matrix sample_covariance(const Matrix& rows) {
  const Eigen::Index n = rows.rows();
  if (n == 0) {
    throw DimensionError("sample_covariance: no rows");
  }
  const Eigen::RowVectorXd mean = rows.colwise().mean();
  const Matrix centered = rows.rowwise() - mean;
  const double denom = n > 1 ? static_cast<double>(n - 1) : 1.0;
  return (centered.transpose() * centered) / denom;
}

}  // namespace repscan
