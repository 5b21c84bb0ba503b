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

#ifndef REPSCAN_LINALG_HPP
#define REPSCAN_LINALG_HPP

#include <Eigen/Dense>

#include <cstddef>

namespace repscan {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

inline constexpr double kDefaultRidgeScale = 1e-6;

/// Dense symmetric matrix. Construction symmetrizes as (a + a^T) / 2, so
/// entry (i, j) and (j, i) are bit-identical afterwards.
class SymMatrix {
 public:
  /// Throws DimensionError if `a` is empty or not square, NumericError if
  /// any entry is non-finite.
  explicit SymMatrix(const Matrix& a);

  static SymMatrix identity(Eigen::Index d);
  static SymMatrix zero(Eigen::Index d);
  static SymMatrix diagonal(const Vector& diag);

  Eigen::Index dim() const noexcept { return m_.rows(); }
  const Matrix& matrix() const noexcept { return m_; }
  double operator()(Eigen::Index i, Eigen::Index j) const { return m_(i, j); }
  double trace() const { return m_.trace(); }

 private:
  Matrix m_;
};

/// (a + a^T)/2 + ridge * I with ridge = ridge_scale * trace((a + a^T)/2) / d.
SymMatrix symmetrize_regularize(const Matrix& a, double ridge_scale);

/// (a + a^T)/2 + ridge * I for an absolute ridge value.
SymMatrix symmetrize_add_ridge(const Matrix& a, double ridge);

/// Cholesky factor a = L L^T of an SPD matrix. Reused across solves.
class SpdFactor {
 public:
  /// Throws SingularError naming the first pivot that is not positive.
  explicit SpdFactor(const SymMatrix& a);

  Eigen::Index dim() const noexcept { return lower_.rows(); }
  const Matrix& lower() const noexcept { return lower_; }

  Matrix solve(const Matrix& b) const;
  Vector solve(const Vector& b) const;
  /// x^T a^{-1} x.
  double inv_quadratic(const Vector& x) const;
  /// Explicit a^{-1}, symmetrized.
  SymMatrix inverse() const;

 private:
  Matrix lower_;
};

/// Solve a x = b for SPD a. Throws SingularError / DimensionError.
Matrix spd_solve(const SymMatrix& a, const Matrix& b);

/// Pieces of the inverse of the m-sample class covariance
///   Sigma_r = I_m (x) S_eps + 1 1^T (x) S_mu,
/// which is I_m (x) f + 1 1^T (x) g.
struct BlockInverseParts {
  SymMatrix f;  // S_eps^{-1}
  SymMatrix g;  // -(m S_mu + S_eps)^{-1} S_mu S_eps^{-1}
  int m;
};

BlockInverseParts block_inverse_parts(const SymMatrix& s_mu,
                                      const SymMatrix& s_eps, int m);

/// Materializes the full (m d) x (m d) matrix I_m (x) f + 1 1^T (x) g.
Matrix assemble_block_inverse(const BlockInverseParts& parts);

/// Materializes Sigma_r (diagonal blocks S_mu + S_eps, off-diagonal S_mu).
Matrix assemble_class_covariance(const SymMatrix& s_mu, const SymMatrix& s_eps,
                                 int m);

/// (x - mu)^T s^{-1} (x - mu).
double mahalanobis_sq(const Vector& x, const Vector& mu, const SymMatrix& s);
double mahalanobis_sq(const Vector& x, const Vector& mu, const SpdFactor& s);

/// Sample covariance of the rows of `rows` (denominator count - 1, or count
/// when there is a single row).
Matrix sample_covariance(const Matrix& rows);

}  // namespace repscan

#endif  // REPSCAN_LINALG_HPP
