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

// Test-only helpers: random SPD generators and dense reference computations.

#ifndef REPSCAN_TESTS_SUPPORT_HPP
#define REPSCAN_TESTS_SUPPORT_HPP

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>

#include <Eigen/Dense>

#include "repscan/linalg.hpp"

namespace repscan::testing {

inline Matrix random_matrix(std::mt19937_64& gen, Eigen::Index rows, Eigen::Index cols) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix a(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) a(i, j) = normal(gen);
  return a;
}

inline SymMatrix random_spd(std::mt19937_64& gen, Eigen::Index d, double floor = 0.1) {
  const Matrix a = random_matrix(gen, d, d);
  return SymMatrix(a * a.transpose() + floor * Matrix::Identity(d, d));
}

inline Matrix random_orthogonal(std::mt19937_64& gen, Eigen::Index d) {
  Eigen::HouseholderQR<Matrix> qr(random_matrix(gen, d, d));
  return qr.householderQ() * Matrix::Identity(d, d);
}

// E(h | r) = Sigma_h T^T Sigma_r^{-1} r, evaluated densely with an LU inverse.
// Returns the identity block (first d entries of h).
inline Vector dense_posterior_identity(const Matrix& rows, const SymMatrix& s_mu,
                                       const SymMatrix& s_eps) {
  const Eigen::Index m = rows.rows();
  const Eigen::Index d = rows.cols();
  Matrix t = Matrix::Zero(m * d, (m + 1) * d);
  Matrix sigma_h = Matrix::Zero((m + 1) * d, (m + 1) * d);
  sigma_h.block(0, 0, d, d) = s_mu.matrix();
  for (Eigen::Index i = 0; i < m; ++i) {
    t.block(i * d, 0, d, d).setIdentity();
    t.block(i * d, (i + 1) * d, d, d).setIdentity();
    sigma_h.block((i + 1) * d, (i + 1) * d, d, d) = s_eps.matrix();
  }
  const Matrix sigma_r = t * sigma_h * t.transpose();
  Vector r(m * d);
  for (Eigen::Index i = 0; i < m; ++i) r.segment(i * d, d) = rows.row(i).transpose();
  const Vector h = sigma_h * t.transpose() * sigma_r.fullPivLu().inverse() * r;
  return h.head(d);
}

inline double relative_frobenius(const Matrix& estimate, const Matrix& truth) {
  return (estimate - truth).norm() / truth.norm();
}

inline std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("repscan_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace repscan::testing

#endif  // REPSCAN_TESTS_SUPPORT_HPP
