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

#ifndef REPSCAN_DATASET_HPP
#define REPSCAN_DATASET_HPP

#include <map>
#include <vector>

#include "repscan/linalg.hpp"

namespace repscan {

/// n representation vectors of dimension d (one per row) with class labels
/// in [0, class_count).
class LabeledMatrix {
 public:
  LabeledMatrix() = default;
  /// Validates shape, label range and finiteness. class_count defaults to
  /// max(label) + 1.
  LabeledMatrix(Matrix rows, std::vector<int> labels, int class_count = -1);

  Eigen::Index n() const noexcept { return rows_.rows(); }
  Eigen::Index d() const noexcept { return rows_.cols(); }
  int class_count() const noexcept { return class_count_; }
  const Matrix& rows() const noexcept { return rows_; }
  const std::vector<int>& labels() const noexcept { return labels_; }
  int label(Eigen::Index i) const { return labels_[static_cast<std::size_t>(i)]; }

  /// Labels with at least one row, ascending.
  std::vector<int> present_labels() const;
  /// Row indices per present label, in row order.
  std::map<int, std::vector<Eigen::Index>> indices_by_label() const;
  /// The rows of one class, in row order.
  Matrix class_rows(int label) const;

  bool operator==(const LabeledMatrix& other) const;

 private:
  Matrix rows_;
  std::vector<int> labels_;
  int class_count_ = 0;
};

Matrix gather_rows(const Matrix& rows, const std::vector<Eigen::Index>& idx);

}  // namespace repscan

#endif  // REPSCAN_DATASET_HPP
