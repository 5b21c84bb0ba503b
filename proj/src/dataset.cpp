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

#include "repscan/dataset.hpp"

#include <algorithm>
#include <string>

#include "repscan/errors.hpp"

namespace repscan {

LabeledMatrix::LabeledMatrix(Matrix rows, std::vector<int> labels, int class_count)
    : rows_(std::move(rows)), labels_(std::move(labels)) {
  if (static_cast<std::size_t>(rows_.rows()) != labels_.size()) {
    throw DimensionError("LabeledMatrix: " + std::to_string(rows_.rows()) + " rows but " +
                         std::to_string(labels_.size()) + " labels");
  }
  if (!rows_.allFinite()) {
    throw NumericError("LabeledMatrix: non-finite entry");
  }
  int max_label = -1;
  for (int l : labels_) {
    if (l < 0) {
      throw DataError("LabeledMatrix: negative label " + std::to_string(l));
    }
    max_label = std::max(max_label, l);
  }
  class_count_ = class_count < 0 ? max_label + 1 : class_count;
  if (max_label >= class_count_) {
    throw DataError("LabeledMatrix: label " + std::to_string(max_label) +
                    " outside [0, " + std::to_string(class_count_) + ")");
  }
}

std::vector<int> LabeledMatrix::present_labels() const {
  std::vector<int> out(labels_);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::map<int, std::vector<Eigen::Index>> LabeledMatrix::indices_by_label() const {
  std::map<int, std::vector<Eigen::Index>> out;
  for (Eigen::Index i = 0; i < n(); ++i) {
    out[label(i)].push_back(i);
  }
  return out;
}

Matrix LabeledMatrix::class_rows(int label) const {
  std::vector<Eigen::Index> idx;
  for (Eigen::Index i = 0; i < n(); ++i) {
    if (this->label(i) == label) idx.push_back(i);
  }
  return gather_rows(rows_, idx);
}

bool LabeledMatrix::operator==(const LabeledMatrix& other) const {
  return class_count_ == other.class_count_ && labels_ == other.labels_ &&
         rows_.rows() == other.rows_.rows() && rows_.cols() == other.rows_.cols() &&
         rows_ == other.rows_;
}

Matrix gather_rows(const Matrix& rows, const std::vector<Eigen::Index>& idx) {
  Matrix out(static_cast<Eigen::Index>(idx.size()), rows.cols());
  for (std::size_t k = 0; k < idx.size(); ++k) {
    out.row(static_cast<Eigen::Index>(k)) = rows.row(idx[k]);
  }
  return out;
}

}  // namespace repscan
