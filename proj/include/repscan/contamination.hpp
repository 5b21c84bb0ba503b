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

#ifndef REPSCAN_CONTAMINATION_HPP
#define REPSCAN_CONTAMINATION_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "repscan/dataset.hpp"
#include "repscan/linalg.hpp"

namespace repscan {

/// Trigger (mask kappa in [0,1]^d, pattern delta). A stamped input is
/// (1 - kappa) * x + kappa * delta elementwise.
class TriggerSpec {
 public:
  /// Throws DimensionError on length mismatch, DataError for a mask entry
  /// outside [0, 1] or non-finite values.
  TriggerSpec(Vector kappa, Vector delta);

  Eigen::Index d() const noexcept { return kappa_.size(); }
  const Vector& kappa() const noexcept { return kappa_; }
  const Vector& delta() const noexcept { return delta_; }
  /// |kappa * delta|_2.
  double magnitude() const noexcept { return magnitude_; }

 private:
  Vector kappa_;
  Vector delta_;
  double magnitude_;
};

Vector stamp(const Vector& x, const TriggerSpec& trigger);

/// Source-specific attack: stamped rows of `source_label` relabelled to
/// `target_label`, plus stamped cover rows that keep their own labels.
struct PoisonPlan {
  int source_label = 0;
  int target_label = 1;
  std::vector<int> cover_labels;
  double attack_fraction = 0.02;
  double cover_fraction = 0.01;
  std::uint64_t seed = 0;

  /// Throws ConfigError when the plan breaks an invariant.
  void validate() const;
};

enum class Provenance { kAttack, kCover };
std::string to_string(Provenance p);

struct PoisonedData {
  LabeledMatrix data;                 // input rows followed by appended rows
  std::vector<Provenance> appended;   // one tag per appended row
};

/// Appends floor(attack_fraction * n) attack rows then floor(cover_fraction * n)
/// cover rows (split evenly over the sorted cover labels, remainder to the
/// lowest). Rows are drawn without replacement within each class.
PoisonedData poison_dataset(const LabeledMatrix& data, const TriggerSpec& trigger,
                            const PoisonPlan& plan);

}  // namespace repscan

#endif  // REPSCAN_CONTAMINATION_HPP
