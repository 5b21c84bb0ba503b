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

#ifndef REPSCAN_SYNTH_HPP
#define REPSCAN_SYNTH_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "repscan/dataset.hpp"
#include "repscan/linalg.hpp"

namespace repscan {

/// One contaminated class: a fraction of its rows uses a second identity
/// displaced from the first by Mahalanobis distance `separation` under S_eps.
struct Infection {
  int class_label = 0;
  double mix_fraction = 0.3;
  double separation = 6.0;
};

struct SynthSpec {
  int d = 16;
  int num_classes = 43;
  int samples_per_class = 100;
  SymMatrix s_mu_true = SymMatrix::identity(16);
  SymMatrix s_eps_true = SymMatrix::identity(16);
  std::vector<Infection> infections;
  std::uint64_t seed = 0;

  void validate() const;
};

/// diag(base * (1 + i / d)), i = 0..d-1.
SymMatrix ramp_diagonal(int d, double base);

/// Spec with S_mu = ramp_diagonal(d, 4) and S_eps = ramp_diagonal(d, 1).
SynthSpec default_synth_spec(int d, int num_classes, int samples_per_class,
                             std::uint64_t seed);

enum class SampleTag { kClean, kMix };
std::string to_string(SampleTag tag);

struct SynthData {
  LabeledMatrix data;
  std::vector<SampleTag> truth;  // per row
  std::vector<Vector> identities;  // mu_t per class
  /// Second identity per class (only for infected classes).
  std::vector<std::optional<Vector>> mix_identities;
};

/// Rows are grouped by class in ascending label order. Each class draws
/// mu_t ~ N(0, S_mu); every row is an identity plus eps ~ N(0, S_eps). In an
/// infected class round(p * m) rows, chosen at random, use
/// mu_t + s * u / sqrt(u^T S_eps^{-1} u) for a random direction u.
SynthData generate(const SynthSpec& spec);

}  // namespace repscan

#endif  // REPSCAN_SYNTH_HPP
