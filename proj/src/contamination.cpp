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

#include "repscan/contamination.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "repscan/errors.hpp"
#include "repscan/rng.hpp"

namespace repscan {

namespace {

constexpr std::uint64_t kAttackStream = 1;
constexpr std::uint64_t kCoverStream = 2;

std::size_t fraction_count(double fraction, Eigen::Index n) {
  // Guard against 0.02 * 1000 landing just under 20.
  return static_cast<std::size_t>(std::floor(fraction * static_cast<double>(n) + 1e-9));
}

}  // namespace

TriggerSpec::TriggerSpec(Vector kappa, Vector delta)
    : kappa_(std::move(kappa)), delta_(std::move(delta)) {
  if (kappa_.size() != delta_.size() || kappa_.size() == 0) {
    throw DimensionError("TriggerSpec: mask has " + std::to_string(kappa_.size()) +
                         " entries, pattern has " + std::to_string(delta_.size()));
  }
  if (!kappa_.allFinite() || !delta_.allFinite()) {
    throw NumericError("TriggerSpec: non-finite value");
  }
  for (Eigen::Index i = 0; i < kappa_.size(); ++i) {
    if (kappa_(i) < 0.0 || kappa_(i) > 1.0) {
      throw DataError("TriggerSpec: mask entry " + std::to_string(i) + " outside [0, 1]");
    }
  }
  magnitude_ = kappa_.cwiseProduct(delta_).norm();
}

Vector stamp(const Vector& x, const TriggerSpec& trigger) {
  if (x.size() != trigger.d()) {
    throw DimensionError("stamp: input has " + std::to_string(x.size()) +
                         " entries, trigger has " + std::to_string(trigger.d()));
  }
  const auto& k = trigger.kappa().array();
  return ((1.0 - k) * x.array() + k * trigger.delta().array()).matrix();
}

void PoisonPlan::validate() const {
  if (source_label == target_label) {
    throw ConfigError("poison plan: source and target labels must differ");
  }
  if (std::find(cover_labels.begin(), cover_labels.end(), target_label) != cover_labels.end()) {
    throw ConfigError("poison plan: target label may not be a cover label");
  }
  if (!(attack_fraction > 0.0 && attack_fraction < 1.0)) {
    throw ConfigError("poison plan: attack fraction must be in (0, 1)");
  }
  if (!(cover_fraction > 0.0 && cover_fraction < 1.0)) {
    throw ConfigError("poison plan: cover fraction must be in (0, 1)");
  }
  if (attack_fraction + cover_fraction >= 0.5) {
    throw ConfigError("poison plan: attack + cover fractions must stay below 0.5");
  }
  if (cover_labels.empty()) {
    throw ConfigError("poison plan: cover fraction is positive but no cover labels given");
  }
}

std::string to_string(Provenance p) { return p == Provenance::kAttack ? "attack" : "cover"; }

PoisonedData poison_dataset(const LabeledMatrix& data, const TriggerSpec& trigger,
                            const PoisonPlan& plan) {
  plan.validate();
  if (data.d() != trigger.d()) {
    throw DimensionError("poison_dataset: data has dimension " + std::to_string(data.d()) +
                         ", trigger has " + std::to_string(trigger.d()));
  }
  const auto by_label = data.indices_by_label();
  auto rows_of = [&](int label) -> const std::vector<Eigen::Index>& {
    auto it = by_label.find(label);
    if (it == by_label.end()) {
      throw ConfigError("poison plan: label " + std::to_string(label) + " has no rows");
    }
    return it->second;
  };
  if (!by_label.count(plan.target_label) && plan.target_label >= data.class_count()) {
    throw ConfigError("poison plan: target label " + std::to_string(plan.target_label) +
                      " does not exist");
  }

  const std::size_t attack_count = fraction_count(plan.attack_fraction, data.n());
  const std::size_t cover_count = fraction_count(plan.cover_fraction, data.n());
  if (attack_count == 0 || cover_count == 0) {
    throw ConfigError("poison plan: fractions yield zero attack or cover rows for n = " +
                      std::to_string(data.n()));
  }

  std::vector<int> covers(plan.cover_labels);
  std::sort(covers.begin(), covers.end());
  covers.erase(std::unique(covers.begin(), covers.end()), covers.end());

  struct Draw {
    Eigen::Index row;
    int label;
    Provenance tag;
  };
  std::vector<Draw> draws;

  const CounterRng root(plan.seed);
  {
    const auto& source = rows_of(plan.source_label);
    CounterRng rng = root.split(kAttackStream);
    for (std::size_t k : sample_without_replacement(rng, source.size(), attack_count)) {
      draws.push_back({source[k], plan.target_label, Provenance::kAttack});
    }
  }
  const std::size_t per_label = cover_count / covers.size();
  const std::size_t remainder = cover_count % covers.size();
  for (std::size_t c = 0; c < covers.size(); ++c) {
    const std::size_t want = per_label + (c < remainder ? 1 : 0);
    if (want == 0) continue;
    const auto& pool = rows_of(covers[c]);
    CounterRng rng =
        root.split(kCoverStream).split(static_cast<std::uint64_t>(covers[c]));
    for (std::size_t k : sample_without_replacement(rng, pool.size(), want)) {
      draws.push_back({pool[k], covers[c], Provenance::kCover});
    }
  }

  const Eigen::Index n = data.n();
  Matrix rows(n + static_cast<Eigen::Index>(draws.size()), data.d());
  rows.topRows(n) = data.rows();
  std::vector<int> labels(data.labels());
  PoisonedData out;
  out.appended.reserve(draws.size());
  for (std::size_t k = 0; k < draws.size(); ++k) {
    const Vector src = data.rows().row(draws[k].row).transpose();
    rows.row(n + static_cast<Eigen::Index>(k)) = stamp(src, trigger).transpose();
    labels.push_back(draws[k].label);
    out.appended.push_back(draws[k].tag);
  }
  const int class_count = std::max(data.class_count(), plan.target_label + 1);
  out.data = LabeledMatrix(std::move(rows), std::move(labels), class_count);
  return out;
}

}  // namespace repscan
