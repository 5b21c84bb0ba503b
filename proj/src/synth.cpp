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

#include "repscan/synth.hpp"

#include <cmath>
#include <set>
#include <string>

#include "repscan/errors.hpp"
#include "repscan/rng.hpp"

namespace repscan {

namespace {

constexpr std::uint64_t kIdentityStream = 1;
constexpr std::uint64_t kNoiseStream = 2;
constexpr std::uint64_t kInfectionStream = 3;

Vector gaussian(CounterRng& rng, Eigen::Index d) {
  Vector z(d);
  for (Eigen::Index i = 0; i < d; ++i) z(i) = rng.normal();
  return z;
}

}  // namespace

void SynthSpec::validate() const {
  if (d < 1) throw ConfigError("synth: d must be positive");
  if (num_classes < 1) throw ConfigError("synth: num_classes must be positive");
  if (samples_per_class < 1) throw ConfigError("synth: samples_per_class must be positive");
  if (s_mu_true.dim() != d || s_eps_true.dim() != d) {
    throw ConfigError("synth: covariance dimension does not match d");
  }
  std::set<int> seen;
  for (const auto& inf : infections) {
    if (inf.class_label < 0 || inf.class_label >= num_classes) {
      throw ConfigError("synth: infected label " + std::to_string(inf.class_label) +
                        " out of range");
    }
    if (!seen.insert(inf.class_label).second) {
      throw ConfigError("synth: infected label " + std::to_string(inf.class_label) +
                        " listed twice");
    }
    if (!(inf.mix_fraction > 0.0 && inf.mix_fraction < 1.0)) {
      throw ConfigError("synth: mix fraction must be in (0, 1)");
    }
    if (!(inf.separation >= 0.0) || !std::isfinite(inf.separation)) {
      throw ConfigError("synth: separation must be non-negative");
    }
  }
}

SymMatrix ramp_diagonal(int d, double base) {
  Vector diag(d);
  for (int i = 0; i < d; ++i) diag(i) = base * (1.0 + static_cast<double>(i) / d);
  return SymMatrix::diagonal(diag);
}

SynthSpec default_synth_spec(int d, int num_classes, int samples_per_class,
                             std::uint64_t seed) {
  return SynthSpec{d, num_classes, samples_per_class, ramp_diagonal(d, 4.0),
                   ramp_diagonal(d, 1.0), {}, seed};
}

std::string to_string(SampleTag tag) { return tag == SampleTag::kClean ? "clean" : "mix"; }

SynthData generate(const SynthSpec& spec) {
  spec.validate();
  // Covariance factors; SpdFactor rejects non-SPD inputs.
  const SpdFactor mu_factor(spec.s_mu_true);
  const SpdFactor eps_factor(spec.s_eps_true);
  const Eigen::Index d = spec.d;
  const Eigen::Index m = spec.samples_per_class;

  std::vector<const Infection*> infection_of(static_cast<std::size_t>(spec.num_classes),
                                             nullptr);
  for (const auto& inf : spec.infections) {
    infection_of[static_cast<std::size_t>(inf.class_label)] = &inf;
  }

  const CounterRng root(spec.seed);
  SynthData out;
  Matrix rows(spec.num_classes * m, d);
  std::vector<int> labels;
  labels.reserve(static_cast<std::size_t>(rows.rows()));
  out.truth.reserve(static_cast<std::size_t>(rows.rows()));

  for (int t = 0; t < spec.num_classes; ++t) {
    const auto stream = static_cast<std::uint64_t>(t);
    CounterRng id_rng = root.split(kIdentityStream).split(stream);
    const Vector mu = mu_factor.lower() * gaussian(id_rng, d);
    out.identities.push_back(mu);

    std::vector<bool> mixed(static_cast<std::size_t>(m), false);
    std::optional<Vector> alt;
    if (const Infection* inf = infection_of[static_cast<std::size_t>(t)]) {
      CounterRng inf_rng = root.split(kInfectionStream).split(stream);
      Vector u = gaussian(inf_rng, d);
      const double norm = std::sqrt(eps_factor.inv_quadratic(u));
      alt = Vector(mu + inf->separation * u / norm);
      const auto count = static_cast<std::size_t>(
          std::llround(inf->mix_fraction * static_cast<double>(m)));
      for (std::size_t k : sample_without_replacement(inf_rng, static_cast<std::size_t>(m),
                                                      count)) {
        mixed[k] = true;
      }
    }
    out.mix_identities.push_back(alt);

    CounterRng noise_rng = root.split(kNoiseStream).split(stream);
    for (Eigen::Index j = 0; j < m; ++j) {
      const Vector eps = eps_factor.lower() * gaussian(noise_rng, d);
      const bool is_mix = mixed[static_cast<std::size_t>(j)];
      rows.row(t * m + j) = ((is_mix ? *alt : mu) + eps).transpose();
      labels.push_back(t);
      out.truth.push_back(is_mix ? SampleTag::kMix : SampleTag::kClean);
    }
  }
  out.data = LabeledMatrix(std::move(rows), std::move(labels), spec.num_classes);
  return out;
}

}  // namespace repscan
