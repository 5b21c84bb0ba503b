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

#ifndef REPSCAN_RNG_HPP
#define REPSCAN_RNG_HPP

#include <cstdint>
#include <vector>

namespace repscan {

/// Counter-based generator: draw i of a stream with key k is
/// mix64(k + (i + 1) * golden), the SplitMix64 output function. Streams are
/// split by hashing a stream id into a new key, so results only depend on
/// (seed, stream path, draw index) and are the same on every platform.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : key_(mix64(seed ^ kSeedSalt)) {}

  /// Independent child stream; does not advance this one.
  CounterRng split(std::uint64_t stream) const;

  std::uint64_t next_u64();
  /// Uniform in [0, 1) with 53 random bits.
  double uniform();
  /// Uniform integer in [0, bound), unbiased. bound must be positive.
  std::uint64_t below(std::uint64_t bound);
  /// Standard normal via Box-Muller (no cached second value).
  double normal();

  std::uint64_t counter() const noexcept { return counter_; }

  static std::uint64_t mix64(std::uint64_t z);

 private:
  static constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
  static constexpr std::uint64_t kSeedSalt = 0x5CA4D1E7C0FFEE11ULL;
  CounterRng(std::uint64_t key, int) : key_(key) {}

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

/// `count` distinct indices from [0, population), in draw order.
std::vector<std::size_t> sample_without_replacement(CounterRng& rng, std::size_t population,
                                                    std::size_t count);

}  // namespace repscan

#endif  // REPSCAN_RNG_HPP
