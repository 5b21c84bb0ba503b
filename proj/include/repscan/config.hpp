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

#ifndef REPSCAN_CONFIG_HPP
#define REPSCAN_CONFIG_HPP

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>

namespace repscan {

/// e^2, the J* rejection threshold.
inline constexpr double kDefaultThreshold = 7.389056098930650227;

enum class DofMode { kDim, kCustom };

struct RunConfig {
  double ridge_scale = 1e-6;
  int em_max_iters = 50;
  double em_tol = 1e-5;
  int untangle_max_iters = 100;
  DofMode dof_mode = DofMode::kDim;
  double dof_value = 0.0;  // used iff dof_mode == kCustom
  double threshold = kDefaultThreshold;
  std::uint64_t seed = 0;

  /// Throws ConfigError when a field is out of range.
  void validate() const;
  /// Degrees of freedom for representation dimension d.
  double dof_for(long d) const;
};

std::string to_string(DofMode mode);
DofMode parse_dof_mode(const std::string& text);

/// Parses flat "key = value" lines; '#' starts a comment. Unknown keys and
/// malformed values throw ConfigError naming the line.
std::map<std::string, std::string> parse_config_text(const std::string& text);

/// Applies parsed key/value pairs onto `config`.
void apply_config(RunConfig& config, const std::map<std::string, std::string>& values);

RunConfig load_config_file(const std::filesystem::path& path);

}  // namespace repscan

#endif  // REPSCAN_CONFIG_HPP
