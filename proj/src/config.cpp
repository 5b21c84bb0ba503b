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

#include "repscan/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "repscan/errors.hpp"

namespace repscan {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

double to_double(const std::string& key, const std::string& text) {
  double v = 0.0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end || !std::isfinite(v)) {
    throw ConfigError("config: '" + key + "' expects a number, got '" + text + "'");
  }
  return v;
}

template <typename Int>
Int to_integer(const std::string& key, const std::string& text) {
  Int v = 0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end) {
    throw ConfigError("config: '" + key + "' expects an integer, got '" + text + "'");
  }
  return v;
}

}  // namespace

void RunConfig::validate() const {
  if (!(ridge_scale >= 0.0) || !std::isfinite(ridge_scale)) {
    throw ConfigError("config: ridge_scale must be non-negative");
  }
  if (em_max_iters < 1) throw ConfigError("config: em_max_iters must be positive");
  if (!(em_tol > 0.0)) throw ConfigError("config: em_tol must be positive");
  if (untangle_max_iters < 1) throw ConfigError("config: untangle_max_iters must be positive");
  if (!(threshold > 0.0) || !std::isfinite(threshold)) {
    throw ConfigError("config: threshold must be positive");
  }
  if (dof_mode == DofMode::kCustom && !(dof_value > 0.0)) {
    throw ConfigError("config: dof_mode = custom requires a positive dof_value");
  }
}

double RunConfig::dof_for(long d) const {
  return dof_mode == DofMode::kCustom ? dof_value : static_cast<double>(d);
}

std::string to_string(DofMode mode) { return mode == DofMode::kDim ? "dim" : "custom"; }

DofMode parse_dof_mode(const std::string& text) {
  if (text == "dim") return DofMode::kDim;
  if (text == "custom") return DofMode::kCustom;
  throw ConfigError("config: dof_mode must be 'dim' or 'custom', got '" + text + "'");
}

std::map<std::string, std::string> parse_config_text(const std::string& text) {
  std::map<std::string, std::string> out;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(lineno) + ": expected 'key = value'");
    }
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw ConfigError("config line " + std::to_string(lineno) + ": empty key or value");
    }
    out[std::move(key)] = std::move(value);
  }
  return out;
}

void apply_config(RunConfig& config, const std::map<std::string, std::string>& values) {
  for (const auto& [key, value] : values) {
    if (key == "ridge_scale") {
      config.ridge_scale = to_double(key, value);
    } else if (key == "em_max_iters") {
      config.em_max_iters = to_integer<int>(key, value);
    } else if (key == "em_tol") {
      config.em_tol = to_double(key, value);
    } else if (key == "untangle_max_iters") {
      config.untangle_max_iters = to_integer<int>(key, value);
    } else if (key == "dof_mode") {
      config.dof_mode = parse_dof_mode(value);
    } else if (key == "dof_value") {
      config.dof_value = to_double(key, value);
    } else if (key == "threshold") {
      config.threshold = to_double(key, value);
    } else if (key == "seed") {
      config.seed = to_integer<std::uint64_t>(key, value);
    } else {
      throw ConfigError("config: unknown key '" + key + "'");
    }
  }
}

RunConfig load_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  RunConfig config;
  apply_config(config, parse_config_text(buf.str()));
  return config;
}

}  // namespace repscan
