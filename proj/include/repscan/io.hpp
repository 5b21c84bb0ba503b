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

#ifndef REPSCAN_IO_HPP
#define REPSCAN_IO_HPP

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "repscan/contamination.hpp"
#include "repscan/dataset.hpp"
#include "repscan/decomposition.hpp"
#include "repscan/scoring.hpp"
#include "repscan/synth.hpp"

namespace repscan {

// lrm text format:
//   lrm 1 <n> <d>
//   <label> v1 ... vd        (n lines)
// Values are written in shortest round-trip form.
LabeledMatrix parse_lrm(std::istream& in);
LabeledMatrix read_lrm(const std::filesystem::path& path);
void write_lrm(std::ostream& out, const LabeledMatrix& data);
void write_lrm(const std::filesystem::path& path, const LabeledMatrix& data);

// Trigger text format:
//   trig 1 <d>
//   kappa_1 ... kappa_d
//   delta_1 ... delta_d
TriggerSpec parse_trigger(std::istream& in);
TriggerSpec read_trigger(const std::filesystem::path& path);
void write_trigger(const std::filesystem::path& path, const TriggerSpec& trigger);

// Binary global statistics, little-endian: "SCGS", u32 version (1), u32 d,
// then center, S_mu and S_eps as row-major f64.
std::string encode_stats(const GlobalStats& stats);
GlobalStats decode_stats(const std::string& bytes);
void write_stats(const std::filesystem::path& path, const GlobalStats& stats);
GlobalStats read_stats(const std::filesystem::path& path);

/// FNV-1a 64 over the little-endian bytes of S_mu then S_eps, as 16 hex digits.
std::string stats_fingerprint(const SymMatrix& s_mu, const SymMatrix& s_eps);

std::string report_to_json(const ScanReport& report);

/// One word per line.
void write_tags(const std::filesystem::path& path, const std::vector<std::string>& tags);
std::vector<std::string> read_tags(const std::filesystem::path& path);

std::string format_double(double v);

}  // namespace repscan

#endif  // REPSCAN_IO_HPP
