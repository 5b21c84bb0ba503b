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

#include "repscan/io.hpp"

#include <bit>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "repscan/errors.hpp"

namespace repscan {

namespace {

constexpr char kStatsMagic[4] = {'S', 'C', 'G', 'S'};
constexpr std::uint32_t kStatsVersion = 1;

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

double parse_value(std::string_view tok, std::size_t lineno) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw ParseError("malformed number '" + std::string(tok) + "'", lineno);
  }
  if (!std::isfinite(v)) {
    throw ParseError("non-finite value '" + std::string(tok) + "'", lineno);
  }
  return v;
}

template <typename Int>
Int parse_int(std::string_view tok, std::size_t lineno, const char* what) {
  Int v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw ParseError(std::string("malformed ") + what + " '" + std::string(tok) + "'", lineno);
  }
  return v;
}

// Next non-blank line; false at end of input.
bool next_line(std::istream& in, std::string& line, std::size_t& lineno) {
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") != std::string::npos) return true;
  }
  return false;
}

std::ifstream open_in(const std::filesystem::path& path, std::ios::openmode mode = {}) {
  std::ifstream in(path, std::ios::in | mode);
  if (!in) throw DataError("cannot open " + path.string());
  return in;
}

std::ofstream open_out(const std::filesystem::path& path, std::ios::openmode mode = {}) {
  std::ofstream out(path, std::ios::out | std::ios::trunc | mode);
  if (!out) throw DataError("cannot write " + path.string());
  return out;
}

Vector parse_vector_line(std::istream& in, std::size_t& lineno, Eigen::Index d,
                         const char* what) {
  std::string line;
  if (!next_line(in, line, lineno)) {
    throw ParseError(std::string("missing ") + what + " line", lineno + 1);
  }
  const auto toks = split_ws(line);
  if (static_cast<Eigen::Index>(toks.size()) != d) {
    throw ParseError(std::string(what) + ": expected " + std::to_string(d) + " values, got " +
                         std::to_string(toks.size()),
                     lineno);
  }
  Vector v(d);
  for (Eigen::Index i = 0; i < d; ++i) v(i) = parse_value(toks[static_cast<std::size_t>(i)], lineno);
  return v;
}

void put_u32(std::string& out, std::uint32_t v) {
  for (int b = 0; b < 4; ++b) out.push_back(static_cast<char>((v >> (8 * b)) & 0xFFu));
}

void put_f64(std::string& out, double v) {
  const auto bits = std::bit_cast<std::uint64_t>(v);
  for (int b = 0; b < 8; ++b) out.push_back(static_cast<char>((bits >> (8 * b)) & 0xFFu));
}

class ByteReader {
 public:
  explicit ByteReader(const std::string& bytes) : bytes_(bytes) {}

  std::uint64_t take(int width) {
    if (pos_ + static_cast<std::size_t>(width) > bytes_.size()) {
      throw ParseError("global stats file is truncated", 0);
    }
    std::uint64_t v = 0;
    for (int b = 0; b < width; ++b) {
      v |= static_cast<std::uint64_t>(static_cast<unsigned char>(bytes_[pos_++])) << (8 * b);
    }
    return v;
  }
  std::uint32_t u32() { return static_cast<std::uint32_t>(take(4)); }
  double f64() { return std::bit_cast<double>(take(8)); }
  bool done() const { return pos_ == bytes_.size(); }

 private:
  const std::string& bytes_;
  std::size_t pos_ = 0;
};

void put_matrix(std::string& out, const Matrix& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) put_f64(out, m(i, j));
  }
}

Matrix take_matrix(ByteReader& r, Eigen::Index d) {
  Matrix m(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) m(i, j) = r.f64();
  }
  return m;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

LabeledMatrix parse_lrm(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  if (!next_line(in, line, lineno)) throw ParseError("empty lrm input", 1);
  const auto header = split_ws(line);
  if (header.size() != 4 || header[0] != "lrm") {
    throw ParseError("expected header 'lrm 1 <n> <d>'", lineno);
  }
  const auto version = parse_int<int>(header[1], lineno, "version");
  if (version != 1) {
    throw ParseError("unsupported lrm version " + std::to_string(version), lineno);
  }
  const auto n = parse_int<long long>(header[2], lineno, "row count");
  const auto d = parse_int<long long>(header[3], lineno, "dimension");
  if (n < 0 || d < 1) throw ParseError("row count must be >= 0 and dimension >= 1", lineno);

  Matrix rows(n, d);
  std::vector<int> labels;
  labels.reserve(static_cast<std::size_t>(n));
  for (long long i = 0; i < n; ++i) {
    if (!next_line(in, line, lineno)) {
      throw ParseError("expected " + std::to_string(n) + " rows, found " + std::to_string(i),
                       lineno + 1);
    }
    const auto toks = split_ws(line);
    if (static_cast<long long>(toks.size()) != d + 1) {
      throw ParseError("expected label plus " + std::to_string(d) + " values, got " +
                           std::to_string(toks.size()) + " fields",
                       lineno);
    }
    const int label = parse_int<int>(toks[0], lineno, "label");
    if (label < 0) throw ParseError("negative label", lineno);
    labels.push_back(label);
    for (long long j = 0; j < d; ++j) {
      rows(i, j) = parse_value(toks[static_cast<std::size_t>(j + 1)], lineno);
    }
  }
  if (next_line(in, line, lineno)) {
    throw ParseError("more rows than the header declares", lineno);
  }
  return LabeledMatrix(std::move(rows), std::move(labels));
}

LabeledMatrix read_lrm(const std::filesystem::path& path) {
  auto in = open_in(path);
  return parse_lrm(in);
}

void write_lrm(std::ostream& out, const LabeledMatrix& data) {
  out << "lrm 1 " << data.n() << ' ' << data.d() << '\n';
  std::string line;
  for (Eigen::Index i = 0; i < data.n(); ++i) {
    line = std::to_string(data.label(i));
    for (Eigen::Index j = 0; j < data.d(); ++j) {
      line += ' ';
      line += format_double(data.rows()(i, j));
    }
    line += '\n';
    out << line;
  }
}

void write_lrm(const std::filesystem::path& path, const LabeledMatrix& data) {
  auto out = open_out(path);
  write_lrm(out, data);
  if (!out) throw DataError("write failed: " + path.string());
}

TriggerSpec parse_trigger(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  if (!next_line(in, line, lineno)) throw ParseError("empty trigger input", 1);
  const auto header = split_ws(line);
  if (header.size() != 3 || header[0] != "trig") {
    throw ParseError("expected header 'trig 1 <d>'", lineno);
  }
  const auto version = parse_int<int>(header[1], lineno, "version");
  if (version != 1) {
    throw ParseError("unsupported trigger version " + std::to_string(version), lineno);
  }
  const auto d = parse_int<long long>(header[2], lineno, "dimension");
  if (d < 1) throw ParseError("dimension must be >= 1", lineno);
  Vector kappa = parse_vector_line(in, lineno, d, "mask");
  Vector delta = parse_vector_line(in, lineno, d, "pattern");
  return TriggerSpec(std::move(kappa), std::move(delta));
}

TriggerSpec read_trigger(const std::filesystem::path& path) {
  auto in = open_in(path);
  return parse_trigger(in);
}

void write_trigger(const std::filesystem::path& path, const TriggerSpec& trigger) {
  auto out = open_out(path);
  out << "trig 1 " << trigger.d() << '\n';
  for (const Vector* v : {&trigger.kappa(), &trigger.delta()}) {
    for (Eigen::Index i = 0; i < v->size(); ++i) {
      out << (i ? " " : "") << format_double((*v)(i));
    }
    out << '\n';
  }
}

std::string encode_stats(const GlobalStats& stats) {
  std::string out(kStatsMagic, 4);
  put_u32(out, kStatsVersion);
  put_u32(out, static_cast<std::uint32_t>(stats.d()));
  for (Eigen::Index i = 0; i < stats.center.size(); ++i) put_f64(out, stats.center(i));
  put_matrix(out, stats.s_mu.matrix());
  put_matrix(out, stats.s_eps.matrix());
  return out;
}

GlobalStats decode_stats(const std::string& bytes) {
  if (bytes.size() < 4 || std::memcmp(bytes.data(), kStatsMagic, 4) != 0) {
    throw ParseError("not a global stats file (bad magic)", 0);
  }
  const std::string body = bytes.substr(4);
  ByteReader r(body);
  const std::uint32_t version = r.u32();
  if (version != kStatsVersion) {
    throw ParseError("unsupported global stats version " + std::to_string(version), 0);
  }
  const auto d = static_cast<Eigen::Index>(r.u32());
  if (d < 1) throw ParseError("global stats dimension must be >= 1", 0);
  Vector center(d);
  for (Eigen::Index i = 0; i < d; ++i) center(i) = r.f64();
  Matrix s_mu = take_matrix(r, d);
  Matrix s_eps = take_matrix(r, d);
  if (!r.done()) throw ParseError("trailing bytes in global stats file", 0);
  if (!center.allFinite() || !s_mu.allFinite() || !s_eps.allFinite()) {
    throw NumericError("global stats file holds non-finite values");
  }
  GlobalStats stats{std::move(center), SymMatrix(s_mu), SymMatrix(s_eps), 0, false, {}};
  return stats;
}

void write_stats(const std::filesystem::path& path, const GlobalStats& stats) {
  auto out = open_out(path, std::ios::binary);
  const std::string bytes = encode_stats(stats);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw DataError("write failed: " + path.string());
}

GlobalStats read_stats(const std::filesystem::path& path) {
  auto in = open_in(path, std::ios::binary);
  std::stringstream buf;
  buf << in.rdbuf();
  return decode_stats(buf.str());
}

std::string stats_fingerprint(const SymMatrix& s_mu, const SymMatrix& s_eps) {
  std::string bytes;
  put_matrix(bytes, s_mu.matrix());
  put_matrix(bytes, s_eps.matrix());
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : bytes) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  char hex[17];
  std::snprintf(hex, sizeof(hex), "%016llx", static_cast<unsigned long long>(h));
  return hex;
}

std::string report_to_json(const ScanReport& report) {
  using nlohmann::ordered_json;
  ordered_json classes = ordered_json::array();
  for (const auto& s : report.scores) {
    ordered_json c;
    c["label"] = s.class_label;
    c["j"] = s.j;
    c["j_bar"] = s.j_bar;
    if (std::isinf(s.j_star)) {
      c["j_star"] = "inf";
    } else {
      c["j_star"] = s.j_star;
    }
    c["flagged"] = s.flagged;
    c["degenerate"] = s.degenerate;
    classes.push_back(std::move(c));
  }
  const RunConfig& cfg = report.config;
  ordered_json config;
  config["ridge_scale"] = cfg.ridge_scale;
  config["em_max_iters"] = cfg.em_max_iters;
  config["em_tol"] = cfg.em_tol;
  config["untangle_max_iters"] = cfg.untangle_max_iters;
  config["dof_mode"] = to_string(cfg.dof_mode);
  config["dof_value"] = cfg.dof_value;
  config["threshold"] = cfg.threshold;
  config["seed"] = cfg.seed;

  ordered_json doc;
  doc["threshold"] = report.threshold;
  doc["dof"] = report.dof;
  doc["classes"] = std::move(classes);
  doc["config"] = std::move(config);
  doc["global_fingerprint"] = report.global_fingerprint;
  return doc.dump(2) + "\n";
}

void write_tags(const std::filesystem::path& path, const std::vector<std::string>& tags) {
  auto out = open_out(path);
  for (const auto& t : tags) out << t << '\n';
}

std::vector<std::string> read_tags(const std::filesystem::path& path) {
  auto in = open_in(path);
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    if (!line.empty()) out.push_back(line);
  }
  return out;
}

}  // namespace repscan
