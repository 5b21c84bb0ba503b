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

#ifndef REPSCAN_ERRORS_HPP
#define REPSCAN_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace repscan {

// Two families: configuration problems (bad options, too few classes) and
// data problems (shape, numeric, parse). The CLI maps them to exit codes 2
// and 3 respectively.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class TooFewClassesError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

class DataError : public Error {
 public:
  using Error::Error;
};

class DimensionError : public DataError {
 public:
  using DataError::DataError;
};

class NumericError : public DataError {
 public:
  using DataError::DataError;
};

class DegenerateDataError : public NumericError {
 public:
  using NumericError::NumericError;
};

class TooFewSamplesError : public DataError {
 public:
  using DataError::DataError;
};

/// Cholesky breakdown. `pivot()` is the zero-based index of the first
/// non-positive pivot.
class SingularError : public NumericError {
 public:
  SingularError(const std::string& what, std::size_t pivot)
      : NumericError(what), pivot_(pivot) {}
  std::size_t pivot() const noexcept { return pivot_; }

 private:
  std::size_t pivot_;
};

/// Malformed input file. `line()` is one-based; 0 means "not line specific".
class ParseError : public DataError {
 public:
  ParseError(const std::string& what, std::size_t line)
      : DataError(line ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace repscan

#endif  // REPSCAN_ERRORS_HPP
