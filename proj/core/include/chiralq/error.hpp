// Copyright 2026 The chiralq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace chiralq {

/// Broad failure classes. The CLI maps each to a distinct exit code.
enum class ErrorCategory {
  Parse,        // malformed input text
  Range,        // index outside its declared bounds
  Consistency,  // conflicting duplicate data
  Dimension,    // mismatched sizes between objects
  Selection,    // active-space selection cannot satisfy closed-shell counts
  Config,       // invalid run configuration
  Compute,      // numerical failure during a computation
  Io,           // filesystem access
};

const char* to_string(ErrorCategory category) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, const std::string& what)
      : std::runtime_error(what), category_(category) {}

  ErrorCategory category() const noexcept { return category_; }

 private:
  ErrorCategory category_;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error(ErrorCategory::Parse,
              "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class RangeError : public Error {
 public:
  explicit RangeError(const std::string& what)
      : Error(ErrorCategory::Range, what) {}
};

class ConsistencyError : public Error {
 public:
  explicit ConsistencyError(const std::string& what)
      : Error(ErrorCategory::Consistency, what) {}
};

class DimensionError : public Error {
 public:
  explicit DimensionError(const std::string& what)
      : Error(ErrorCategory::Dimension, what) {}
};

class SelectionError : public Error {
 public:
  explicit SelectionError(const std::string& what)
      : Error(ErrorCategory::Selection, what) {}
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what)
      : Error(ErrorCategory::Config, what) {}
};

class ComputeError : public Error {
 public:
  explicit ComputeError(const std::string& what)
      : Error(ErrorCategory::Compute, what) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(ErrorCategory::Io, what) {}
};

}  // namespace chiralq
