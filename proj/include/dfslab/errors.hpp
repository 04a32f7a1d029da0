// Copyright 2026 The dfslab Authors
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

namespace dfslab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operand shapes are inconsistent, or a dimension exceeds the supported cap.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A documented precondition does not hold (non-Hermitian input, bad index, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A matrix logarithm would have to choose between branches.
class BranchAmbiguityError : public Error {
 public:
  using Error::Error;
};

/// A constructed object failed its own post-condition checks.
class ValidationFailed : public Error {
 public:
  using Error::Error;
};

/// A configuration or description file is malformed.
class ConfigError : public Error {
 public:
  ConfigError(const std::string& source, int line, int column, const std::string& field,
              const std::string& message);
  explicit ConfigError(const std::string& message);

  [[nodiscard]] int line() const noexcept { return line_; }
  [[nodiscard]] int column() const noexcept { return column_; }
  [[nodiscard]] const std::string& field() const noexcept { return field_; }

 private:
  int line_ = -1;
  int column_ = -1;
  std::string field_;
};

}  // namespace dfslab
