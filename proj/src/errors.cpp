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

#include "dfslab/errors.hpp"

#include <sstream>

namespace dfslab {
namespace {

std::string format_config_message(const std::string& source, int line, int column,
                                  const std::string& field, const std::string& message) {
  std::ostringstream os;
  os << source;
  if (line >= 0) {
    os << ':' << line + 1;
    if (column >= 0) os << ':' << column + 1;
  }
  if (!field.empty()) os << ": field '" << field << "'";
  os << ": " << message;
  return os.str();
}

}  // namespace

ConfigError::ConfigError(const std::string& source, int line, int column,
                         const std::string& field, const std::string& message)
    : Error(format_config_message(source, line, column, field, message)),
      line_(line),
      column_(column),
      field_(field) {}

ConfigError::ConfigError(const std::string& message) : Error(message) {}

}  // namespace dfslab
