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

// Private helpers for reading YAML configuration trees with line/field diagnostics.

#include <string>
#include <vector>

#include <yaml-cpp/yaml.h>

#include "dfslab/errors.hpp"
#include "dfslab/model_config.hpp"

namespace dfslab::detail {

[[noreturn]] inline void fail(const std::string& source, const YAML::Node& node,
                              const std::string& field, const std::string& message) {
  const YAML::Mark mark = node.Mark();
  throw ConfigError(source, mark.line, mark.column, field, message);
}

template <typename T>
T scalar_as(const std::string& source, const YAML::Node& node, const std::string& field,
            const char* expected) {
  if (!node.IsScalar()) fail(source, node, field, std::string("expected ") + expected);
  try {
    return node.as<T>();
  } catch (const YAML::Exception&) {
    fail(source, node, field, std::string("expected ") + expected + ", got '" + node.Scalar() + "'");
  }
}

inline double get_real(const std::string& source, const YAML::Node& parent, const std::string& key,
                       double fallback, bool required = false) {
  const YAML::Node n = parent[key];
  if (!n) {
    if (required) fail(source, parent, key, "missing required field");
    return fallback;
  }
  return scalar_as<double>(source, n, key, "a real number");
}

inline long long get_int(const std::string& source, const YAML::Node& parent,
                         const std::string& key, long long fallback, bool required = false) {
  const YAML::Node n = parent[key];
  if (!n) {
    if (required) fail(source, parent, key, "missing required field");
    return fallback;
  }
  return scalar_as<long long>(source, n, key, "an integer");
}

inline std::string get_string(const std::string& source, const YAML::Node& parent,
                              const std::string& key, const std::string& fallback,
                              bool required = false) {
  const YAML::Node n = parent[key];
  if (!n) {
    if (required) fail(source, parent, key, "missing required field");
    return fallback;
  }
  return scalar_as<std::string>(source, n, key, "a string");
}

inline bool get_bool(const std::string& source, const YAML::Node& parent, const std::string& key,
                     bool fallback) {
  const YAML::Node n = parent[key];
  if (!n) return fallback;
  return scalar_as<bool>(source, n, key, "true or false");
}

/// Rejects keys outside `allowed` so typos surface as errors instead of silent defaults.
inline void check_keys(const std::string& source, const YAML::Node& node,
                       const std::vector<std::string>& allowed, const std::string& context) {
  if (!node.IsMap()) fail(source, node, context, "expected a mapping");
  for (const auto& kv : node) {
    const std::string key = kv.first.as<std::string>();
    bool known = false;
    for (const std::string& a : allowed) known = known || a == key;
    if (!known) fail(source, kv.first, key, "unknown field in " + context);
  }
}

/// Parses a model mapping (the body of a model description file or an experiment's `model:`).
ModelSpec parse_model_node(const YAML::Node& node, const std::string& source,
                           const std::string& base_dir);

}  // namespace dfslab::detail
