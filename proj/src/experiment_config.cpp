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

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "dfslab/errors.hpp"
#include "dfslab/harness.hpp"
#include "dfslab/matrix_io.hpp"
#include "yaml_util.hpp"

namespace dfslab {
namespace {

struct KindName {
  ExperimentKind kind;
  const char* name;
};

constexpr KindName kKinds[] = {
    {ExperimentKind::Free, "free"},           {ExperimentKind::Xy4, "xy4"},
    {ExperimentKind::Symmetrize, "symmetrize"}, {ExperimentKind::Cdd, "cdd"},
    {ExperimentKind::Hybrid, "hybrid"},       {ExperimentKind::RealPulse, "real_pulse"},
    {ExperimentKind::Deutsch, "deutsch"},
};

std::vector<double> real_grid(const std::string& source, const YAML::Node& node,
                              const std::string& field) {
  std::vector<double> out;
  if (node.IsSequence()) {
    for (const YAML::Node& v : node) out.push_back(detail::scalar_as<double>(source, v, field, "a real number"));
  } else if (node.IsMap()) {
    if (node["pow2_from"]) {
      detail::check_keys(source, node, {"pow2_from", "pow2_to"}, field);
      const long long from = detail::get_int(source, node, "pow2_from", 0, true);
      const long long to = detail::get_int(source, node, "pow2_to", 0, true);
      if (to < from || to - from > 64 || std::llabs(from) > 60 || std::llabs(to) > 60) {
        detail::fail(source, node, field, "pow2 range must satisfy from <= to with |k| <= 60");
      }
      for (long long k = from; k <= to; ++k) out.push_back(std::ldexp(1.0, static_cast<int>(k)));
    } else {
      detail::check_keys(source, node, {"log10_from", "log10_to", "count"}, field);
      const double from = detail::get_real(source, node, "log10_from", 0.0, true);
      const double to = detail::get_real(source, node, "log10_to", 0.0, true);
      const long long count = detail::get_int(source, node, "count", 0, true);
      if (count < 1 || count > 10000) detail::fail(source, node["count"], "count", "must be in [1, 10000]");
      for (long long k = 0; k < count; ++k) {
        const double t = count == 1 ? 0.0 : static_cast<double>(k) / static_cast<double>(count - 1);
        out.push_back(std::pow(10.0, from + t * (to - from)));
      }
    }
  } else {
    out.push_back(detail::scalar_as<double>(source, node, field, "a real number or a list"));
  }
  if (out.empty()) detail::fail(source, node, field, "grid is empty");
  return out;
}

std::vector<int> int_grid(const std::string& source, const YAML::Node& node,
                          const std::string& field) {
  std::vector<int> out;
  if (node.IsSequence()) {
    for (const YAML::Node& v : node) out.push_back(detail::scalar_as<int>(source, v, field, "an integer"));
  } else {
    out.push_back(detail::scalar_as<int>(source, node, field, "an integer or a list"));
  }
  if (out.empty()) detail::fail(source, node, field, "grid is empty");
  return out;
}

void append_list(std::ostringstream& os, const char* key, const std::vector<double>& v) {
  os << ";" << key << "=";
  for (std::size_t k = 0; k < v.size(); ++k) os << (k ? "," : "") << format_real(v[k]);
}

}  // namespace

std::string experiment_name(ExperimentKind k) {
  for (const KindName& kn : kKinds) {
    if (kn.kind == k) return kn.name;
  }
  return "unknown";
}

ExperimentConfig parse_experiment_config(const std::string& text, const std::string& source,
                                         const std::string& base_dir) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    throw ConfigError(source, e.mark.line, e.mark.column, "", e.msg);
  }
  if (!root.IsMap()) throw ConfigError(source, 0, 0, "", "expected a mapping at the top level");
  detail::check_keys(source, root, {"experiment", "model", "grid", "group", "output", "threads"},
                     "experiment config");

  ExperimentConfig cfg;
  cfg.source = source;
  const std::string name = detail::get_string(source, root, "experiment", "", true);
  bool known = false;
  for (const KindName& kn : kKinds) {
    if (name == kn.name) {
      cfg.experiment = kn.kind;
      known = true;
    }
  }
  if (!known) {
    detail::fail(source, root["experiment"], "experiment",
                 "unknown experiment '" + name +
                     "' (expected free, xy4, symmetrize, cdd, hybrid, real_pulse or deutsch)");
  }

  if (root["model"]) {
    cfg.model = detail::parse_model_node(root["model"], source, base_dir);
  } else if (cfg.experiment != ExperimentKind::Deutsch) {
    detail::fail(source, root, "model", "missing required field");
  }

  const YAML::Node grid = root["grid"];
  if (!grid) detail::fail(source, root, "grid", "missing required field");
  detail::check_keys(source, grid, {"tau", "delta", "m", "p"}, "grid");
  if (grid["tau"]) cfg.tau = real_grid(source, grid["tau"], "tau");
  if (grid["delta"]) cfg.delta = real_grid(source, grid["delta"], "delta");
  if (grid["m"]) cfg.m = int_grid(source, grid["m"], "m");
  if (grid["p"]) cfg.p = real_grid(source, grid["p"], "p");

  for (double t : cfg.tau) {
    if (!(t > 0.0)) detail::fail(source, grid["tau"], "tau", "durations must be positive");
  }
  for (double d : cfg.delta) {
    if (!(d > 0.0)) detail::fail(source, grid["delta"], "delta", "widths must be positive");
  }
  for (int m : cfg.m) {
    if (m < 1 || m > 4) detail::fail(source, grid["m"], "m", "levels must lie in [1, 4]");
  }
  for (double p : cfg.p) {
    if (!(p >= 0.0 && p <= 1.0)) detail::fail(source, grid["p"], "p", "probabilities must lie in [0, 1]");
  }

  auto require = [&](bool present, const char* field) {
    if (!present) detail::fail(source, grid, field, "grid is empty or missing for this experiment");
  };
  switch (cfg.experiment) {
    case ExperimentKind::Free:
    case ExperimentKind::Xy4:
    case ExperimentKind::Symmetrize:
    case ExperimentKind::Hybrid:
      require(!cfg.tau.empty(), "tau");
      break;
    case ExperimentKind::Cdd:
      require(!cfg.tau.empty(), "tau");
      require(!cfg.m.empty(), "m");
      break;
    case ExperimentKind::RealPulse:
      require(!cfg.tau.empty(), "tau");
      require(!cfg.delta.empty(), "delta");
      if (cfg.tau.size() != 1) detail::fail(source, grid["tau"], "tau", "real_pulse uses a single fixed tau");
      break;
    case ExperimentKind::Deutsch:
      require(!cfg.p.empty(), "p");
      break;
  }

  if (cfg.model) {
    const std::size_t n = cfg.model->n_qubits;
    if (cfg.experiment == ExperimentKind::Xy4 && n != 1) {
      detail::fail(source, root["model"], "n_qubits", "xy4 acts on a single qubit");
    }
    if (cfg.experiment == ExperimentKind::Hybrid && n != 2) {
      detail::fail(source, root["model"], "n_qubits", "hybrid needs a two-qubit model");
    }
  }

  cfg.group = detail::get_string(source, root, "group", "auto");
  if (cfg.group != "auto" && cfg.group != "klein" && cfg.group != "collective_pauli") {
    detail::fail(source, root["group"], "group", "expected auto, klein or collective_pauli");
  }
  if (cfg.group == "klein" && cfg.model && cfg.model->n_qubits != 1) {
    detail::fail(source, root["group"], "group", "the Klein group acts on one qubit");
  }
  cfg.output = detail::get_string(source, root, "output", "");
  const long long threads = detail::get_int(source, root, "threads", 1);
  if (threads < 1 || threads > 256) detail::fail(source, root["threads"], "threads", "must be in [1, 256]");
  cfg.threads = static_cast<unsigned>(threads);
  return cfg;
}

ExperimentConfig load_experiment_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path, -1, -1, "", "cannot open file");
  std::stringstream ss;
  ss << in.rdbuf();
  const std::filesystem::path p(path);
  return parse_experiment_config(ss.str(), path,
                                 p.has_parent_path() ? p.parent_path().string() : ".");
}

std::string canonical_text(const ExperimentConfig& cfg) {
  std::ostringstream os;
  os << "experiment=" << experiment_name(cfg.experiment);
  os << ";model={" << (cfg.model ? canonical_text(*cfg.model) : std::string()) << "}";
  append_list(os, "tau", cfg.tau);
  append_list(os, "delta", cfg.delta);
  os << ";m=";
  for (std::size_t k = 0; k < cfg.m.size(); ++k) os << (k ? "," : "") << cfg.m[k];
  append_list(os, "p", cfg.p);
  os << ";group=" << cfg.group;
  return os.str();
}

std::uint64_t fnv1a64(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace dfslab
