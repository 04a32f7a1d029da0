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

#include "dfslab/model_config.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "dfslab/codes.hpp"
#include "dfslab/errors.hpp"
#include "dfslab/matrix_io.hpp"
#include "dfslab/pauli.hpp"
#include "yaml_util.hpp"

namespace dfslab {
namespace {

struct TemplateName {
  ModelTemplate value;
  std::string_view name;
};

constexpr TemplateName kTemplateNames[] = {
    {ModelTemplate::PureDephasing, "pure_dephasing"},
    {ModelTemplate::CollectiveDephasing, "collective_dephasing"},
    {ModelTemplate::CollectiveDecoherence, "collective_decoherence"},
    {ModelTemplate::LinearIndependentBaths, "linear_independent_baths"},
    {ModelTemplate::General, "general"},
    {ModelTemplate::Custom, "custom"},
};

std::vector<std::pair<std::string, ComplexMatrix>> template_system_ops(const ModelSpec& spec) {
  const std::size_t n = spec.n_qubits;
  const double f = spec.half_spin ? 0.5 : 1.0;
  std::vector<std::pair<std::string, ComplexMatrix>> ops;
  switch (spec.model_template) {
    case ModelTemplate::PureDephasing:
      for (std::size_t q = 0; q < n; ++q) {
        ops.emplace_back("Z" + std::to_string(q + 1), f * embed_qubit_op(pauli(Pauli::Z), q, n));
      }
      break;
    case ModelTemplate::CollectiveDephasing:
      ops.emplace_back("Sz", collective_spin_ops(n, spec.half_spin).z);
      break;
    case ModelTemplate::CollectiveDecoherence: {
      const CollectiveSpinOps s = collective_spin_ops(n, spec.half_spin);
      ops.emplace_back("Sx", s.x);
      ops.emplace_back("Sy", s.y);
      ops.emplace_back("Sz", s.z);
      break;
    }
    case ModelTemplate::LinearIndependentBaths:
      for (std::size_t q = 0; q < n; ++q) {
        for (Pauli p : {Pauli::X, Pauli::Y, Pauli::Z}) {
          const char name = "IXYZ"[static_cast<int>(p)];
          ops.emplace_back(std::string(1, name) + std::to_string(q + 1),
                           f * embed_qubit_op(pauli(p), q, n));
        }
      }
      break;
    case ModelTemplate::General: {
      const std::size_t count = std::size_t{1} << (2 * n);
      const double scale = std::pow(f, static_cast<double>(n));
      for (std::size_t a = 1; a < count; ++a) {
        ops.emplace_back(pauli_label(a, n), scale * pauli_string(a, n));
      }
      break;
    }
    case ModelTemplate::Custom:
      break;
  }
  return ops;
}

ComplexMatrix load_single_matrix(const std::string& source, const YAML::Node& node,
                                 const std::string& field, const std::string& base_dir) {
  const auto rel = detail::scalar_as<std::string>(source, node, field, "a matrix file path");
  const std::filesystem::path path = std::filesystem::path(base_dir) / rel;
  std::ifstream in(path);
  if (!in) detail::fail(source, node, field, "cannot open matrix file '" + path.string() + "'");
  try {
    return read_matrix(in, path.string());
  } catch (const ConfigError& e) {
    detail::fail(source, node, field, e.what());
  }
}

}  // namespace

std::string_view template_name(ModelTemplate t) {
  for (const TemplateName& tn : kTemplateNames) {
    if (tn.value == t) return tn.name;
  }
  return "unknown";
}

ModelTemplate parse_template(std::string_view name) {
  for (const TemplateName& tn : kTemplateNames) {
    if (tn.name == name) return tn.value;
  }
  std::string msg = "unknown model template '" + std::string(name) + "' (expected one of";
  for (const TemplateName& tn : kTemplateNames) msg += " " + std::string(tn.name);
  throw PreconditionError(msg + ")");
}

HamiltonianModel build_model(const ModelSpec& spec) {
  if (spec.n_qubits == 0) throw PreconditionError("model needs at least one qubit");
  if (spec.bath_dim == 0) throw PreconditionError("model bath_dim must be positive");
  if (spec.model_template == ModelTemplate::Custom) {
    return HamiltonianModel(spec.n_qubits, spec.bath_dim, spec.custom_h_system, spec.custom_h_bath,
                            spec.custom_couplings);
  }
  if (!(spec.J >= 0.0) || !(spec.beta >= 0.0)) throw PreconditionError("J and beta must be >= 0");

  const ComplexMatrix h_bath = random_bath_operator({spec.bath_dim, spec.beta, spec.seed}, 0);
  std::vector<Coupling> couplings;
  std::uint64_t stream = 1;
  for (auto& [label, op] : template_system_ops(spec)) {
    ComplexMatrix b = random_bath_operator({spec.bath_dim, 1.0, spec.seed}, stream++);
    couplings.push_back({std::move(op), std::move(b), label});
  }
  HamiltonianModel unscaled(spec.n_qubits, spec.bath_dim, {}, h_bath, couplings);
  const double norm = op_norm(interaction_hamiltonian(unscaled));
  const double factor = norm > 0.0 ? spec.J / norm : 0.0;
  for (Coupling& c : couplings) c.bath *= factor;
  return HamiltonianModel(spec.n_qubits, spec.bath_dim, {}, h_bath, std::move(couplings));
}

namespace detail {

ModelSpec parse_model_node(const YAML::Node& node, const std::string& source,
                           const std::string& base_dir) {
  check_keys(source, node,
             {"template", "n_qubits", "bath_dim", "J", "beta", "seed", "half_spin", "h_system",
              "h_bath", "couplings"},
             "model");
  ModelSpec spec;
  const std::string tmpl = get_string(source, node, "template", "", true);
  try {
    spec.model_template = parse_template(tmpl);
  } catch (const PreconditionError& e) {
    fail(source, node["template"], "template", e.what());
  }
  const long long n = get_int(source, node, "n_qubits", 0, true);
  if (n < 1 || n > 6) fail(source, node["n_qubits"], "n_qubits", "must be in [1, 6]");
  spec.n_qubits = static_cast<std::size_t>(n);
  const long long db = get_int(source, node, "bath_dim", 1);
  if (db < 1 || db > 64) fail(source, node["bath_dim"] ? node["bath_dim"] : node, "bath_dim", "must be in [1, 64]");
  spec.bath_dim = static_cast<std::size_t>(db);
  spec.J = get_real(source, node, "J", 1.0);
  if (!(spec.J >= 0.0)) fail(source, node["J"], "J", "must be nonnegative");
  spec.beta = get_real(source, node, "beta", 1.0);
  if (!(spec.beta >= 0.0)) fail(source, node["beta"], "beta", "must be nonnegative");
  spec.half_spin = get_bool(source, node, "half_spin", false);

  const bool randomized = spec.model_template != ModelTemplate::Custom;
  if (randomized && !node["seed"]) fail(source, node, "seed", "randomized models require a seed");
  const long long seed = get_int(source, node, "seed", 0);
  if (seed < 0) fail(source, node["seed"], "seed", "must be nonnegative");
  spec.seed = static_cast<std::uint64_t>(seed);

  if (spec.model_template == ModelTemplate::Custom) {
    if (node["h_system"]) spec.custom_h_system = load_single_matrix(source, node["h_system"], "h_system", base_dir);
    if (node["h_bath"]) spec.custom_h_bath = load_single_matrix(source, node["h_bath"], "h_bath", base_dir);
    const YAML::Node cs = node["couplings"];
    if (cs) {
      if (!cs.IsSequence()) fail(source, cs, "couplings", "expected a list");
      std::size_t k = 0;
      for (const YAML::Node& c : cs) {
        check_keys(source, c, {"system", "bath", "label"}, "coupling");
        if (!c["system"] || !c["bath"]) fail(source, c, "couplings", "each coupling needs system and bath");
        Coupling cp;
        cp.system = load_single_matrix(source, c["system"], "system", base_dir);
        cp.bath = load_single_matrix(source, c["bath"], "bath", base_dir);
        cp.label = get_string(source, c, "label", "c" + std::to_string(k));
        spec.custom_couplings.push_back(std::move(cp));
        ++k;
      }
    }
    try {
      (void)build_model(spec);
    } catch (const Error& e) {
      fail(source, node, "couplings", e.what());
    }
  } else if (node["h_system"] || node["h_bath"] || node["couplings"]) {
    fail(source, node, "template", "explicit operators are only allowed with template 'custom'");
  }
  return spec;
}

}  // namespace detail

ModelSpec parse_model_spec(const std::string& text, const std::string& source,
                           const std::string& base_dir) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    throw ConfigError(source, e.mark.line, e.mark.column, "", e.msg);
  }
  if (root["model"]) return detail::parse_model_node(root["model"], source, base_dir);
  return detail::parse_model_node(root, source, base_dir);
}

ModelSpec load_model_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path, -1, -1, "", "cannot open file");
  std::stringstream ss;
  ss << in.rdbuf();
  const std::filesystem::path p(path);
  return parse_model_spec(ss.str(), path, p.has_parent_path() ? p.parent_path().string() : ".");
}

std::string canonical_text(const ModelSpec& spec) {
  std::ostringstream os;
  os << "template=" << template_name(spec.model_template) << ";n_qubits=" << spec.n_qubits
     << ";bath_dim=" << spec.bath_dim << ";J=" << format_real(spec.J)
     << ";beta=" << format_real(spec.beta) << ";seed=" << spec.seed
     << ";half_spin=" << (spec.half_spin ? 1 : 0);
  if (spec.model_template == ModelTemplate::Custom) {
    std::ostringstream mats;
    if (spec.custom_h_system.size()) write_matrix(mats, spec.custom_h_system, "h_system");
    if (spec.custom_h_bath.size()) write_matrix(mats, spec.custom_h_bath, "h_bath");
    for (const Coupling& c : spec.custom_couplings) {
      write_matrix(mats, c.system, c.label + ".S");
      write_matrix(mats, c.bath, c.label + ".B");
    }
    os << ";operators=" << mats.str();
  }
  return os.str();
}

}  // namespace dfslab
