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

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "dfslab/models.hpp"

namespace dfslab {

/// Coupling templates of the model description file.
enum class ModelTemplate {
  PureDephasing,           ///< sum_i Z_i (x) B_i
  CollectiveDephasing,     ///< S_z (x) B
  CollectiveDecoherence,   ///< sum_a S_a (x) B_a, a in {x, y, z}
  LinearIndependentBaths,  ///< sum_{i,a} sigma_i^a (x) B_{i,a}
  General,                 ///< every non-identity Pauli string with its own bath operator
  Custom,                  ///< operators loaded from matrix files
};

[[nodiscard]] std::string_view template_name(ModelTemplate t);
[[nodiscard]] ModelTemplate parse_template(std::string_view name);

/// Declarative description of a HamiltonianModel.
///
/// For the generated templates every bath operator is drawn by random_bath_operator from
/// (seed, stream): H_B uses stream 0 and is scaled to norm beta; coupling k uses stream k + 1 with
/// unit norm, after which all coupling bath operators are rescaled jointly so that
/// ||H_SB|| = J. Custom models use their matrices verbatim.
struct ModelSpec {
  ModelTemplate model_template = ModelTemplate::LinearIndependentBaths;
  std::size_t n_qubits = 1;
  std::size_t bath_dim = 4;
  double J = 1.0;
  double beta = 1.0;
  std::uint64_t seed = 42;
  bool half_spin = false;

  // Custom template only.
  ComplexMatrix custom_h_system;
  ComplexMatrix custom_h_bath;
  std::vector<Coupling> custom_couplings;
};

[[nodiscard]] HamiltonianModel build_model(const ModelSpec& spec);

/// Reads a model description file (YAML). Relative matrix paths are resolved against the file.
[[nodiscard]] ModelSpec load_model_spec(const std::string& path);

/// Parses a model description from text; `base_dir` resolves relative matrix paths.
[[nodiscard]] ModelSpec parse_model_spec(const std::string& text,
                                         const std::string& source = "<model>",
                                         const std::string& base_dir = ".");

/// Canonical one-line rendering used for provenance hashes.
[[nodiscard]] std::string canonical_text(const ModelSpec& spec);

}  // namespace dfslab
