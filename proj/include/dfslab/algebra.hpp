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
#include <optional>
#include <string>
#include <vector>

#include "dfslab/numeric.hpp"

namespace dfslab {

/// Linear span of operators with a basis orthonormal under <A, B> = Tr(A^dagger B).
class OperatorSpace {
 public:
  OperatorSpace(Eigen::Index ambient_dim, std::vector<ComplexMatrix> basis);

  [[nodiscard]] Eigen::Index ambient_dim() const noexcept { return ambient_dim_; }
  [[nodiscard]] std::size_t dim() const noexcept { return basis_.size(); }
  [[nodiscard]] const std::vector<ComplexMatrix>& basis() const noexcept { return basis_; }

  /// Orthogonal projection onto the span.
  [[nodiscard]] ComplexMatrix project(const ComplexMatrix& m) const;
  /// ||m - project(m)||_F / max(||m||_F, 1e-300).
  [[nodiscard]] double relative_residual(const ComplexMatrix& m) const;
  [[nodiscard]] bool contains(const ComplexMatrix& m, double tol = 1e-8) const;
  /// Largest entry of |Gram - I|.
  [[nodiscard]] double gram_error() const;

 private:
  Eigen::Index ambient_dim_;
  std::vector<ComplexMatrix> basis_;
};

/// Smallest unital, dagger-closed algebra containing the generators.
[[nodiscard]] OperatorSpace algebra_closure(const std::vector<ComplexMatrix>& generators);

/// All X with [G, X] = 0 for every generator (ambient dimension at most 32).
[[nodiscard]] OperatorSpace commutant(const std::vector<ComplexMatrix>& generators);

/// Elements of the algebra generated by `generators` that commute with every generator.
[[nodiscard]] OperatorSpace center(const std::vector<ComplexMatrix>& generators);

struct AlgebraBlock {
  std::size_t label = 0;
  std::size_t n = 0;  ///< multiplicity n_J (dimension of the noiseless factor)
  std::size_t d = 0;  ///< irrep dimension d_J (the factor the algebra acts on)
};

/// The algebra as a direct sum of I_{n_J} (x) M_{d_J} blocks. Column `offsets[J] + k*d_J + a` of
/// `transform` is basis vector a of copy k of irrep J, so W^dagger G W is block diagonal and
/// equals I_{n_J} (x) M_J(G) inside block J.
struct AlgebraDecomposition {
  std::vector<AlgebraBlock> blocks;
  ComplexMatrix transform;
  std::vector<std::size_t> block_offsets;
  double structure_residual = 0.0;  ///< worst deviation from the block form over the generators
  std::uint64_t seed_used = 0;      ///< the internal draw that passed validation
};

/// Randomized decomposition; internal draws are seeded from `seed` and retried up to 5 times.
/// Blocks are sorted by decreasing n_J, then decreasing d_J, then by their lowest basis index.
/// Throws ValidationFailed when no draw passes the structural checks.
[[nodiscard]] AlgebraDecomposition decompose(const std::vector<ComplexMatrix>& generators,
                                             std::uint64_t seed = 0);

/// Deviation of W^dagger G W from the declared block structure, maximized over generators.
[[nodiscard]] double block_structure_residual(const AlgebraDecomposition& decomposition,
                                              const std::vector<ComplexMatrix>& generators);

/// Finite group of system unitaries, stored as an explicit element list with names.
struct NamedGroup {
  std::vector<std::string> names;
  std::vector<ComplexMatrix> elements;

  [[nodiscard]] std::size_t size() const noexcept { return elements.size(); }
  /// Index of the element equal to m up to a global phase, if any.
  [[nodiscard]] std::optional<std::size_t> find(const ComplexMatrix& m, double tol = 1e-8) const;
};

/// Throws PreconditionError unless every element is unitary and the set is closed under
/// multiplication up to phase.
void require_group(const std::vector<ComplexMatrix>& elements, double tol = 1e-8);

/// {I, X, Y, Z} on one qubit.
[[nodiscard]] NamedGroup klein_group();
/// {I, X^n, Y^n, Z^n} on n qubits.
[[nodiscard]] NamedGroup collective_pauli_group(std::size_t n);
/// {I} on `dim` dimensions.
[[nodiscard]] NamedGroup trivial_group(Eigen::Index dim);

/// (1/|G|) sum_g (g^dagger (x) I_B) H (g (x) I_B), after checking closure.
[[nodiscard]] ComplexMatrix average_over_group(const ComplexMatrix& h,
                                               const std::vector<ComplexMatrix>& group);

/// H - I_S (x) Tr_S(H)/d_S: the part of an operator on S (x) B that acts nontrivially on S.
[[nodiscard]] ComplexMatrix system_part(const ComplexMatrix& h, Eigen::Index system_dim);

}  // namespace dfslab
