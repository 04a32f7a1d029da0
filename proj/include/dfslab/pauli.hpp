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
#include <string>
#include <string_view>
#include <vector>

#include "dfslab/numeric.hpp"

namespace dfslab {

enum class Pauli { I = 0, X = 1, Y = 2, Z = 3 };

/// Single-qubit Pauli matrix in the basis |0>, |1> (sigma^z |0> = |0>).
[[nodiscard]] ComplexMatrix pauli(Pauli p);

/// Parses one of 'I', 'X', 'Y', 'Z'.
[[nodiscard]] Pauli pauli_from_char(char c);

/// Tensor product of single-qubit Paulis; the first character acts on qubit 1 (most significant bit).
[[nodiscard]] ComplexMatrix pauli_string(std::string_view labels);

/// Pauli string with base-4 index `index` over n qubits (qubit 1 is the most significant digit).
[[nodiscard]] ComplexMatrix pauli_string(std::size_t index, std::size_t n_qubits);

/// Label such as "XIZ" of the base-4 index `index`.
[[nodiscard]] std::string pauli_label(std::size_t index, std::size_t n_qubits);

/// Computational-basis ket from a bit string such as "0110" (first character = qubit 1).
[[nodiscard]] ComplexVector ket(std::string_view bits);

/// Places a single-qubit operator on qubit `qubit` (0-based, qubit 0 is most significant) of n.
[[nodiscard]] ComplexMatrix embed_qubit_op(const ComplexMatrix& op, std::size_t qubit,
                                           std::size_t n_qubits);

/// Orthogonal operator basis of M_d with Tr(G_a^dagger G_b) = d delta_ab and G_0 = I.
/// Pauli strings when d is a power of two, generalized Gell-Mann matrices otherwise.
struct OperatorBasis {
  std::vector<ComplexMatrix> elements;
  std::vector<std::string> labels;
};
[[nodiscard]] OperatorBasis orthogonal_operator_basis(std::size_t dim);

/// Expansion H = sum_a G_a (x) B_a of an operator on system (x) bath:
/// B_a = Tr_S[(G_a^dagger (x) I) H] / d_S.
[[nodiscard]] std::vector<ComplexMatrix> system_components(const ComplexMatrix& h,
                                                           const OperatorBasis& basis,
                                                           std::size_t bath_dim);

}  // namespace dfslab
