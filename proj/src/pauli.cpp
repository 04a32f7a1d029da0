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

#include "dfslab/pauli.hpp"

#include <cmath>
#include <sstream>

#include "dfslab/errors.hpp"

namespace dfslab {

ComplexMatrix pauli(Pauli p) {
  const Complex i(0.0, 1.0);
  ComplexMatrix m(2, 2);
  switch (p) {
    case Pauli::I:
      m << 1.0, 0.0, 0.0, 1.0;
      break;
    case Pauli::X:
      m << 0.0, 1.0, 1.0, 0.0;
      break;
    case Pauli::Y:
      m << 0.0, -i, i, 0.0;
      break;
    case Pauli::Z:
      m << 1.0, 0.0, 0.0, -1.0;
      break;
  }
  return m;
}

Pauli pauli_from_char(char c) {
  switch (c) {
    case 'I':
      return Pauli::I;
    case 'X':
      return Pauli::X;
    case 'Y':
      return Pauli::Y;
    case 'Z':
      return Pauli::Z;
    default:
      throw PreconditionError(std::string("unknown Pauli label '") + c + "'");
  }
}

ComplexMatrix pauli_string(std::string_view labels) {
  if (labels.empty()) throw PreconditionError("empty Pauli string");
  ComplexMatrix out = ComplexMatrix::Identity(1, 1);
  for (char c : labels) out = tensor(out, pauli(pauli_from_char(c)));
  return out;
}

std::string pauli_label(std::size_t index, std::size_t n_qubits) {
  static constexpr char kNames[] = {'I', 'X', 'Y', 'Z'};
  std::string label(n_qubits, 'I');
  for (std::size_t q = n_qubits; q-- > 0;) {
    label[q] = kNames[index % 4];
    index /= 4;
  }
  if (index != 0) throw PreconditionError("Pauli index out of range");
  return label;
}

ComplexMatrix pauli_string(std::size_t index, std::size_t n_qubits) {
  return pauli_string(pauli_label(index, n_qubits));
}

ComplexVector ket(std::string_view bits) {
  if (bits.empty() || bits.size() > 12) throw PreconditionError("ket: expected 1 to 12 bits");
  std::size_t index = 0;
  for (char b : bits) {
    if (b != '0' && b != '1') throw PreconditionError("ket: bit strings may only contain 0 and 1");
    index = 2 * index + (b == '1' ? 1 : 0);
  }
  ComplexVector v = ComplexVector::Zero(Eigen::Index{1} << bits.size());
  v(static_cast<Eigen::Index>(index)) = 1.0;
  return v;
}

ComplexMatrix embed_qubit_op(const ComplexMatrix& op, std::size_t qubit, std::size_t n_qubits) {
  if (qubit >= n_qubits) throw PreconditionError("qubit index out of range");
  if (op.rows() != 2 || op.cols() != 2) throw DimensionError("expected a single-qubit operator");
  const auto left = static_cast<Eigen::Index>(std::size_t{1} << qubit);
  const auto right = static_cast<Eigen::Index>(std::size_t{1} << (n_qubits - qubit - 1));
  return tensor(tensor(identity(left), op), identity(right));
}

OperatorBasis orthogonal_operator_basis(std::size_t dim) {
  require_dimension(dim);
  OperatorBasis basis;
  const bool power_of_two = (dim & (dim - 1)) == 0;
  if (power_of_two) {
    std::size_t n = 0;
    while ((std::size_t{1} << n) < dim) ++n;
    const std::size_t count = std::size_t{1} << (2 * n);
    basis.elements.reserve(count);
    for (std::size_t a = 0; a < count; ++a) {
      basis.labels.push_back(n == 0 ? std::string("I") : pauli_label(a, n));
      basis.elements.push_back(n == 0 ? identity(1) : pauli_string(a, n));
    }
    return basis;
  }

  // Generalized Gell-Mann matrices, rescaled from Tr(G^2) = 2 to Tr(G^2) = dim.
  const auto d = static_cast<Eigen::Index>(dim);
  const double scale = std::sqrt(static_cast<double>(dim) / 2.0);
  const Complex i(0.0, 1.0);
  basis.elements.push_back(identity(d));
  basis.labels.emplace_back("I");
  for (Eigen::Index j = 0; j < d; ++j) {
    for (Eigen::Index k = j + 1; k < d; ++k) {
      ComplexMatrix sym = ComplexMatrix::Zero(d, d);
      sym(j, k) = 1.0;
      sym(k, j) = 1.0;
      basis.elements.push_back(scale * sym);
      basis.labels.push_back("S" + std::to_string(j) + std::to_string(k));
      ComplexMatrix anti = ComplexMatrix::Zero(d, d);
      anti(j, k) = -i;
      anti(k, j) = i;
      basis.elements.push_back(scale * anti);
      basis.labels.push_back("A" + std::to_string(j) + std::to_string(k));
    }
  }
  for (Eigen::Index l = 1; l < d; ++l) {
    ComplexMatrix diag = ComplexMatrix::Zero(d, d);
    const double norm = std::sqrt(2.0 / static_cast<double>(l * (l + 1)));
    for (Eigen::Index j = 0; j < l; ++j) diag(j, j) = norm;
    diag(l, l) = -norm * static_cast<double>(l);
    basis.elements.push_back(scale * diag);
    basis.labels.push_back("D" + std::to_string(l));
  }
  return basis;
}

std::vector<ComplexMatrix> system_components(const ComplexMatrix& h, const OperatorBasis& basis,
                                             std::size_t bath_dim) {
  if (basis.elements.empty()) throw PreconditionError("empty operator basis");
  const Eigen::Index ds = basis.elements.front().rows();
  const auto db = static_cast<Eigen::Index>(bath_dim);
  if (h.rows() != ds * db || h.cols() != ds * db) {
    throw DimensionError("system_components: operator does not match system (x) bath layout");
  }
  std::vector<ComplexMatrix> out;
  out.reserve(basis.elements.size());
  for (const ComplexMatrix& g : basis.elements) {
    // Tr_S[(G^dagger (x) I) H] = sum_{s,s'} conj(G_{s',s}) H_{s',s} block-wise.
    ComplexMatrix b = ComplexMatrix::Zero(db, db);
    for (Eigen::Index s = 0; s < ds; ++s) {
      for (Eigen::Index sp = 0; sp < ds; ++sp) {
        const Complex coeff = std::conj(g(sp, s));
        if (coeff == Complex(0.0, 0.0)) continue;
        b += coeff * h.block(sp * db, s * db, db, db);
      }
    }
    out.push_back(b / static_cast<double>(ds));
  }
  return out;
}

}  // namespace dfslab
