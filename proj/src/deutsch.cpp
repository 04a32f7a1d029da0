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

#include "dfslab/errors.hpp"
#include "dfslab/harness.hpp"
#include "dfslab/models.hpp"
#include "dfslab/pauli.hpp"

namespace dfslab {
namespace {

/// Oracle |x, y> -> |x, y xor f(x)> on (query) (x) (ancilla) for function index k.
ComplexMatrix oracle(int k) {
  ComplexMatrix u = ComplexMatrix::Zero(4, 4);
  for (int x = 0; x < 2; ++x) {
    const int fx = k == 0 ? 0 : k == 1 ? 1 : k == 2 ? x : 1 - x;
    for (int y = 0; y < 2; ++y) u(2 * x + (y ^ fx), 2 * x + y) = 1.0;
  }
  return u;
}

ComplexMatrix hadamard() {
  ComplexMatrix h(2, 2);
  h << 1.0, 1.0, 1.0, -1.0;
  return h / std::sqrt(2.0);
}

/// Isometry placing a logical qubit in Span{|00>, |11>}, padded with the complement |01>, |10>.
/// Column order: |0_L>, |1_L>, |01>, |10>, so E^dagger (A (+) I) E lifts a logical A.
ComplexMatrix encoding_basis() {
  ComplexMatrix e(4, 4);
  e.col(0) = ket("00");
  e.col(1) = ket("11");
  e.col(2) = ket("01");
  e.col(3) = ket("10");
  return e;
}

/// Extends a logical single-qubit operator to the two physical qubits, identity on the complement.
ComplexMatrix lift_logical(const ComplexMatrix& a) {
  ComplexMatrix block = identity(4);
  block.topLeftCorner(2, 2) = a;
  const ComplexMatrix e = encoding_basis();
  return e * block * e.adjoint();
}

/// Extends a two-qubit (logical (x) ancilla) operator to three physical qubits.
ComplexMatrix lift_logical_with_ancilla(const ComplexMatrix& a) {
  ComplexMatrix block = identity(8);
  block.topLeftCorner(4, 4) = a;
  const ComplexMatrix e = tensor(encoding_basis(), identity(2));
  return e * block * e.adjoint();
}

}  // namespace

std::vector<DeutschRow> deutsch_demo(double p, bool encoded) {
  if (!(p >= 0.0 && p <= 1.0)) throw PreconditionError("deutsch_demo: p must lie in [0, 1]");
  const ComplexMatrix h = hadamard();

  ComplexVector psi1;
  ComplexMatrix w1;
  ComplexMatrix dephase;
  ComplexMatrix w2;
  ComplexMatrix project_one;  // logical outcome 1 on the first (logical) qubit
  if (!encoded) {
    psi1 = ket("01");
    w1 = tensor(h, h);
    dephase = pauli_string("ZI");
    w2 = tensor(h, identity(2));
    project_one = tensor(ComplexMatrix(ket("1") * ket("1").adjoint()), identity(2));
  } else {
    psi1 = ket("001");
    w1 = tensor(lift_logical(h), h);
    dephase = pauli_string("ZZI");
    w2 = tensor(lift_logical(h), identity(2));
    project_one = tensor(ComplexMatrix(ket("11") * ket("11").adjoint()), identity(2));
  }
  const KrausChannel channel({std::sqrt(1.0 - p) * identity(dephase.rows()), std::sqrt(p) * dephase});
  const ComplexMatrix project_zero = encoded
      ? tensor(ComplexMatrix(ket("00") * ket("00").adjoint()), identity(2))
      : ComplexMatrix(identity(4) - project_one);

  std::vector<DeutschRow> rows;
  for (int k = 0; k < 4; ++k) {
    const ComplexMatrix uf = encoded ? lift_logical_with_ancilla(oracle(k)) : oracle(k);
    const ComplexVector psi2 = w1 * psi1;
    const ComplexMatrix rho2 = psi2 * psi2.adjoint();
    ComplexMatrix rho2p = ComplexMatrix::Zero(rho2.rows(), rho2.cols());
    for (const ComplexMatrix& kr : channel.kraus_ops()) rho2p += kr * rho2 * kr.adjoint();
    const ComplexMatrix rho3 = uf * rho2p * uf.adjoint();
    const ComplexMatrix rho4 = w2 * rho3 * w2.adjoint();

    DeutschRow row;
    row.function = k;
    row.constant = k < 2;
    row.expected_outcome = row.constant ? 0 : 1;
    row.prob_outcome_0 = (project_zero * rho4).trace().real();
    row.prob_outcome_1 = (project_one * rho4).trace().real();
    // Probability mass on the outcome that contradicts the ideal verdict.
    row.misidentification = row.constant ? row.prob_outcome_1 : row.prob_outcome_0;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace dfslab
