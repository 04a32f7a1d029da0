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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "dfslab/dd.hpp"
#include "dfslab/errors.hpp"
#include "dfslab/pauli.hpp"

namespace dfslab {
namespace {

constexpr double kMinimumGap = 1e-5;

/// Phase c such that e^{-ic} u has its largest eigenphase gap centred on the branch cut at +-pi.
double branch_centre(const ComplexMatrix& u) {
  std::vector<double> phases = unitary_eigenphases(u);
  std::sort(phases.begin(), phases.end());
  const std::size_t n = phases.size();
  double best_gap = phases.front() + 2.0 * std::numbers::pi - phases.back();
  double best_mid = phases.back() + best_gap / 2.0;
  for (std::size_t k = 1; k < n; ++k) {
    const double gap = phases[k] - phases[k - 1];
    if (gap > best_gap) {
      best_gap = gap;
      best_mid = phases[k - 1] + gap / 2.0;
    }
  }
  if (best_gap < kMinimumGap) {
    std::ostringstream os;
    os << "decoupling_error: eigenphases cover the unit circle (largest gap " << best_gap
       << "); shorten the evolution";
    throw BranchAmbiguityError(os.str());
  }
  const double c = std::remainder(best_mid - std::numbers::pi, 2.0 * std::numbers::pi);
  return c;
}

double sum_nonidentity_norms(const std::vector<ComplexMatrix>& components) {
  double total = 0.0;
  for (std::size_t a = 1; a < components.size(); ++a) total += op_norm(components[a]);
  return total;
}

}  // namespace

DecouplingErrorReport decoupling_error(const ComplexMatrix& u, double total_time,
                                       std::size_t n_qubits, std::size_t bath_dim,
                                       const CodeSpace* code) {
  if (n_qubits == 0 || bath_dim == 0) throw DimensionError("decoupling_error: empty layout");
  const Eigen::Index ds = Eigen::Index{1} << n_qubits;
  const auto db = static_cast<Eigen::Index>(bath_dim);
  if (u.rows() != ds * db || u.cols() != ds * db) {
    throw DimensionError("decoupling_error: unitary does not match the system (x) bath layout");
  }
  if (!(total_time > 0.0)) throw PreconditionError("decoupling_error: total time must be positive");
  if (!is_unitary(u, 1e-9)) throw PreconditionError("decoupling_error: input is not unitary");

  DecouplingErrorReport r;
  r.total_unitary = u;
  r.total_time = total_time;
  r.removed_phase = branch_centre(u);
  const ComplexMatrix centred = std::exp(Complex(0.0, -r.removed_phase)) * u;
  r.effective_h = logm_unitary(centred) / total_time;

  const ComplexMatrix id_b = identity(db);
  if (code == nullptr) {
    const OperatorBasis basis = orthogonal_operator_basis(static_cast<std::size_t>(ds));
    r.system_error = sum_nonidentity_norms(system_components(r.effective_h, basis, bath_dim));
  } else {
    if (code->n_qubits() != n_qubits) {
      throw DimensionError("decoupling_error: code and unitary act on different qubit counts");
    }
    const ComplexMatrix p = tensor(code->isometry(), id_b);
    const ComplexMatrix h_code = p.adjoint() * r.effective_h * p;
    const OperatorBasis basis = orthogonal_operator_basis(static_cast<std::size_t>(code->dim()));
    r.system_error = sum_nonidentity_norms(system_components(h_code, basis, bath_dim));
    const ComplexMatrix q = orthogonal_complement(code->isometry());
    if (q.cols() > 0) r.leakage = op_norm(tensor(q, id_b).adjoint() * r.effective_h * p);
  }
  r.error_phase = total_time * r.system_error;

  ComplexMatrix reduced = ComplexMatrix::Zero(db, db);
  for (Eigen::Index s = 0; s < ds; ++s) reduced += u.block(s * db, s * db, db, db);
  reduced /= static_cast<double>(ds);
  const ComplexMatrix v = polar_unitary(reduced);
  r.bath_distance = op_norm(u - tensor(identity(ds), v));
  return r;
}

}  // namespace dfslab
