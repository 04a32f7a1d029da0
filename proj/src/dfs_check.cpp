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

#include "dfslab/codes.hpp"
#include "dfslab/errors.hpp"

namespace dfslab {

HamiltonianDfsReport dfs_check_hamiltonian(const HamiltonianModel& model, const CodeSpace& code,
                                           double tol) {
  if (code.n_qubits() != model.n_qubits()) {
    throw DimensionError("dfs_check_hamiltonian: code and model act on different qubit counts");
  }
  const ComplexMatrix& p = code.isometry();
  HamiltonianDfsReport report;
  bool ok = true;
  for (const Coupling& c : model.couplings()) {
    const ComplexVector gamma0 = p.col(0);
    const Complex c_alpha = gamma0.dot(c.system * gamma0);
    const double residual = op_norm(c.system * p - c_alpha * p);
    report.coupling_eigenvalues.push_back(c_alpha);
    report.coupling_residuals.push_back(residual);
    ok = ok && residual < tol;
  }
  const ComplexMatrix q_proj = identity(p.rows()) - p * p.adjoint();
  report.system_leakage = op_norm(q_proj * model.h_system() * p);
  report.ok = ok && report.system_leakage < tol;
  return report;
}

KrausDfsReport dfs_check_kraus(const KrausChannel& channel, const CodeSpace& code, double tol) {
  const ComplexMatrix& p = code.isometry();
  if (channel.dim() != p.rows()) throw DimensionError("dfs_check_kraus: dimension mismatch");
  const ComplexMatrix q = orthogonal_complement(p);
  const auto d = static_cast<double>(p.cols());

  KrausDfsReport report;
  std::vector<ComplexMatrix> blocks;
  bool ok = true;
  for (const ComplexMatrix& k : channel.kraus_ops()) {
    double leak = 0.0;
    if (q.cols() > 0) leak = std::max(op_norm(q.adjoint() * k * p), op_norm(p.adjoint() * k * q));
    report.leakage_residuals.push_back(leak);
    ok = ok && leak < tol;
    blocks.push_back(p.adjoint() * k * p);
  }

  // The common unitary is the polar factor of the block with the largest weight.
  std::size_t largest = 0;
  for (std::size_t a = 1; a < blocks.size(); ++a) {
    if (blocks[a].norm() > blocks[largest].norm()) largest = a;
  }
  if (blocks[largest].norm() < tol) {
    report.common_unitary = identity(p.cols());
    report.g.assign(blocks.size(), Complex(0.0, 0.0));
    report.block_residuals.assign(blocks.size(), 0.0);
    report.ok = false;
    return report;
  }
  report.common_unitary = polar_unitary(blocks[largest]);
  const ComplexMatrix& u = report.common_unitary;
  for (const ComplexMatrix& b : blocks) {
    const Complex g = (u.adjoint() * b).trace() / d;
    const double residual = op_norm(b - g * u);
    report.g.push_back(g);
    report.block_residuals.push_back(residual);
    report.g_norm_sq += std::norm(g);
    ok = ok && residual < tol;
  }
  report.ok = ok && std::abs(report.g_norm_sq - 1.0) < tol;
  return report;
}

}  // namespace dfslab
