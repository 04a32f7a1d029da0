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

#include "dfslab/models.hpp"

#include <bit>
#include <cmath>
#include <sstream>

#include "dfslab/errors.hpp"
#include "dfslab/random.hpp"

namespace dfslab {
namespace {

void require_operator(const ComplexMatrix& m, Eigen::Index dim, const std::string& what) {
  if (m.rows() != dim || m.cols() != dim) {
    std::ostringstream os;
    os << what << ": expected a " << dim << "x" << dim << " operator, got " << m.rows() << "x"
       << m.cols();
    throw DimensionError(os.str());
  }
  const double scale = std::max(1.0, m.size() ? m.cwiseAbs().maxCoeff() : 0.0);
  if (!is_hermitian(m, 1e-10 * scale)) throw PreconditionError(what + ": operator is not Hermitian");
}

}  // namespace

// ----- HamiltonianModel -----------------------------------------------------------------------

HamiltonianModel::HamiltonianModel(std::size_t n_qubits, std::size_t bath_dim,
                                   ComplexMatrix h_system, ComplexMatrix h_bath,
                                   std::vector<Coupling> couplings)
    : n_qubits_(n_qubits),
      bath_dim_(bath_dim),
      h_system_(std::move(h_system)),
      h_bath_(std::move(h_bath)),
      couplings_(std::move(couplings)) {
  if (n_qubits_ == 0 || n_qubits_ > 12) throw PreconditionError("n_qubits must be in [1, 12]");
  if (bath_dim_ == 0) throw PreconditionError("bath_dim must be positive");
  require_dimension((std::size_t{1} << n_qubits_) * bath_dim_);
  const Eigen::Index ds = system_dim();
  const auto db = static_cast<Eigen::Index>(bath_dim_);
  if (h_system_.size() == 0) h_system_ = ComplexMatrix::Zero(ds, ds);
  if (h_bath_.size() == 0) h_bath_ = ComplexMatrix::Zero(db, db);
  require_operator(h_system_, ds, "H_S");
  require_operator(h_bath_, db, "H_B");
  for (const Coupling& c : couplings_) {
    require_operator(c.system, ds, "coupling system operator " + c.label);
    require_operator(c.bath, db, "coupling bath operator " + c.label);
  }
}

HamiltonianModel HamiltonianModel::with_bath_hamiltonian(ComplexMatrix h_bath) const {
  return HamiltonianModel(n_qubits_, bath_dim_, h_system_, std::move(h_bath), couplings_);
}

ComplexMatrix interaction_hamiltonian(const HamiltonianModel& model) {
  ComplexMatrix h = ComplexMatrix::Zero(model.joint_dim(), model.joint_dim());
  for (const Coupling& c : model.couplings()) h += tensor(c.system, c.bath);
  return h;
}

ComplexMatrix total_hamiltonian(const HamiltonianModel& model) {
  const auto db = static_cast<Eigen::Index>(model.bath_dim());
  ComplexMatrix h = interaction_hamiltonian(model);
  h += tensor(model.h_system(), identity(db));
  h += tensor(identity(model.system_dim()), model.h_bath());
  return (h + h.adjoint()) / 2.0;
}

// ----- KrausChannel / Superoperator -----------------------------------------------------------

KrausChannel::KrausChannel(std::vector<ComplexMatrix> kraus_ops, double tol)
    : ops_(std::move(kraus_ops)) {
  if (ops_.empty()) throw PreconditionError("Kraus channel needs at least one operator");
  const Eigen::Index d = ops_.front().rows();
  require_dimension(static_cast<std::size_t>(d));
  ComplexMatrix sum = ComplexMatrix::Zero(d, d);
  for (const ComplexMatrix& k : ops_) {
    if (k.rows() != d || k.cols() != d) throw DimensionError("Kraus operators differ in shape");
    sum += k.adjoint() * k;
  }
  if (max_abs_diff(sum, identity(d)) > tol) {
    throw PreconditionError("Kraus operators violate sum K^dagger K = I");
  }
}

Superoperator::Superoperator(Eigen::Index dim, ComplexMatrix matrix)
    : dim_(dim), matrix_(std::move(matrix)) {
  if (dim_ <= 0 || dim_ > 32) throw DimensionError("dense superoperators support 1 <= d <= 32");
  if (matrix_.rows() != dim_ * dim_ || matrix_.cols() != dim_ * dim_) {
    throw DimensionError("superoperator matrix must be d^2 x d^2");
  }
}

ComplexMatrix Superoperator::apply(const ComplexMatrix& rho) const {
  if (rho.rows() != dim_ || rho.cols() != dim_) throw DimensionError("superoperator: dimension mismatch");
  const ComplexVector v = Eigen::Map<const ComplexVector>(rho.data(), rho.size());
  const ComplexVector out = matrix_ * v;
  return Eigen::Map<const ComplexMatrix>(out.data(), dim_, dim_);
}

DensityMatrix Superoperator::apply(const DensityMatrix& rho) const {
  return DensityMatrix(apply(rho.matrix()), rho.layout());
}

Superoperator Superoperator::from_kraus(const KrausChannel& channel) {
  const Eigen::Index d = channel.dim();
  ComplexMatrix m = ComplexMatrix::Zero(d * d, d * d);
  for (const ComplexMatrix& k : channel.kraus_ops()) m += tensor(ComplexMatrix(k.conjugate()), k);
  return Superoperator(d, std::move(m));
}

// ----- random bath operators ------------------------------------------------------------------

ComplexMatrix random_bath_operator(const BathSpec& spec, std::uint64_t stream_index) {
  if (spec.bath_dim == 0) throw PreconditionError("bath_dim must be at least 1");
  if (!(spec.norm >= 0.0)) throw PreconditionError("bath operator norm must be nonnegative");
  require_dimension(spec.bath_dim);
  const auto d = static_cast<Eigen::Index>(spec.bath_dim);
  if (spec.norm == 0.0) return ComplexMatrix::Zero(d, d);
  RandomStream rng(spec.seed, stream_index);
  ComplexMatrix h = random_hermitian(d, rng);
  double n = op_norm(h);
  while (n == 0.0) {  // measure-zero event; redraw from the same stream
    h = random_hermitian(d, rng);
    n = op_norm(h);
  }
  h *= spec.norm / n;
  return (h + h.adjoint()) / 2.0;
}

// ----- evolution ------------------------------------------------------------------------------

ComplexMatrix propagator(const HamiltonianModel& model, double t) {
  return expm_skew_hermitian(total_hamiltonian(model), t);
}

DensityMatrix evolve_joint(const HamiltonianModel& model, double t, const DensityMatrix& initial) {
  if (initial.dim() != model.joint_dim()) throw DimensionError("evolve_joint: dimension mismatch");
  const ComplexMatrix u = propagator(model, t);
  ComplexMatrix rho = u * initial.matrix() * u.adjoint();
  rho = ((rho + rho.adjoint()) / 2.0).eval();
  return DensityMatrix(std::move(rho), initial.layout());
}

DensityMatrix reduce_to_system(const HamiltonianModel& model, const DensityMatrix& joint) {
  const TensorLayout layout = model.layout();
  std::vector<std::size_t> keep(model.n_qubits());
  for (std::size_t q = 0; q < keep.size(); ++q) keep[q] = q;
  ComplexMatrix rho = partial_trace(joint.matrix(), layout, keep);
  return DensityMatrix(std::move(rho), TensorLayout::qubits(model.n_qubits()));
}

DensityMatrix default_bath_state(std::size_t bath_dim) {
  return DensityMatrix::maximally_mixed(TensorLayout({bath_dim}));
}

DensityMatrix apply_channel(const KrausChannel& channel, const DensityMatrix& rho) {
  if (rho.dim() != channel.dim()) throw DimensionError("apply_channel: dimension mismatch");
  ComplexMatrix out = ComplexMatrix::Zero(rho.dim(), rho.dim());
  for (const ComplexMatrix& k : channel.kraus_ops()) out += k * rho.matrix() * k.adjoint();
  out = ((out + out.adjoint()) / 2.0).eval();
  return DensityMatrix(std::move(out), rho.layout());
}

// ----- collective dephasing -------------------------------------------------------------------

Eigen::MatrixXd collective_dephasing_factors(std::size_t n_qubits, double alpha) {
  if (!(alpha >= 0.0)) throw PreconditionError("collective dephasing requires alpha >= 0");
  if (n_qubits == 0 || n_qubits > 12) throw PreconditionError("n_qubits must be in [1, 12]");
  const std::size_t d = std::size_t{1} << n_qubits;
  require_dimension(d);
  const auto di = static_cast<Eigen::Index>(d);
  Eigen::MatrixXd f(di, di);
  for (std::size_t s = 0; s < d; ++s) {
    for (std::size_t sp = 0; sp < d; ++sp) {
      const double dw = static_cast<double>(std::popcount(s)) - static_cast<double>(std::popcount(sp));
      f(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(sp)) = std::exp(-alpha * dw * dw);
    }
  }
  return f;
}

Superoperator collective_dephasing_channel(std::size_t n_qubits, double alpha) {
  if (n_qubits > 5) throw DimensionError("dense collective dephasing superoperator needs n <= 5");
  const Eigen::MatrixXd f = collective_dephasing_factors(n_qubits, alpha);
  const Eigen::Index d = f.rows();
  // Column-stacking vec: entry (s, s') sits at index s + d*s'.
  ComplexMatrix m = ComplexMatrix::Zero(d * d, d * d);
  for (Eigen::Index sp = 0; sp < d; ++sp) {
    for (Eigen::Index s = 0; s < d; ++s) m(s + d * sp, s + d * sp) = f(s, sp);
  }
  return Superoperator(d, std::move(m));
}

DensityMatrix apply_collective_dephasing(const DensityMatrix& rho, double alpha) {
  const Eigen::Index d = rho.dim();
  if (d < 2 || (d & (d - 1)) != 0) throw DimensionError("collective dephasing needs a qubit register");
  const auto n = static_cast<std::size_t>(std::countr_zero(static_cast<std::uint64_t>(d)));
  const Eigen::MatrixXd f = collective_dephasing_factors(n, alpha);
  ComplexMatrix out = rho.matrix().cwiseProduct(f.cast<Complex>());
  return DensityMatrix(std::move(out), rho.layout());
}

}  // namespace dfslab
