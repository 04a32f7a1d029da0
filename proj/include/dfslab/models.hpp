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

/// One interaction term S (x) B of H_SB.
struct Coupling {
  ComplexMatrix system;
  ComplexMatrix bath;
  std::string label;
};

/// H = H_S (x) I_B + I_S (x) H_B + sum_a S_a (x) B_a on n qubits (x) a bath of dimension bath_dim.
class HamiltonianModel {
 public:
  /// Empty `h_system` / `h_bath` stand for the zero operator.
  HamiltonianModel(std::size_t n_qubits, std::size_t bath_dim, ComplexMatrix h_system,
                   ComplexMatrix h_bath, std::vector<Coupling> couplings);

  [[nodiscard]] std::size_t n_qubits() const noexcept { return n_qubits_; }
  [[nodiscard]] std::size_t bath_dim() const noexcept { return bath_dim_; }
  [[nodiscard]] Eigen::Index system_dim() const noexcept { return Eigen::Index{1} << n_qubits_; }
  [[nodiscard]] Eigen::Index joint_dim() const noexcept {
    return system_dim() * static_cast<Eigen::Index>(bath_dim_);
  }
  [[nodiscard]] TensorLayout layout() const { return TensorLayout::qubits(n_qubits_, bath_dim_); }

  [[nodiscard]] const ComplexMatrix& h_system() const noexcept { return h_system_; }
  [[nodiscard]] const ComplexMatrix& h_bath() const noexcept { return h_bath_; }
  [[nodiscard]] const std::vector<Coupling>& couplings() const noexcept { return couplings_; }

  /// Copy with the bath Hamiltonian replaced.
  [[nodiscard]] HamiltonianModel with_bath_hamiltonian(ComplexMatrix h_bath) const;

 private:
  std::size_t n_qubits_;
  std::size_t bath_dim_;
  ComplexMatrix h_system_;
  ComplexMatrix h_bath_;
  std::vector<Coupling> couplings_;
};

/// Full Hamiltonian on system (x) bath.
[[nodiscard]] ComplexMatrix total_hamiltonian(const HamiltonianModel& model);

/// The interaction part H_SB = sum_a S_a (x) B_a alone.
[[nodiscard]] ComplexMatrix interaction_hamiltonian(const HamiltonianModel& model);

/// Kraus operator-sum representation; sum_a K_a^dagger K_a = I is checked on construction.
class KrausChannel {
 public:
  explicit KrausChannel(std::vector<ComplexMatrix> kraus_ops, double tol = 1e-10);

  [[nodiscard]] const std::vector<ComplexMatrix>& kraus_ops() const noexcept { return ops_; }
  [[nodiscard]] Eigen::Index dim() const noexcept { return ops_.front().rows(); }

 private:
  std::vector<ComplexMatrix> ops_;
};

/// Linear map on density matrices, stored densely in the column-stacking convention
/// vec(A rho B) = (B^T (x) A) vec(rho). Limited to d <= 32 (a 1024 x 1024 matrix).
class Superoperator {
 public:
  Superoperator(Eigen::Index dim, ComplexMatrix matrix);

  [[nodiscard]] Eigen::Index dim() const noexcept { return dim_; }
  [[nodiscard]] const ComplexMatrix& matrix() const noexcept { return matrix_; }

  [[nodiscard]] ComplexMatrix apply(const ComplexMatrix& rho) const;
  [[nodiscard]] DensityMatrix apply(const DensityMatrix& rho) const;

  [[nodiscard]] static Superoperator from_kraus(const KrausChannel& channel);

 private:
  Eigen::Index dim_;
  ComplexMatrix matrix_;
};

/// Target of a random Hermitian bath operator: dimension, operator norm, and seed.
struct BathSpec {
  std::size_t bath_dim = 1;
  double norm = 1.0;
  std::uint64_t seed = 0;
};

/// Hermitian bath operator with op_norm == spec.norm; a pure function of (spec.seed, stream_index).
[[nodiscard]] ComplexMatrix random_bath_operator(const BathSpec& spec, std::uint64_t stream_index);

/// Joint unitary exp(-i t H) of the model.
[[nodiscard]] ComplexMatrix propagator(const HamiltonianModel& model, double t);

/// U rho U^dagger for U = exp(-i t H); the joint state is returned without tracing out the bath.
[[nodiscard]] DensityMatrix evolve_joint(const HamiltonianModel& model, double t,
                                         const DensityMatrix& initial);

/// Reduced system state Tr_B[rho].
[[nodiscard]] DensityMatrix reduce_to_system(const HamiltonianModel& model,
                                             const DensityMatrix& joint);

/// Default bath state for reduced-dynamics experiments: I / bath_dim.
[[nodiscard]] DensityMatrix default_bath_state(std::size_t bath_dim);

/// sum_a K_a rho K_a^dagger.
[[nodiscard]] DensityMatrix apply_channel(const KrausChannel& channel, const DensityMatrix& rho);

/// Elementwise factors exp(-alpha (w(s) - w(s'))^2) of the Gaussian-averaged collective dephasing
/// map, w = Hamming weight of the computational-basis label.
[[nodiscard]] Eigen::MatrixXd collective_dephasing_factors(std::size_t n_qubits, double alpha);

/// Dense superoperator of collective dephasing (n_qubits <= 5).
[[nodiscard]] Superoperator collective_dephasing_channel(std::size_t n_qubits, double alpha);

/// Applies collective dephasing directly to a density matrix (any supported n).
[[nodiscard]] DensityMatrix apply_collective_dephasing(const DensityMatrix& rho, double alpha);

}  // namespace dfslab
