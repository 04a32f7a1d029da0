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
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "dfslab/models.hpp"
#include "dfslab/numeric.hpp"

namespace dfslab {

/// Exact nonnegative integer used for path counts and subspace dimensions.
using Count = boost::multiprecision::cpp_int;

/// Half-integer angular-momentum labels are stored doubled (two_j = 2J, two_m = 2m).
struct SpinLabel {
  int two_j = 0;
  int lambda = 0;
  int two_m = 0;

  friend bool operator==(const SpinLabel&, const SpinLabel&) = default;
};

/// Renders a doubled half-integer as "3/2", "1", "-1/2", ...
[[nodiscard]] std::string format_half_integer(int twice);

/// Per-column metadata of a code space.
struct CodeLabel {
  std::string text;
  std::optional<int> c_z;
  std::optional<SpinLabel> spin;

  static CodeLabel from_cz(int c_z);
  static CodeLabel from_spin(const SpinLabel& s);
  static CodeLabel named(std::string text);
  /// Inverse of `text` for the c_z / spin forms; anything else becomes a plain name.
  static CodeLabel parse(const std::string& text);
};

/// Isometry from a logical space into the 2^n dimensional physical space.
class CodeSpace {
 public:
  CodeSpace(std::size_t n_qubits, ComplexMatrix isometry, std::vector<CodeLabel> labels,
            double tol = 1e-12);

  [[nodiscard]] std::size_t n_qubits() const noexcept { return n_qubits_; }
  [[nodiscard]] const ComplexMatrix& isometry() const noexcept { return isometry_; }
  [[nodiscard]] const std::vector<CodeLabel>& labels() const noexcept { return labels_; }
  [[nodiscard]] Eigen::Index dim() const noexcept { return isometry_.cols(); }
  [[nodiscard]] ComplexMatrix projector() const { return isometry_ * isometry_.adjoint(); }

 private:
  std::size_t n_qubits_;
  ComplexMatrix isometry_;
  std::vector<CodeLabel> labels_;
};

/// Code-space text format: a header line "code <n_qubits> <dim>", one "label <text>" line per
/// column, then the isometry in the shared matrix text format.
void write_code_space(std::ostream& os, const CodeSpace& code);
[[nodiscard]] CodeSpace read_code_space(std::istream& is, const std::string& source = "<stream>");
[[nodiscard]] CodeSpace read_code_space_file(const std::string& path);

// ----- collective spin ------------------------------------------------------------------------

/// Total-spin operators. With unit Paulis S_a = sum_i sigma_i^a; with half_spin every Pauli
/// carries a factor 1/2. S_plus = sum_i |1><0|_i (times 1/2 for half_spin) and
/// S_minus = S_plus^dagger, so that S_x = S_plus + S_minus and S_y = i (S_plus - S_minus).
struct CollectiveSpinOps {
  ComplexMatrix x;
  ComplexMatrix y;
  ComplexMatrix z;
  ComplexMatrix s2;
  ComplexMatrix plus;
  ComplexMatrix minus;
};
[[nodiscard]] CollectiveSpinOps collective_spin_ops(std::size_t n, bool half_spin);

// ----- collective dephasing codes -------------------------------------------------------------

/// One code space per eigenvalue c_z = #0 - #1 of the unit-Pauli S_z, ordered by decreasing c_z;
/// columns are the computational-basis states of that weight in increasing binary order.
[[nodiscard]] std::vector<CodeSpace> dephasing_dfs_enumerate(std::size_t n);

/// Span{|01>,|10>}^(x n_pairs) with column index given by the logical bits (qubit pair 1 major).
[[nodiscard]] CodeSpace pairwise_code(std::size_t n_pairs);

struct PairLogicalOps {
  ComplexMatrix z;
  ComplexMatrix x;
};
/// Z_i = Z_{2i-1}, X_i = X_{2i-1} X_{2i} on 2 n_pairs qubits.
[[nodiscard]] std::vector<PairLogicalOps> pairwise_logical_ops(std::size_t n_pairs);

// ----- collective decoherence: counting and spin tower ----------------------------------------

/// Number of walks on the Bratteli lattice from (1, 1/2) to (n, J); zero when infeasible.
[[nodiscard]] Count bratteli_paths(std::size_t n, int two_j);

/// Complete total-spin basis |J, lambda, m> of n qubits built by sequential Clebsch-Gordan coupling.
struct SpinMultiplet {
  int two_j = 0;
  int lambda = 0;
  std::vector<int> steps;              ///< +1 / -1 for J_k = J_{k-1} +- 1/2, qubit by qubit
  std::vector<ComplexVector> states;   ///< index k holds m = -J + k
};

class SpinTowerBasis {
 public:
  SpinTowerBasis(std::size_t n_qubits, std::vector<SpinMultiplet> multiplets);

  [[nodiscard]] std::size_t n_qubits() const noexcept { return n_qubits_; }
  [[nodiscard]] const std::vector<SpinMultiplet>& multiplets() const noexcept { return multiplets_; }
  [[nodiscard]] const SpinMultiplet& multiplet(int two_j, int lambda) const;
  [[nodiscard]] const ComplexVector& state(const SpinLabel& label) const;
  [[nodiscard]] std::size_t num_states() const;
  [[nodiscard]] std::size_t multiplicity(int two_j) const;

 private:
  std::size_t n_qubits_;
  std::vector<SpinMultiplet> multiplets_;
};

/// Sequential coupling j (x) 1/2 with Condon-Shortley phases for 1 <= n <= 8. Path labels lambda
/// enumerate step sequences in lexicographic order with the down step first. A single sign per
/// (J, lambda) is then fixed: states printed in the literature for n <= 4 are reproduced exactly,
/// elsewhere the first nonzero amplitude of the m = J state is made positive.
[[nodiscard]] SpinTowerBasis spin_tower(std::size_t n);

/// The 4-qubit collective-decoherence DFS: |0> = |s>|s>, |1> = (|t+>|t-> + |t->|t+> - |t0>|t0>)/sqrt3.
[[nodiscard]] CodeSpace four_qubit_dfs();

/// SWAP of qubits i and j (1-based, i < j) on n qubits.
[[nodiscard]] ComplexMatrix exchange_op(std::size_t n, std::size_t i, std::size_t j);

struct LogicalPaulis {
  ComplexMatrix z;
  ComplexMatrix x;
  ComplexMatrix y;
};
/// Z = -E12, X = (E23 - E13)/sqrt3, Y = (i/2)[X, Z] on 4 qubits.
[[nodiscard]] LogicalPaulis logical_paulis_4qubit();

/// Three-qubit noiseless subsystem: the J = 1/2 states ordered (lambda, m) =
/// (0,-1/2), (0,+1/2), (1,-1/2), (1,+1/2); lambda carries the logical qubit, m the gauge.
struct NoiselessSubsystemCode {
  CodeSpace code;
  std::size_t logical_dim;
  std::size_t gauge_dim;
};
[[nodiscard]] NoiselessSubsystemCode three_qubit_ns_code();

// ----- stabilized codewords of the {I, X^n, Y^n, Z^n} group ------------------------------------

/// Codewords (|r> + |~r>)/sqrt2 over even-weight strings r with r_1 = 0. Column index = logical
/// bits b_1..b_{n-2} (b_1 most significant), with r_{j+1} = b_j xor r_n and r_n = parity(b).
[[nodiscard]] CodeSpace even_weight_stabilized_code(std::size_t n);

/// Logical X on logical qubit j (1-based): X_1 X_{j+1}.
[[nodiscard]] ComplexMatrix even_weight_logical_x(std::size_t n, std::size_t j);
/// Logical Z on logical qubit j (1-based): Z_{j+1} Z_n.
[[nodiscard]] ComplexMatrix even_weight_logical_z(std::size_t n, std::size_t j);

// ----- DFS checks -----------------------------------------------------------------------------

struct HamiltonianDfsReport {
  bool ok = false;
  std::vector<Complex> coupling_eigenvalues;  ///< c_a = <gamma_0| S_a |gamma_0>
  std::vector<double> coupling_residuals;     ///< ||S_a P - c_a P||
  double system_leakage = 0.0;                ///< ||(I - P P^dagger) H_S P||
};
[[nodiscard]] HamiltonianDfsReport dfs_check_hamiltonian(const HamiltonianModel& model,
                                                         const CodeSpace& code, double tol = 1e-9);

struct KrausDfsReport {
  bool ok = false;
  std::vector<Complex> g;                 ///< g_a with P^dagger K_a P = g_a U
  ComplexMatrix common_unitary;           ///< U
  std::vector<double> leakage_residuals;  ///< max(||Q^dagger K_a P||, ||P^dagger K_a Q||)
  std::vector<double> block_residuals;    ///< ||P^dagger K_a P - g_a U||
  double g_norm_sq = 0.0;                 ///< sum_a |g_a|^2
};
[[nodiscard]] KrausDfsReport dfs_check_kraus(const KrausChannel& channel, const CodeSpace& code,
                                             double tol = 1e-9);

}  // namespace dfslab
