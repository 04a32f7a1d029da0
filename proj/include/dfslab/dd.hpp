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
#include <string>
#include <variant>
#include <vector>

#include "dfslab/algebra.hpp"
#include "dfslab/codes.hpp"
#include "dfslab/models.hpp"
#include "dfslab/numeric.hpp"

namespace dfslab {

// ----- pulse sequences ------------------------------------------------------------------------

/// Evolution under the model Hamiltonian for a duration tau.
struct FreeEvent {
  double tau = 0.0;
};

/// Instantaneous system unitary, applied as g (x) I_B.
struct IdealPulse {
  std::string name;
  ComplexMatrix unitary;
};

/// Finite-width pulse: exp(-i delta (control (x) I_B + H)) with a constant control amplitude.
struct RealPulse {
  std::string name;
  ComplexMatrix control;  ///< Hermitian system generator, amplitude included
  double width = 0.0;
};

using PulseEvent = std::variant<FreeEvent, IdealPulse, RealPulse>;

/// Ordered pulse events in operator-product order: the first event is applied last, exactly as
/// a sequence such as "Z f X f Z f X f" is written.
struct PulseSequence {
  std::string name;
  int level = 0;
  std::vector<PulseEvent> events;

  /// Sum of free durations and real pulse widths.
  [[nodiscard]] double total_duration() const;
  [[nodiscard]] std::size_t free_segments() const;
  /// Compact rendering such as "ZfXfZfXf" (pulse names, 'f' for free segments, "[X]" for real
  /// pulses), with spaces between multi-character names.
  [[nodiscard]] std::string pattern() const;
};

/// Joint unitary of a sequence: the product of segment unitaries, rightmost event first in time.
[[nodiscard]] ComplexMatrix simulate(const PulseSequence& seq, const HamiltonianModel& model);

/// Real pulse exp(-i delta (lambda P (x) I + H)) about a Pauli string, with lambda = pi / (2 delta).
[[nodiscard]] RealPulse real_pauli_pulse(const std::string& pauli_label, double delta);

/// XY-4: Z f X f Z f X f. With ideal == false the pulses are real with width delta and amplitude
/// lambda, which must satisfy delta * lambda = pi / 2.
[[nodiscard]] PulseSequence xy4(double tau, bool ideal = true, double delta = 0.0,
                                double lambda = 0.0);

/// Symmetrization prod_{j=K..0} g_j^dagger f g_j over a group listed with g_0 = I, with adjacent
/// pulses merged into group representatives (phases dropped, identities removed).
[[nodiscard]] PulseSequence symmetrize(const NamedGroup& group, double tau);

/// Concatenated decoupling of level m >= 1 over a group with g_0 = I.
[[nodiscard]] PulseSequence cdd(const NamedGroup& group, int level, double tau);

/// Resolves a pulse name for an n-qubit system: Pauli strings ("X", "ZZ", "XXXX"), the two-qubit
/// code pulses "Xbar" and "Zbar", and '*'-separated products of these.
[[nodiscard]] ComplexMatrix resolve_pulse(const std::string& name, std::size_t n_qubits);

/// Sequence text format, one event per line in product order:
///     free <tau>
///     pulse <name>
///     realpulse <name> <delta>
/// Lines starting with '#' are comments; "# name <text>" and "# level <m>" set the metadata.
void write_sequence(std::ostream& os, const PulseSequence& seq);
[[nodiscard]] PulseSequence read_sequence(std::istream& is, std::size_t n_qubits,
                                          const std::string& source = "<stream>");
[[nodiscard]] PulseSequence read_sequence_file(const std::string& path, std::size_t n_qubits);

// ----- decoupling error -----------------------------------------------------------------------

struct DecouplingErrorReport {
  ComplexMatrix total_unitary;
  /// H_eff with U = exp(-i T (H_eff + removed_phase / T)); the identity part is branch-dependent.
  ComplexMatrix effective_h;
  double removed_phase = 0.0;
  /// Sum over non-identity system (or logical, with a code) basis components of ||B_a||.
  double system_error = 0.0;
  /// T * system_error, the dimensionless error phase.
  double error_phase = 0.0;
  /// ||U - I (x) V*|| with V* the unitary polar factor of Tr_S(U) / d_S.
  double bath_distance = 0.0;
  /// ||(Q^dagger (x) I) H_eff (P (x) I)|| when a code is given, else 0.
  double leakage = 0.0;
  double total_time = 0.0;
};

/// Error figures of a joint unitary on (n_qubits qubits) (x) (bath_dim). With a code, H_eff is
/// compressed to the code space and expanded in an orthogonal basis of the logical operators.
/// Throws BranchAmbiguityError when the eigenphases of U leave no gap on the unit circle.
[[nodiscard]] DecouplingErrorReport decoupling_error(const ComplexMatrix& u, double total_time,
                                                     std::size_t n_qubits, std::size_t bath_dim,
                                                     const CodeSpace* code = nullptr);

/// Least-squares line through (log x, log y), skipping points with y < 1e3 * machine epsilon.
struct LogLogFit {
  double slope = 0.0;
  double intercept = 0.0;
  std::size_t points_used = 0;
};
[[nodiscard]] LogLogFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y);

// ----- finite-width pulse scan ----------------------------------------------------------------

struct RealPulseRow {
  double delta = 0.0;
  double system_error = 0.0;
  double error_phase = 0.0;
  double bath_distance = 0.0;
  double total_time = 0.0;
};

struct RealPulseScan {
  double tau = 0.0;
  RealPulseRow ideal;  ///< the same sequence with ideal pulses (delta = 0)
  std::vector<RealPulseRow> rows;
};

/// X f X f with real X pulses of width delta (lambda = pi / (2 delta)) on qubit-wise X, for each
/// width, plus the ideal-pulse reference. The model must have one system qubit or more; the
/// pulse is X on every qubit.
[[nodiscard]] RealPulseScan real_pulse_error_scan(const HamiltonianModel& model, double tau,
                                                  const std::vector<double>& deltas);

// ----- hybrid DD + DFS on two qubits ----------------------------------------------------------

enum class ErrorClass { Unchanged, Logical, Leakage };
[[nodiscard]] std::string error_class_name(ErrorClass c);

struct ErrorClassRow {
  std::string label;
  ComplexMatrix op;
  ErrorClass error_class = ErrorClass::Unchanged;
  double leakage_norm = 0.0;  ///< ||Q^dagger E P||
};

struct HybridDdDfs {
  CodeSpace code;  ///< Span{|01>, |10>}
  ComplexMatrix sigma_bar_x, sigma_bar_y, sigma_bar_z;
  PulseSequence u1, u2, u3;
  std::vector<ErrorClassRow> table;  ///< the 16 Pauli strings followed by named combinations
};

[[nodiscard]] HybridDdDfs hybrid_ddfs_two_qubit(double tau);

/// Classifies an operator against a code: leakage if it maps the code out of itself, unchanged if
/// its compression is proportional to the identity, logical otherwise.
[[nodiscard]] ErrorClassRow classify_error(const std::string& label, const ComplexMatrix& op,
                                           const CodeSpace& code, double tol = 1e-12);

// ----- CDD error-phase bound ------------------------------------------------------------------

struct CddBoundRow {
  int m = 0;
  double total_time = 0.0;  ///< T_m = 4^m tau
  double phi_bound = 0.0;   ///< T_m 2^{m^2} (beta tau)^m J
  double log10_phi_bound = 0.0;
};

struct CddBoundTable {
  std::vector<CddBoundRow> rows;
  double m_opt = 0.0;  ///< -log(4 beta tau) / (2 log 2)
  int m_opt_floor = 0;
  bool concatenate = false;  ///< false when m_opt <= 0 ("do not concatenate")
};

/// Requires 0 <= J < beta and tau > 0.
[[nodiscard]] CddBoundTable cdd_bound_and_optimum(double J, double beta, double tau, int m_max);

struct FixedTimeBoundRow {
  int m = 0;
  double bound = 0.0;       ///< J T (beta T / 2^m)^m
  bool in_regime = false;   ///< 2^m > beta T
  bool decreasing = false;  ///< bound(m + 1) < bound(m)
};

/// Fixed total time variant for m = 0..m_max (decreasing is evaluated against m + 1).
[[nodiscard]] std::vector<FixedTimeBoundRow> cdd_fixed_time_bound(double J, double beta,
                                                                  double total_time, int m_max);

}  // namespace dfslab
