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
#include <numbers>

#include "dfslab/dd.hpp"
#include "dfslab/errors.hpp"
#include "dfslab/pauli.hpp"

namespace dfslab {

// ----- finite-width pulses --------------------------------------------------------------------

RealPulseScan real_pulse_error_scan(const HamiltonianModel& model, double tau,
                                    const std::vector<double>& deltas) {
  if (!(tau > 0.0)) throw PreconditionError("real_pulse_error_scan: tau must be positive");
  const std::string axis(model.n_qubits(), 'X');
  const std::size_t n = model.n_qubits();
  const std::size_t db = model.bath_dim();

  auto row_for = [&](const PulseSequence& seq, double delta) {
    const DecouplingErrorReport r =
        decoupling_error(simulate(seq, model), seq.total_duration(), n, db);
    return RealPulseRow{delta, r.system_error, r.error_phase, r.bath_distance, r.total_time};
  };

  RealPulseScan scan;
  scan.tau = tau;
  PulseSequence ideal;
  ideal.name = "XfXf";
  for (int k = 0; k < 2; ++k) {
    ideal.events.emplace_back(IdealPulse{axis, pauli_string(axis)});
    ideal.events.emplace_back(FreeEvent{tau});
  }
  scan.ideal = row_for(ideal, 0.0);

  for (double delta : deltas) {
    if (!(delta > 0.0)) throw PreconditionError("real_pulse_error_scan: widths must be positive");
    PulseSequence seq;
    seq.name = "XfXf-real";
    for (int k = 0; k < 2; ++k) {
      seq.events.emplace_back(real_pauli_pulse(axis, delta));
      seq.events.emplace_back(FreeEvent{tau});
    }
    scan.rows.push_back(row_for(seq, delta));
  }
  return scan;
}

// ----- hybrid DD + DFS ------------------------------------------------------------------------

std::string error_class_name(ErrorClass c) {
  switch (c) {
    case ErrorClass::Unchanged:
      return "unchanged";
    case ErrorClass::Logical:
      return "logical";
    case ErrorClass::Leakage:
      return "leakage";
  }
  return "unknown";
}

ErrorClassRow classify_error(const std::string& label, const ComplexMatrix& op,
                             const CodeSpace& code, double tol) {
  const ComplexMatrix& p = code.isometry();
  if (op.rows() != p.rows() || op.cols() != p.rows()) {
    throw DimensionError("classify_error: operator does not act on the code's physical space");
  }
  ErrorClassRow row;
  row.label = label;
  row.op = op;
  const ComplexMatrix q = orthogonal_complement(p);
  row.leakage_norm = q.cols() > 0 ? op_norm(q.adjoint() * op * p) : 0.0;
  if (row.leakage_norm > tol) {
    row.error_class = ErrorClass::Leakage;
    return row;
  }
  const ComplexMatrix block = p.adjoint() * op * p;
  const Complex c = block.trace() / static_cast<double>(block.rows());
  row.error_class = max_abs_diff(block, c * identity(block.rows())) <= tol ? ErrorClass::Unchanged
                                                                           : ErrorClass::Logical;
  return row;
}

HybridDdDfs hybrid_ddfs_two_qubit(double tau) {
  if (!(tau >= 0.0)) throw PreconditionError("hybrid_ddfs_two_qubit: tau must be >= 0");
  ComplexMatrix iso(4, 2);
  iso.col(0) = ket("01");
  iso.col(1) = ket("10");
  CodeSpace code(2, iso, {CodeLabel::named("|01>"), CodeLabel::named("|10>")});

  const ComplexMatrix sx = (pauli_string("XX") + pauli_string("YY")) / 2.0;
  const ComplexMatrix sy = (pauli_string("YX") - pauli_string("XY")) / 2.0;
  const ComplexMatrix sz = (pauli_string("ZI") - pauli_string("IZ")) / 2.0;
  const ComplexMatrix x_bar = expm_skew_hermitian(sx, std::numbers::pi / 2.0);
  const ComplexMatrix z_bar = expm_skew_hermitian(sz, std::numbers::pi / 2.0);
  const ComplexMatrix zz = pauli_string("ZZ");

  PulseSequence u1;
  u1.name = "U1";
  u1.level = 1;
  for (int k = 0; k < 2; ++k) {
    u1.events.emplace_back(IdealPulse{"Xbar", x_bar});
    u1.events.emplace_back(FreeEvent{tau});
  }
  PulseSequence u2;
  u2.name = "U2";
  u2.level = 2;
  for (int k = 0; k < 2; ++k) {
    u2.events.emplace_back(IdealPulse{"ZZ", zz});
    u2.events.insert(u2.events.end(), u1.events.begin(), u1.events.end());
  }
  PulseSequence u3;
  u3.name = "U3";
  u3.level = 3;
  for (int k = 0; k < 2; ++k) {
    u3.events.emplace_back(IdealPulse{"Zbar", z_bar});
    u3.events.insert(u3.events.end(), u2.events.begin(), u2.events.end());
  }

  std::vector<ErrorClassRow> table;
  for (std::size_t a = 0; a < 16; ++a) {
    table.push_back(classify_error(pauli_label(a, 2), pauli_string(a, 2), code));
  }
  table.push_back(classify_error("Z1+Z2", pauli_string("ZI") + pauli_string("IZ"), code));
  table.push_back(classify_error("XX-YY", pauli_string("XX") - pauli_string("YY"), code));
  table.push_back(classify_error("XY+YX", pauli_string("XY") + pauli_string("YX"), code));
  table.push_back(classify_error("sigma_bar_x", sx, code));
  table.push_back(classify_error("sigma_bar_y", sy, code));
  table.push_back(classify_error("sigma_bar_z", sz, code));

  return HybridDdDfs{std::move(code), sx, sy, sz, std::move(u1), std::move(u2), std::move(u3),
                     std::move(table)};
}

// ----- CDD bound ------------------------------------------------------------------------------

CddBoundTable cdd_bound_and_optimum(double J, double beta, double tau, int m_max) {
  if (!(J >= 0.0) || !(J < beta)) throw PreconditionError("cdd bound: requires 0 <= J < beta");
  if (!(tau > 0.0)) throw PreconditionError("cdd bound: tau must be positive");
  if (m_max < 1 || m_max > 64) throw PreconditionError("cdd bound: m_max must be in [1, 64]");
  CddBoundTable table;
  const double log10_2 = std::log10(2.0);
  for (int m = 1; m <= m_max; ++m) {
    const double md = m;
    CddBoundRow row;
    row.m = m;
    row.total_time = std::pow(4.0, md) * tau;
    row.log10_phi_bound = std::log10(row.total_time) + md * md * log10_2 +
                          md * std::log10(beta * tau) + std::log10(J);
    row.phi_bound = std::pow(10.0, row.log10_phi_bound);
    table.rows.push_back(row);
  }
  table.m_opt = -std::log(4.0 * beta * tau) / (2.0 * std::log(2.0));
  // Guard the floor against representation error when m_opt is an exact integer.
  table.m_opt_floor = static_cast<int>(std::floor(table.m_opt + 1e-12));
  table.concatenate = table.m_opt > 0.0;
  return table;
}

std::vector<FixedTimeBoundRow> cdd_fixed_time_bound(double J, double beta, double total_time,
                                                    int m_max) {
  if (!(J >= 0.0) || !(beta > 0.0)) throw PreconditionError("cdd bound: requires J >= 0, beta > 0");
  if (!(total_time > 0.0)) throw PreconditionError("cdd bound: total time must be positive");
  if (m_max < 0 || m_max > 64) throw PreconditionError("cdd bound: m_max must be in [0, 64]");
  const double bt = beta * total_time;
  // log b(m) = log(J T) + m log(beta T) - m^2 log 2, evaluated in logs to avoid overflow.
  auto log_bound = [&](int m) {
    const double md = m;
    return std::log(J * total_time) + md * std::log(bt) - md * md * std::log(2.0);
  };
  std::vector<FixedTimeBoundRow> rows;
  for (int m = 0; m <= m_max; ++m) {
    FixedTimeBoundRow row;
    row.m = m;
    row.bound = std::exp(log_bound(m));
    row.in_regime = std::ldexp(1.0, m) > bt;
    row.decreasing = log_bound(m + 1) < log_bound(m);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace dfslab
