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

#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>

#include "dfslab/algebra.hpp"
#include "dfslab/dd.hpp"
#include "dfslab/errors.hpp"
#include "dfslab/model_config.hpp"
#include "dfslab/models.hpp"
#include "dfslab/pauli.hpp"
#include "dfslab/random.hpp"
#include "test_util.hpp"

namespace dfslab {
namespace {

HamiltonianModel make_model(ModelTemplate t, std::size_t n, std::size_t bath_dim = 4,
                            std::uint64_t seed = 42) {
  ModelSpec spec;
  spec.model_template = t;
  spec.n_qubits = n;
  spec.bath_dim = bath_dim;
  spec.J = 1.0;
  spec.beta = 1.0;
  spec.seed = seed;
  return build_model(spec);
}

/// Group-symmetrized evolution built directly from matrices: prod_{j=K..0} g_j^dagger U g_j.
ComplexMatrix symmetrized_product(const NamedGroup& g, const ComplexMatrix& inner, Eigen::Index bath) {
  ComplexMatrix out = identity(inner.rows());
  for (std::size_t j = g.size(); j-- > 0;) {
    const ComplexMatrix gj = tensor(g.elements[j], identity(bath));
    out = (out * gj.adjoint() * inner * gj).eval();
  }
  return out;
}

std::vector<double> error_phases(const std::vector<double>& taus,
                                 const std::function<PulseSequence(double)>& make,
                                 const HamiltonianModel& model, const CodeSpace* code = nullptr) {
  std::vector<double> out;
  for (double tau : taus) {
    const PulseSequence seq = make(tau);
    out.push_back(decoupling_error(simulate(seq, model), seq.total_duration(), model.n_qubits(),
                                   model.bath_dim(), code)
                      .error_phase);
  }
  return out;
}

std::vector<double> pow2_grid(int from, int to) {
  std::vector<double> out;
  for (int k = from; k <= to; ++k) out.push_back(std::ldexp(1.0, k));
  return out;
}

// ----- sequences ------------------------------------------------------------------------------

TEST(Sequences, SimulateMatchesExplicitProduct) {
  const HamiltonianModel m = make_model(ModelTemplate::LinearIndependentBaths, 1, 3);
  const double tau = 0.37;
  const ComplexMatrix f = testing::expm_taylor(total_hamiltonian(m), tau);
  const ComplexMatrix x = tensor(pauli(Pauli::X), identity(3));
  const ComplexMatrix z = tensor(pauli(Pauli::Z), identity(3));
  const ComplexMatrix expected = z * f * x * f * z * f * x * f;
  EXPECT_LT(max_abs_diff(simulate(xy4(tau), m), expected), 1e-12);
}

TEST(Sequences, XY4Layout) {
  const PulseSequence s = xy4(0.25);
  EXPECT_EQ(s.pattern(), "ZfXfZfXf");
  EXPECT_EQ(s.free_segments(), 4u);
  EXPECT_DOUBLE_EQ(s.total_duration(), 1.0);
  EXPECT_THROW((void)xy4(0.1, false, 0.1, 1.0), PreconditionError);
  const PulseSequence r = xy4(0.1, false, 0.01, std::numbers::pi / 0.02);
  EXPECT_NEAR(r.total_duration(), 0.44, 1e-15);
  EXPECT_EQ(r.pattern(), "[Z] f [X] f [Z] f [X] f");
}

TEST(Sequences, KleinSymmetrizationIsXY4) {
  const PulseSequence s = symmetrize(klein_group(), 0.1);
  EXPECT_EQ(s.pattern(), "ZfXfZfXf");
  const HamiltonianModel m = make_model(ModelTemplate::General, 1);
  EXPECT_LT(distance_up_to_global_phase(simulate(s, m), simulate(xy4(0.1), m)), 1e-12);
}

TEST(Sequences, CddLevelTwoPattern) {
  const PulseSequence s = cdd(klein_group(), 2, 0.1);
  EXPECT_EQ(s.pattern(), "fXfZfXfYfXfZfXffXfZfXfYfXfZfXf");
  EXPECT_EQ(s.free_segments(), 16u);
}

TEST(Sequences, CddMatchesRecursiveOracle) {
  const HamiltonianModel m = make_model(ModelTemplate::General, 1);
  const NamedGroup g = klein_group();
  const double tau = 0.05;
  ComplexMatrix inner = testing::expm_taylor(total_hamiltonian(m), tau);
  for (int level = 1; level <= 4; ++level) {
    inner = symmetrized_product(g, inner, 4);
    const PulseSequence s = cdd(g, level, tau);
    EXPECT_EQ(s.free_segments(), static_cast<std::size_t>(1) << (2 * level));
    EXPECT_NEAR(s.total_duration(), std::pow(4.0, level) * tau, 1e-12);
    EXPECT_LT(distance_up_to_global_phase(simulate(s, m), inner), 1e-11) << "level " << level;
  }
  EXPECT_THROW((void)cdd(g, 0, tau), PreconditionError);
}

TEST(Sequences, CollectivePauliCddDuration) {
  const PulseSequence s = cdd(collective_pauli_group(3), 2, 0.01);
  EXPECT_EQ(s.free_segments(), 16u);
  EXPECT_NEAR(s.total_duration(), 0.16, 1e-15);
}

TEST(Sequences, GroupMustStartWithIdentity) {
  NamedGroup g = klein_group();
  std::swap(g.elements[0], g.elements[1]);
  std::swap(g.names[0], g.names[1]);
  EXPECT_THROW((void)symmetrize(g, 0.1), PreconditionError);
}

TEST(Sequences, ResolvePulseNames) {
  EXPECT_LT(max_abs_diff(resolve_pulse("XZ", 2), pauli_string("XZ")), 1e-15);
  EXPECT_LT(max_abs_diff(resolve_pulse("XI*IZ", 2), pauli_string("XZ")), 1e-15);
  EXPECT_THROW((void)resolve_pulse("XZ", 3), PreconditionError);
  EXPECT_THROW((void)resolve_pulse("Xbar", 3), PreconditionError);
  EXPECT_THROW((void)resolve_pulse("H", 1), PreconditionError);
}

TEST(SequenceIo, RoundTrip) {
  const HamiltonianModel m = make_model(ModelTemplate::General, 1);
  PulseSequence s = cdd(klein_group(), 2, 0.03);
  s.events.emplace_back(real_pauli_pulse("Y", 0.002));
  std::stringstream ss;
  write_sequence(ss, s);
  const PulseSequence back = read_sequence(ss, 1);
  EXPECT_EQ(back.name, "cdd");
  EXPECT_EQ(back.level, 2);
  EXPECT_EQ(back.pattern(), s.pattern());
  EXPECT_LT(max_abs_diff(simulate(back, m), simulate(s, m)), 1e-13);
}

TEST(SequenceIo, ErrorsPointAtTheLine) {
  std::istringstream in("# name t\nfree 0.1\npulse Q\n");
  try {
    (void)read_sequence(in, 1, "seq.txt");
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.line(), 2);
    EXPECT_NE(std::string(e.what()).find("seq.txt:3"), std::string::npos) << e.what();
  }
  std::istringstream neg("free -1\n");
  EXPECT_THROW((void)read_sequence(neg, 1), ConfigError);
  std::istringstream unknown("wait 3\n");
  EXPECT_THROW((void)read_sequence(unknown, 1), ConfigError);
}

// ----- decoupling error -----------------------------------------------------------------------

TEST(DecouplingError, PureDephasingOracle) {
  RandomStream rng(5, 0);
  const ComplexMatrix bz = random_hermitian(3, rng);
  const double tau = 0.01;
  const ComplexMatrix u = expm_skew_hermitian(tensor(pauli(Pauli::Z), bz), tau);
  const DecouplingErrorReport r = decoupling_error(u, tau, 1, 3);
  EXPECT_NEAR(r.system_error, op_norm(bz), 1e-10);
  EXPECT_NEAR(r.error_phase, tau * op_norm(bz), 1e-12);
  EXPECT_DOUBLE_EQ(r.total_time, tau);
}

TEST(DecouplingError, SumsComponentNorms) {
  RandomStream rng(6, 0);
  const ComplexMatrix bx = random_hermitian(2, rng);
  const ComplexMatrix by = random_hermitian(2, rng);
  const ComplexMatrix hb = random_hermitian(2, rng);
  const ComplexMatrix h = tensor(pauli(Pauli::X), bx) + tensor(pauli(Pauli::Y), by) +
                          tensor(identity(2), hb);
  const double t = 0.02;
  const DecouplingErrorReport r = decoupling_error(expm_skew_hermitian(h, t), t, 1, 2);
  EXPECT_NEAR(r.system_error, op_norm(bx) + op_norm(by), 1e-9);
  // Reconstructs H up to a multiple of the identity.
  const ComplexMatrix diff = r.effective_h - h;
  EXPECT_LT(max_abs_diff(diff, diff(0, 0) * identity(4)), 1e-9);
}

TEST(DecouplingError, PureBathEvolutionIsExact) {
  RandomStream rng(7, 0);
  const ComplexMatrix hb = random_hermitian(4, rng);
  const HamiltonianModel m(1, 4, {}, hb, {});
  const PulseSequence s = cdd(klein_group(), 2, 0.3);
  const DecouplingErrorReport r = decoupling_error(simulate(s, m), s.total_duration(), 1, 4);
  EXPECT_LT(r.system_error, 1e-12);
  EXPECT_LT(r.bath_distance, 1e-12);
}

TEST(DecouplingError, InvariantUnderGlobalPhaseAcrossTheBranchCut) {
  RandomStream rng(8, 0);
  const ComplexMatrix bz = random_hermitian(2, rng);
  const ComplexMatrix u = expm_skew_hermitian(tensor(pauli(Pauli::Z), bz), 0.05);
  const double reference = decoupling_error(u, 0.05, 1, 2).system_error;
  for (double phase : {1.0, 3.0, std::numbers::pi, -3.1}) {
    const ComplexMatrix v = std::polar(1.0, phase) * u;
    EXPECT_NEAR(decoupling_error(v, 0.05, 1, 2).system_error, reference, 1e-10) << phase;
  }
  EXPECT_THROW((void)decoupling_error(2.0 * identity(4), 1.0, 2, 1), PreconditionError);
  EXPECT_THROW((void)decoupling_error(identity(4), 1.0, 1, 3), DimensionError);
}

TEST(DecouplingError, FitLogLog) {
  const std::vector<double> x{0.1, 0.2, 0.4, 0.8};
  std::vector<double> y;
  for (double v : x) y.push_back(3.0 * v * v * v);
  const LogLogFit f = fit_loglog(x, y);
  EXPECT_NEAR(f.slope, 3.0, 1e-12);
  EXPECT_NEAR(std::exp(f.intercept), 3.0, 1e-12);
  EXPECT_EQ(f.points_used, 4u);
  // Points below the floor are skipped.
  const LogLogFit g = fit_loglog({0.1, 0.2, 0.4}, {1e-20, 0.2, 0.4});
  EXPECT_EQ(g.points_used, 2u);
  EXPECT_NEAR(g.slope, 1.0, 1e-12);
  EXPECT_THROW((void)fit_loglog({0.1, 0.2}, {0.0, 1.0}), PreconditionError);
}

// ----- scaling ------------------------------------------------------------------------------

TEST(Scaling, FreeXY4AndCddOrders) {
  const HamiltonianModel m = make_model(ModelTemplate::General, 1);
  const NamedGroup g = klein_group();
  const std::vector<double> taus = pow2_grid(-9, -6);
  auto free_seq = [](double tau) {
    PulseSequence s;
    s.events.emplace_back(FreeEvent{tau});
    return s;
  };
  EXPECT_NEAR(fit_loglog(taus, error_phases(taus, free_seq, m)).slope, 1.0, 0.1);
  EXPECT_NEAR(fit_loglog(taus, error_phases(taus, [](double t) { return xy4(t); }, m)).slope, 2.0,
              0.15);
  const std::vector<double> coarse = pow2_grid(-7, -4);
  EXPECT_NEAR(
      fit_loglog(coarse, error_phases(coarse, [&](double t) { return cdd(g, 2, t); }, m)).slope,
      3.0, 0.2);
}

TEST(Scaling, SymmetrizationApproachesGroupAverageLinearly) {
  // First-order average Hamiltonian: H_eff - avg(H) = O(tau), so halving tau halves the gap.
  const HamiltonianModel m = make_model(ModelTemplate::General, 2, 2);
  const NamedGroup g = collective_pauli_group(2);
  const ComplexMatrix avg = average_over_group(total_hamiltonian(m), g.elements);
  auto gap = [&](double tau) {
    const PulseSequence s = symmetrize(g, tau);
    const DecouplingErrorReport r = decoupling_error(simulate(s, m), s.total_duration(), 2, 2);
    return op_norm(system_part(r.effective_h - avg, 4));
  };
  const double a = gap(1e-3);
  const double b = gap(5e-4);
  EXPECT_GT(op_norm(system_part(avg, 4)), 0.1);  // the average keeps XX, YY, ZZ terms
  EXPECT_NEAR(b / a, 0.5, 0.02);
}

TEST(RealPulses, ZeroWidthLimitRecoversIdealPulse) {
  const HamiltonianModel m = make_model(ModelTemplate::PureDephasing, 1, 4).with_bath_hamiltonian({});
  PulseSequence ideal;
  PulseSequence real;
  for (int r = 0; r < 2; ++r) {
    ideal.events.emplace_back(IdealPulse{"X", pauli(Pauli::X)});
    ideal.events.emplace_back(FreeEvent{0.1});
    real.events.emplace_back(real_pauli_pulse("X", 1e-10));
    real.events.emplace_back(FreeEvent{0.1});
  }
  EXPECT_LT(distance_up_to_global_phase(simulate(real, m), simulate(ideal, m)), 1e-8);
  EXPECT_THROW((void)real_pauli_pulse("X", 0.0), PreconditionError);
  EXPECT_THROW((void)real_pauli_pulse("Q", 0.1), PreconditionError);
}

TEST(RealPulses, ErrorGrowsLinearlyInWidth) {
  const HamiltonianModel m = make_model(ModelTemplate::PureDephasing, 1, 4).with_bath_hamiltonian({});
  const RealPulseScan scan = real_pulse_error_scan(m, 0.1, {1e-4, 2e-4, 4e-4, 8e-4});
  EXPECT_LT(scan.ideal.error_phase, 1e-12);  // ideal X f X f cancels pure dephasing exactly
  std::vector<double> d, e;
  for (const RealPulseRow& r : scan.rows) {
    d.push_back(r.delta);
    e.push_back(r.error_phase);
  }
  EXPECT_NEAR(fit_loglog(d, e).slope, 1.0, 0.15);
}

// ----- hybrid DD + DFS ------------------------------------------------------------------------

TEST(Hybrid, ClassificationTable) {
  const HybridDdDfs h = hybrid_ddfs_two_qubit(0.1);
  int unchanged = 0, logical = 0, leakage = 0;
  for (std::size_t k = 0; k < 16; ++k) {
    const ErrorClassRow& r = h.table[k];
    EXPECT_EQ(r.label, pauli_label(k, 2));
    unchanged += r.error_class == ErrorClass::Unchanged;
    logical += r.error_class == ErrorClass::Logical;
    leakage += r.error_class == ErrorClass::Leakage;
  }
  EXPECT_EQ(unchanged, 2);
  EXPECT_EQ(logical, 6);
  EXPECT_EQ(leakage, 8);

  auto class_of = [&](const std::string& label) {
    for (const ErrorClassRow& r : h.table) {
      if (r.label == label) return r.error_class;
    }
    ADD_FAILURE() << "missing " << label;
    return ErrorClass::Unchanged;
  };
  for (const char* l : {"II", "ZZ", "Z1+Z2", "XX-YY", "XY+YX"}) {
    EXPECT_EQ(class_of(l), ErrorClass::Unchanged) << l;
  }
  for (const char* l : {"sigma_bar_x", "sigma_bar_y", "sigma_bar_z"}) {
    EXPECT_EQ(class_of(l), ErrorClass::Logical) << l;
  }
  for (const char* l : {"XI", "IX", "YI", "IY", "XZ", "ZX", "YZ", "ZY"}) {
    EXPECT_EQ(class_of(l), ErrorClass::Leakage) << l;
  }
  EXPECT_EQ(error_class_name(ErrorClass::Leakage), "leakage");
}

TEST(Hybrid, ZZRemovesLeakageAndIsALogicalRotation) {
  const HybridDdDfs h = hybrid_ddfs_two_qubit(0.1);
  const ComplexMatrix zz = pauli_string("ZZ");
  for (const ErrorClassRow& r : h.table) {
    if (r.error_class == ErrorClass::Leakage) {
      EXPECT_LT(anticommutator(zz, r.op).cwiseAbs().maxCoeff(), 1e-14) << r.label;
    }
  }
  const ComplexMatrix rot = expm_skew_hermitian(h.sigma_bar_x, std::numbers::pi);
  EXPECT_LT(distance_up_to_global_phase(zz, rot), 1e-12);
  // Logical operators restrict to the Paulis on the code.
  const ComplexMatrix& p = h.code.isometry();
  EXPECT_LT(max_abs_diff(p.adjoint() * h.sigma_bar_x * p, pauli(Pauli::X)), 1e-14);
  EXPECT_LT(max_abs_diff(p.adjoint() * h.sigma_bar_y * p, pauli(Pauli::Y)), 1e-14);
  EXPECT_LT(max_abs_diff(p.adjoint() * h.sigma_bar_z * p, pauli(Pauli::Z)), 1e-14);
}

TEST(Hybrid, NestedSequencesHaveEightFreeSegments) {
  const HybridDdDfs h = hybrid_ddfs_two_qubit(0.1);
  EXPECT_EQ(h.u1.free_segments(), 2u);
  EXPECT_EQ(h.u2.free_segments(), 4u);
  EXPECT_EQ(h.u3.free_segments(), 8u);
  EXPECT_NEAR(h.u3.total_duration(), 0.8, 1e-15);
}

TEST(Hybrid, CodeProjectedErrorIsSecondOrder) {
  const HamiltonianModel m = make_model(ModelTemplate::LinearIndependentBaths, 2, 2);
  const HybridDdDfs ref = hybrid_ddfs_two_qubit(1.0);
  const std::vector<double> taus = pow2_grid(-9, -6);
  const std::vector<double> e = error_phases(
      taus, [](double t) { return hybrid_ddfs_two_qubit(t).u3; }, m, &ref.code);
  EXPECT_NEAR(fit_loglog(taus, e).slope, 2.0, 0.2);
}

// ----- CDD bound ----------------------------------------------------------------------------

TEST(CddBound, OptimalLevelFormula) {
  const CddBoundTable t = cdd_bound_and_optimum(0.5, 1.0, 1.0 / 64.0, 5);
  EXPECT_NEAR(t.m_opt, 2.0, 1e-12);
  EXPECT_EQ(t.m_opt_floor, 2);
  EXPECT_TRUE(t.concatenate);
  ASSERT_EQ(t.rows.size(), 5u);
  for (const CddBoundRow& r : t.rows) {
    const double tau = 1.0 / 64.0;
    const double expected = std::pow(4.0, r.m) * tau * std::pow(2.0, r.m * r.m) *
                            std::pow(tau, r.m) * 0.5;
    EXPECT_NEAR(r.phi_bound / expected, 1.0, 1e-12);
    EXPECT_NEAR(r.log10_phi_bound, std::log10(expected), 1e-12);
  }
  // The bound's minimum over integer m sits next to m_opt.
  std::size_t best = 0;
  for (std::size_t k = 1; k < t.rows.size(); ++k) {
    if (t.rows[k].phi_bound < t.rows[best].phi_bound) best = k;
  }
  EXPECT_LE(std::abs(t.rows[best].m - t.m_opt), 1.0);

  EXPECT_FALSE(cdd_bound_and_optimum(0.5, 1.0, 0.5, 3).concatenate);
  EXPECT_THROW((void)cdd_bound_and_optimum(2.0, 1.0, 0.1, 3), PreconditionError);
}

TEST(CddBound, FixedTimeRegimeIsSufficientForDecrease) {
  for (double beta_t : {0.5, 3.0, 10.0, 100.0, 1000.0}) {
    const std::vector<FixedTimeBoundRow> rows = cdd_fixed_time_bound(1.0, 1.0, beta_t, 12);
    ASSERT_EQ(rows.size(), 13u);
    for (const FixedTimeBoundRow& r : rows) {
      EXPECT_EQ(r.in_regime, std::ldexp(1.0, r.m) > beta_t);
      EXPECT_NEAR(r.bound, beta_t * std::pow(beta_t / std::ldexp(1.0, r.m), r.m),
                  1e-12 * std::max(1.0, r.bound));
      if (r.in_regime) EXPECT_TRUE(r.decreasing) << "beta T " << beta_t << " m " << r.m;
      // Exact condition for the next level to lower the bound.
      EXPECT_EQ(r.decreasing, beta_t < std::ldexp(1.0, 2 * r.m + 1));
    }
  }
}

}  // namespace
}  // namespace dfslab
