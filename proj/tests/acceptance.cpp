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

// Acceptance runner: one PASS/FAIL line per criterion, exit status 1 if any criterion fails.

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "dfslab/algebra.hpp"
#include "dfslab/cli.hpp"
#include "dfslab/codes.hpp"
#include "dfslab/dd.hpp"
#include "dfslab/harness.hpp"
#include "dfslab/matrix_io.hpp"
#include "dfslab/model_config.hpp"
#include "dfslab/models.hpp"
#include "dfslab/pauli.hpp"

namespace dfslab {
namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

ComplexVector ket_sum(std::initializer_list<std::pair<const char*, double>> terms, double scale) {
  ComplexVector v;
  for (const auto& [bits, amp] : terms) {
    if (v.size() == 0) v = ComplexVector::Zero(ket(bits).size());
    v += amp * ket(bits);
  }
  return v * scale;
}

std::vector<ComplexMatrix> collective_generators(std::size_t n) {
  const CollectiveSpinOps s = collective_spin_ops(n, false);
  return {s.x, s.y, s.z};
}

HamiltonianModel template_model(ModelTemplate t, std::size_t n, std::size_t bath_dim) {
  ModelSpec spec;
  spec.model_template = t;
  spec.n_qubits = n;
  spec.bath_dim = bath_dim;
  spec.J = 1.0;
  spec.beta = 1.0;
  spec.seed = 42;
  return build_model(spec);
}

// ----- 1 ---------------------------------------------------------------------------------------
void collective_dephasing_exactness(Outcome& o) {
  double worst_fixed = 0.0;
  double worst_coherence = 0.0;
  for (std::size_t n = 2; n <= 4; ++n) {
    const std::vector<CodeSpace> sectors = dephasing_dfs_enumerate(n);
    for (double alpha : {0.1, 1.0, 10.0}) {
      const Superoperator channel = collective_dephasing_channel(n, alpha);
      for (const CodeSpace& code : sectors) {
        // Uniform superposition and every basis state of the sector.
        ComplexVector psi = code.isometry().rowwise().sum().normalized();
        const ComplexMatrix rho = psi * psi.adjoint();
        worst_fixed = std::max(worst_fixed, max_abs_diff(channel.apply(rho), rho));
        for (Eigen::Index k = 0; k < code.dim(); ++k) {
          const ComplexVector b = code.isometry().col(k);
          const ComplexMatrix rb = b * b.adjoint();
          worst_fixed = std::max(worst_fixed, max_abs_diff(channel.apply(rb), rb));
        }
      }
      // Superposition across sectors: coherence scales by exp(-alpha dc^2 / 4).
      for (std::size_t a = 0; a < sectors.size(); ++a) {
        for (std::size_t b = a + 1; b < sectors.size(); ++b) {
          const ComplexVector u = sectors[a].isometry().col(0);
          const ComplexVector v = sectors[b].isometry().col(0);
          const ComplexVector psi = (u + v) / std::sqrt(2.0);
          const ComplexMatrix out = channel.apply(ComplexMatrix(psi * psi.adjoint()));
          const double dc = static_cast<double>(*sectors[a].labels()[0].c_z - *sectors[b].labels()[0].c_z);
          const Complex coherence = u.dot(out * v);
          worst_coherence =
              std::max(worst_coherence, std::abs(coherence - 0.5 * std::exp(-alpha * dc * dc / 4.0)));
        }
      }
    }
  }
  const double single = collective_dephasing_factors(1, 0.3)(0, 1) - std::exp(-0.3);
  o.detail << "max fixed-point deviation " << worst_fixed << ", coherence deviation "
           << worst_coherence << ", single-qubit " << std::abs(single);
  o.require(worst_fixed < 1e-12, "fixed points");
  o.require(worst_coherence < 1e-12, "cross-sector coherence");
  o.require(std::abs(single) < 1e-15, "single-qubit factor");
}

// ----- 2 ---------------------------------------------------------------------------------------
void deutsch_demo_check(Outcome& o) {
  double worst_plain = 0.0;
  double worst_encoded = 0.0;
  for (double p : {0.0, 0.25, 0.5}) {
    for (const DeutschRow& r : deutsch_demo(p, false)) {
      worst_plain = std::max(worst_plain, std::abs(r.misidentification - p));
    }
    for (const DeutschRow& r : deutsch_demo(p, true)) {
      worst_encoded = std::max(worst_encoded, std::abs(r.misidentification));
    }
  }
  o.detail << "|err - p| unencoded " << worst_plain << ", encoded err " << worst_encoded;
  o.require(worst_plain <= 1e-12, "unencoded");
  o.require(worst_encoded <= 1e-12, "encoded");
}

// ----- 3 ---------------------------------------------------------------------------------------
void code_constructions(Outcome& o) {
  const double r2 = 1.0 / std::sqrt(2.0);
  const double r6 = 1.0 / std::sqrt(6.0);
  const CodeSpace four = four_qubit_dfs();
  const ComplexVector s = ket_sum({{"01", 1}, {"10", -1}}, r2);
  const ComplexVector zero = tensor(s, s);
  const ComplexVector one = ket_sum({{"1100", 1}, {"0011", 1}, {"0101", -0.5}, {"0110", -0.5},
                                     {"1001", -0.5}, {"1010", -0.5}},
                                    1.0 / std::sqrt(3.0));
  const double d_four = std::max((four.isometry().col(0) - zero).cwiseAbs().maxCoeff(),
                                 (four.isometry().col(1) - one).cwiseAbs().maxCoeff());

  const SpinTowerBasis tower = spin_tower(3);
  double d_three = 0.0;
  d_three = std::max(d_three, max_abs_diff(tower.state({1, 0, -1}), ket_sum({{"011", 1}, {"101", -1}}, r2)));
  d_three = std::max(d_three, max_abs_diff(tower.state({1, 0, 1}), ket_sum({{"010", 1}, {"100", -1}}, r2)));
  d_three = std::max(d_three, max_abs_diff(tower.state({1, 1, -1}),
                                           ket_sum({{"110", 2}, {"011", -1}, {"101", -1}}, r6)));
  d_three = std::max(d_three, max_abs_diff(tower.state({1, 1, 1}),
                                           ket_sum({{"010", 1}, {"100", 1}, {"001", -2}}, r6)));

  const ComplexMatrix& p = four.isometry();
  const ComplexMatrix q = orthogonal_complement(p);
  const ComplexMatrix z = -exchange_op(4, 1, 2);
  const ComplexMatrix x = (exchange_op(4, 2, 3) - exchange_op(4, 1, 3)) / std::sqrt(3.0);
  const double d_ops = std::max({max_abs_diff(p.adjoint() * z * p, pauli(Pauli::Z)),
                                 max_abs_diff(p.adjoint() * x * p, pauli(Pauli::X)),
                                 op_norm(q.adjoint() * z * p), op_norm(q.adjoint() * x * p)});
  o.detail << "4-qubit amplitudes " << d_four << ", 3-qubit states " << d_three
           << ", logical operator residual " << d_ops;
  o.require(d_four < 1e-12, "4-qubit codewords");
  o.require(d_three < 1e-12, "3-qubit J=1/2 states");
  o.require(d_ops < 1e-12, "exchange logical operators");
}

// ----- 4 ---------------------------------------------------------------------------------------
void counting_identities(Outcome& o) {
  bool closed_form = true;
  bool sum_rule = true;
  for (std::size_t n = 1; n <= 10; ++n) {
    Count total = 0;
    for (int two_j = static_cast<int>(n % 2); two_j <= static_cast<int>(n); two_j += 2) {
      // n_J = C(n, n/2 - J) - C(n, n/2 - J - 1)
      const std::size_t k = (n - static_cast<std::size_t>(two_j)) / 2;
      Count c_k = 1;
      for (std::size_t i = 1; i <= k; ++i) c_k = c_k * (n - k + i) / i;
      Count c_km1 = 0;
      if (k >= 1) {
        c_km1 = 1;
        for (std::size_t i = 1; i <= k - 1; ++i) c_km1 = c_km1 * (n - k + 1 + i) / i;
      }
      const Count paths = bratteli_paths(n, two_j);
      closed_form = closed_form && paths == c_k - c_km1;
      total += paths * (two_j + 1);
    }
    sum_rule = sum_rule && total == (Count(1) << n);
  }
  const std::vector<RateRow> rates = rate_table(6, RateModel::Decoherence);
  const bool d4 = bratteli_paths(4, 0) == 2 && rates[1].dim == 2;
  const bool d6 = bratteli_paths(6, 0) == 5 && rates[2].dim == 5;
  o.detail << "closed form " << (closed_form ? "ok" : "mismatch") << ", sum rule "
           << (sum_rule ? "ok" : "mismatch") << ", d4=" << rates[1].dim << ", d6=" << rates[2].dim;
  o.require(closed_form, "closed form");
  o.require(sum_rule, "sum rule");
  o.require(d4 && d6, "d4/d6");
}

// ----- 5 ---------------------------------------------------------------------------------------
std::string block_text(const AlgebraDecomposition& d) {
  std::string s;
  for (const AlgebraBlock& b : d.blocks) {
    s += (s.empty() ? "" : ",") + ("(" + std::to_string(b.n) + "," + std::to_string(b.d) + ")");
  }
  return s;
}

double independent_block_residual(const AlgebraDecomposition& dec, const std::vector<ComplexMatrix>& gens) {
  const ComplexMatrix& w = dec.transform;
  double worst = max_abs_diff(w.adjoint() * w, identity(w.cols()));
  for (const ComplexMatrix& g : gens) {
    const ComplexMatrix b = w.adjoint() * g * w;
    ComplexMatrix expected = ComplexMatrix::Zero(b.rows(), b.cols());
    for (std::size_t j = 0; j < dec.blocks.size(); ++j) {
      const auto off = static_cast<Eigen::Index>(dec.block_offsets[j]);
      const auto n = static_cast<Eigen::Index>(dec.blocks[j].n);
      const auto d = static_cast<Eigen::Index>(dec.blocks[j].d);
      expected.block(off, off, n * d, n * d) = tensor(identity(n), b.block(off, off, d, d));
    }
    worst = std::max(worst, max_abs_diff(b, expected));
  }
  return worst;
}

std::string algebra_decomposition(Outcome& o) {
  const std::vector<ComplexMatrix> gens = collective_generators(3);
  const AlgebraDecomposition a = decompose(gens, 42);
  const double ra = independent_block_residual(a, gens);
  const std::vector<ComplexMatrix>& group = collective_pauli_group(4).elements;
  const AlgebraDecomposition b = decompose(group, 42);
  const double rb = independent_block_residual(b, group);
  o.detail << "collective n=3 blocks " << block_text(a) << " residual " << ra
           << "; {I,XXXX,YYYY,ZZZZ} blocks " << block_text(b) << " residual " << rb;
  o.require(block_text(a) == "(2,2),(1,4)", "collective decoherence blocks");
  o.require(ra < 1e-8, "collective decoherence residual");
  o.require(block_text(b) == "(4,1),(4,1),(4,1),(4,1)", "collective Pauli blocks");
  o.require(rb < 1e-8, "collective Pauli residual");
  std::ostringstream csv;
  csv << "case,blocks,residual\ncollective_decoherence_3,\"" << block_text(a) << "\","
      << format_real(a.structure_residual) << "\ncollective_pauli_4,\"" << block_text(b) << "\","
      << format_real(b.structure_residual) << "\n";
  return csv.str();
}

// ----- 6 ---------------------------------------------------------------------------------------
std::string average_hamiltonian(Outcome& o) {
  const HamiltonianModel general = template_model(ModelTemplate::General, 1, 4);
  const double klein = op_norm(system_part(
      average_over_group(interaction_hamiltonian(general), klein_group().elements), 2));
  const HamiltonianModel linear = template_model(ModelTemplate::LinearIndependentBaths, 4, 4);
  const double coll = op_norm(system_part(
      average_over_group(interaction_hamiltonian(linear), collective_pauli_group(4).elements), 16));
  o.detail << "Klein/general " << klein << ", collective Pauli/linear n=4 " << coll;
  o.require(klein < 1e-12, "Klein");
  o.require(coll < 1e-12, "collective Pauli");
  return "case,system_norm\nklein_general_1," + format_real(klein) +
         "\ncollective_pauli_linear_4," + format_real(coll) + "\n";
}

// ----- 7 ---------------------------------------------------------------------------------------
const char* kFreeConfig = R"(experiment: free
model: {template: general, n_qubits: 1, bath_dim: 4, J: 1, beta: 1, seed: 42}
grid: {tau: {pow2_from: -10, pow2_to: -5}}
)";
const char* kXy4Config = R"(experiment: xy4
model: {template: general, n_qubits: 1, bath_dim: 4, J: 1, beta: 1, seed: 42}
grid: {tau: {pow2_from: -10, pow2_to: -5}}
)";
const char* kCddConfig = R"(experiment: cdd
model: {template: general, n_qubits: 1, bath_dim: 4, J: 1, beta: 1, seed: 42}
grid: {tau: {pow2_from: -10, pow2_to: -6}, m: [2, 3]}
)";
const char* kHybridConfig = R"(experiment: hybrid
model: {template: linear_independent_baths, n_qubits: 2, bath_dim: 4, J: 1, beta: 1, seed: 42}
grid: {tau: {pow2_from: -10, pow2_to: -5}}
)";
const char* kRealPulseConfig = R"(experiment: real_pulse
model: {template: pure_dephasing, n_qubits: 1, bath_dim: 4, J: 1, beta: 0, seed: 42}
grid: {tau: 0.1, delta: {log10_from: -5, log10_to: -3, count: 5}}
)";

double section_slope(const SweepResult& r, std::size_t s) {
  return r.sections.at(s).slope ? r.sections.at(s).slope->slope : std::nan("");
}

std::string dd_scaling(Outcome& o, unsigned threads) {
  std::string csv;
  auto run = [&](const char* text) {
    ExperimentConfig cfg = parse_experiment_config(text, "acceptance");
    cfg.threads = threads;
    SweepResult r = run_sweep(cfg);
    csv += to_csv(r);
    return r;
  };
  const double s_free = section_slope(run(kFreeConfig), 0);
  const double s_xy4 = section_slope(run(kXy4Config), 0);
  const SweepResult cdd_r = run(kCddConfig);
  const double s_cdd2 = section_slope(cdd_r, 0);
  const double s_cdd3 = section_slope(cdd_r, 1);
  const double s_hyb = section_slope(run(kHybridConfig), 0);
  o.detail << "slopes free " << s_free << ", XY4 " << s_xy4 << ", CDD2 " << s_cdd2 << ", CDD3 "
           << s_cdd3 << ", hybrid U3 " << s_hyb;
  o.require(std::abs(s_free - 1.0) <= 0.1, "free");
  o.require(std::abs(s_xy4 - 2.0) <= 0.15, "XY4");
  o.require(std::abs(s_cdd2 - 3.0) <= 0.2, "CDD level 2");
  o.require(std::abs(s_cdd3 - 4.0) <= 0.25, "CDD level 3");
  o.require(std::abs(s_hyb - 2.0) <= 0.2, "hybrid");
  return csv;
}

// ----- 8 ---------------------------------------------------------------------------------------
std::string real_pulse(Outcome& o, unsigned threads) {
  ExperimentConfig cfg = parse_experiment_config(kRealPulseConfig, "acceptance");
  cfg.threads = threads;
  const SweepResult r = run_sweep(cfg);
  const double s = section_slope(r, 0);
  o.detail << "error vs delta slope " << s << " at tau=0.1";
  o.require(std::abs(s - 1.0) <= 0.15, "slope");
  return to_csv(r);
}

// ----- 9 ---------------------------------------------------------------------------------------
void cdd_bound(Outcome& o) {
  const CddBoundTable t = cdd_bound_and_optimum(0.5, 1.0, 1.0 / 64.0, 6);
  bool regime_exact = true;
  bool decrease_in_regime = true;
  for (double beta_t : {0.5, 1.0, 3.0, 7.5, 16.0, 100.0, 1000.0}) {
    for (const FixedTimeBoundRow& r : cdd_fixed_time_bound(1.0, 1.0, beta_t, 12)) {
      const bool predicate = std::ldexp(1.0, r.m) > beta_t;
      regime_exact = regime_exact && r.in_regime == predicate;
      decrease_in_regime = decrease_in_regime && (!predicate || r.decreasing);
    }
  }
  o.detail << "m_opt " << t.m_opt << " (floor " << t.m_opt_floor << ") for beta*tau=1/64; regime flag "
           << (regime_exact ? "exact" : "mismatch") << ", bound decreasing in regime "
           << (decrease_in_regime ? "yes" : "no");
  o.require(t.m_opt_floor == 2 && std::abs(t.m_opt - 2.0) < 1e-12, "m_opt");
  o.require(regime_exact, "regime detection");
  o.require(decrease_in_regime, "monotone decrease");
}

// ----- 10 --------------------------------------------------------------------------------------
std::string decompose_cli_csv() {
  std::ostringstream out, err;
  (void)cli_main({"--format", "csv", "decompose", "--model", "collective_decoherence", "--n", "3"},
                 out, err);
  return out.str();
}

void determinism(Outcome& o) {
  auto collect = [&](unsigned threads) {
    Outcome scratch;
    std::vector<std::string> files;
    files.push_back(algebra_decomposition(scratch) + decompose_cli_csv());
    files.push_back(average_hamiltonian(scratch));
    files.push_back(dd_scaling(scratch, threads));
    files.push_back(real_pulse(scratch, threads));
    return files;
  };
  const std::vector<std::string> first = collect(1);
  const std::vector<std::string> second = collect(1);
  const std::vector<std::string> threaded = collect(4);
  std::size_t bytes = 0;
  bool same = true;
  for (std::size_t k = 0; k < first.size(); ++k) {
    bytes += first[k].size();
    same = same && first[k] == second[k] && first[k] == threaded[k];
  }
  o.detail << first.size() << " CSV outputs (" << bytes << " bytes) "
           << (same ? "byte-identical" : "differ") << " across repeated runs and 1 vs 4 threads";
  o.require(same, "byte identity");
}

struct Criterion {
  int id;
  std::string title;
  double time_limit_s;
  std::function<void(Outcome&)> run;
};

}  // namespace
}  // namespace dfslab

int main() {
  using namespace dfslab;
  const std::vector<Criterion> criteria{
      {1, "collective-dephasing DFS exactness", 1.0, collective_dephasing_exactness},
      {2, "Deutsch demo under dephasing", 1.0, deutsch_demo_check},
      {3, "code constructions", 1.0, code_constructions},
      {4, "counting identities", 1.0, counting_identities},
      {5, "algebra decomposition", 10.0, [](Outcome& o) { (void)algebra_decomposition(o); }},
      {6, "average Hamiltonian annihilation", 5.0, [](Outcome& o) { (void)average_hamiltonian(o); }},
      {7, "DD scaling slopes", 60.0, [](Outcome& o) { (void)dd_scaling(o, 1); }},
      {8, "real-pulse correction", 30.0, [](Outcome& o) { (void)real_pulse(o, 1); }},
      {9, "CDD bound table", 1.0, cdd_bound},
      {10, "determinism", 600.0, determinism},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << " [exception: " << e.what() << "]";
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (elapsed > c.time_limit_s) {
      o.pass = false;
      o.detail << " [over the " << c.time_limit_s << " s budget]";
    }
    failures += o.pass ? 0 : 1;
    std::cout << (o.pass ? "PASS" : "FAIL") << " " << c.id << " " << c.title << ": "
              << o.detail.str() << " (" << elapsed << " s)" << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
