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

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>
#include <sstream>

#include "dfslab/algebra.hpp"
#include "dfslab/codes.hpp"
#include "dfslab/dd.hpp"
#include "dfslab/errors.hpp"
#include "dfslab/harness.hpp"
#include "dfslab/model_config.hpp"
#include "dfslab/models.hpp"
#include "dfslab/pauli.hpp"

namespace py = pybind11;

namespace {

py::int_ to_python_int(const dfslab::Count& c) {
  return py::int_(py::str(c.str()));
}

dfslab::ModelSpec model_from_yaml(const std::string& text) {
  return dfslab::parse_model_spec(text, "<python>");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Decoherence-free subspaces, noiseless subsystems and dynamical decoupling";

  auto base = py::register_exception<dfslab::Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<dfslab::DimensionError>(m, "DimensionError", base.ptr());
  py::register_exception<dfslab::PreconditionError>(m, "PreconditionError", base.ptr());
  py::register_exception<dfslab::BranchAmbiguityError>(m, "BranchAmbiguityError", base.ptr());
  py::register_exception<dfslab::ValidationFailed>(m, "ValidationFailed", base.ptr());
  py::register_exception<dfslab::ConfigError>(m, "ConfigError", base.ptr());

  m.def("version", &dfslab::version);

  // ----- numeric helpers
  m.def("pauli_string", py::overload_cast<std::string_view>(&dfslab::pauli_string), py::arg("labels"));
  m.def("ket", &dfslab::ket, py::arg("bits"));
  m.def("expm_skew_hermitian", &dfslab::expm_skew_hermitian, py::arg("h"), py::arg("t"));
  m.def("op_norm", &dfslab::op_norm, py::arg("m"));
  m.def("exchange_op", &dfslab::exchange_op, py::arg("n"), py::arg("i"), py::arg("j"));

  // ----- models
  m.def(
      "apply_collective_dephasing",
      [](const dfslab::ComplexMatrix& rho, double alpha) {
        const auto n = static_cast<std::size_t>(std::log2(static_cast<double>(rho.rows())));
        return dfslab::apply_collective_dephasing(
                   dfslab::DensityMatrix(rho, dfslab::TensorLayout::qubits(n), 1e-10), alpha)
            .matrix();
      },
      py::arg("rho"), py::arg("alpha"));
  m.def(
      "interaction_hamiltonian",
      [](const std::string& yaml) { return dfslab::interaction_hamiltonian(dfslab::build_model(model_from_yaml(yaml))); },
      py::arg("model_yaml"));

  // ----- codes
  m.def("dephasing_dfs_enumerate", [](std::size_t n) {
    std::vector<std::pair<int, dfslab::ComplexMatrix>> out;
    for (const dfslab::CodeSpace& c : dfslab::dephasing_dfs_enumerate(n)) {
      out.emplace_back(*c.labels().front().c_z, c.isometry());
    }
    return out;
  }, py::arg("n"), "List of (c_z, isometry) pairs ordered by decreasing c_z.");
  m.def("four_qubit_dfs", []() { return dfslab::four_qubit_dfs().isometry(); });
  m.def("three_qubit_ns_code", []() { return dfslab::three_qubit_ns_code().code.isometry(); });
  m.def("spin_state", [](std::size_t n, int two_j, int lambda, int two_m) {
    return dfslab::ComplexVector(dfslab::spin_tower(n).state({two_j, lambda, two_m}));
  }, py::arg("n"), py::arg("two_j"), py::arg("lambda_"), py::arg("two_m"));
  m.def("bratteli_paths", [](std::size_t n, int two_j) { return to_python_int(dfslab::bratteli_paths(n, two_j)); },
        py::arg("n"), py::arg("two_j"));

  // ----- algebra
  m.def(
      "decompose",
      [](const std::vector<dfslab::ComplexMatrix>& generators, std::uint64_t seed) {
        const dfslab::AlgebraDecomposition d = dfslab::decompose(generators, seed);
        py::list blocks;
        for (const dfslab::AlgebraBlock& b : d.blocks) blocks.append(py::make_tuple(b.n, b.d));
        py::dict out;
        out["blocks"] = blocks;
        out["transform"] = d.transform;
        out["block_offsets"] = d.block_offsets;
        out["structure_residual"] = d.structure_residual;
        return out;
      },
      py::arg("generators"), py::arg("seed") = 0);
  m.def("collective_spin_generators", [](std::size_t n, bool half_spin) {
    const dfslab::CollectiveSpinOps s = dfslab::collective_spin_ops(n, half_spin);
    return std::vector<dfslab::ComplexMatrix>{s.x, s.y, s.z};
  }, py::arg("n"), py::arg("half_spin") = false);
  m.def("collective_pauli_group", [](std::size_t n) { return dfslab::collective_pauli_group(n).elements; },
        py::arg("n"));

  // ----- dynamical decoupling
  m.def(
      "decoupling_error",
      [](const std::string& model_yaml, const std::string& sequence, double tau, int level) {
        const dfslab::ModelSpec spec = model_from_yaml(model_yaml);
        const dfslab::HamiltonianModel model = dfslab::build_model(spec);
        dfslab::PulseSequence seq;
        if (sequence == "xy4") {
          seq = dfslab::xy4(tau);
        } else if (sequence == "cdd") {
          seq = dfslab::cdd(spec.n_qubits == 1 ? dfslab::klein_group()
                                               : dfslab::collective_pauli_group(spec.n_qubits),
                            level, tau);
        } else if (sequence == "free") {
          seq.events.emplace_back(dfslab::FreeEvent{tau});
        } else {
          throw dfslab::PreconditionError("sequence must be free, xy4 or cdd");
        }
        const dfslab::DecouplingErrorReport r = dfslab::decoupling_error(
            dfslab::simulate(seq, model), seq.total_duration(), model.n_qubits(), model.bath_dim());
        py::dict out;
        out["pattern"] = seq.pattern();
        out["system_error"] = r.system_error;
        out["error_phase"] = r.error_phase;
        out["bath_distance"] = r.bath_distance;
        out["total_time"] = r.total_time;
        return out;
      },
      py::arg("model_yaml"), py::arg("sequence"), py::arg("tau"), py::arg("level") = 1);
  m.def("cdd_bound", [](double J, double beta, double tau, int m_max) {
    const dfslab::CddBoundTable t = dfslab::cdd_bound_and_optimum(J, beta, tau, m_max);
    py::dict out;
    out["m_opt"] = t.m_opt;
    out["m_opt_floor"] = t.m_opt_floor;
    out["concatenate"] = t.concatenate;
    py::list rows;
    for (const dfslab::CddBoundRow& r : t.rows) rows.append(py::make_tuple(r.m, r.total_time, r.phi_bound));
    out["rows"] = rows;
    return out;
  }, py::arg("J"), py::arg("beta"), py::arg("tau"), py::arg("m_max"));

  // ----- harness
  m.def("deutsch_demo", [](double p, bool encoded) {
    py::list out;
    for (const dfslab::DeutschRow& r : dfslab::deutsch_demo(p, encoded)) {
      py::dict row;
      row["function"] = r.function;
      row["constant"] = r.constant;
      row["prob_outcome_0"] = r.prob_outcome_0;
      row["prob_outcome_1"] = r.prob_outcome_1;
      row["misidentification"] = r.misidentification;
      out.append(row);
    }
    return out;
  }, py::arg("p"), py::arg("encoded") = false);
  m.def("rate_table", [](std::size_t max_n, const std::string& model) {
    py::list out;
    for (const dfslab::RateRow& r : dfslab::rate_table(max_n, dfslab::parse_rate_model(model))) {
      out.append(py::make_tuple(r.n, to_python_int(r.dim), r.rate, r.asymptote));
    }
    return out;
  }, py::arg("max_n"), py::arg("model"));
  m.def(
      "run_sweep_csv",
      [](const std::string& config_yaml, unsigned threads) {
        dfslab::ExperimentConfig cfg = dfslab::parse_experiment_config(config_yaml, "<python>");
        if (threads > 0) cfg.threads = threads;
        dfslab::SweepResult r;
        {
          py::gil_scoped_release release;
          r = dfslab::run_sweep(cfg);
        }
        return dfslab::to_csv(r);
      },
      py::arg("config_yaml"), py::arg("threads") = 0,
      "Runs an experiment configuration given as YAML text and returns the CSV.");
}
