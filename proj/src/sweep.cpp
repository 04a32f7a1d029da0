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

#include <atomic>
#include <cstdio>
#include <exception>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>

#include "dfslab/algebra.hpp"
#include "dfslab/errors.hpp"
#include "dfslab/harness.hpp"
#include "dfslab/matrix_io.hpp"

#ifndef DFSLAB_VERSION
#define DFSLAB_VERSION "0.0.0"
#endif

namespace dfslab {
namespace {

struct RowOutput {
  std::vector<std::string> cells;
  double x = 0.0;
  double error_phase = 0.0;
};

struct Task {
  std::size_t section = 0;
  std::size_t row = 0;
  std::function<RowOutput()> run;
};

NamedGroup pick_group(const ExperimentConfig& cfg, std::size_t n_qubits) {
  if (cfg.group == "klein" || (cfg.group == "auto" && n_qubits == 1)) return klein_group();
  return collective_pauli_group(n_qubits);
}

RowOutput dd_row(double x, const PulseSequence& seq, const HamiltonianModel& model,
                 std::uint64_t seed, const CodeSpace* code = nullptr) {
  const DecouplingErrorReport r = decoupling_error(simulate(seq, model), seq.total_duration(),
                                                   model.n_qubits(), model.bath_dim(), code);
  RowOutput out;
  out.cells = {format_real(x), format_real(r.system_error), format_real(r.bath_distance),
               format_real(r.total_time), std::to_string(seed)};
  out.x = x;
  out.error_phase = r.error_phase;
  return out;
}

void run_tasks(std::vector<Task>& tasks, std::vector<std::vector<RowOutput>>& results,
               unsigned threads) {
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&]() {
    for (;;) {
      const std::size_t k = next.fetch_add(1);
      if (k >= tasks.size()) return;
      try {
        results[tasks[k].section][tasks[k].row] = tasks[k].run();
      } catch (...) {
        const std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(tasks.size());
      }
    }
  };
  const unsigned count = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(tasks.size())));
  if (count == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < count; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace

std::string version() { return DFSLAB_VERSION; }

std::size_t SweepResult::row_count() const {
  std::size_t n = 0;
  for (const SweepSection& s : sections) n += s.rows.size();
  return n;
}

SweepResult run_sweep(const ExperimentConfig& cfg) {
  SweepResult result;
  result.experiment = experiment_name(cfg.experiment);
  result.config_hash = fnv1a64(canonical_text(cfg));
  result.seed = cfg.model ? cfg.model->seed : 0;
  result.version = version();
  result.columns = {"m_or_tau", "system_error", "bath_distance", "T_total", "seed"};

  std::vector<Task> tasks;
  std::vector<std::size_t> section_sizes;
  std::vector<std::string> labels;
  const std::uint64_t seed = result.seed;

  std::optional<HamiltonianModel> model;
  if (cfg.model) model.emplace(build_model(*cfg.model));
  const HamiltonianModel* mp = model ? &*model : nullptr;

  auto tau_section = [&](const std::string& label,
                         std::function<PulseSequence(double)> make_sequence,
                         std::optional<CodeSpace> code) {
    const std::size_t s = section_sizes.size();
    labels.push_back(label);
    section_sizes.push_back(cfg.tau.size());
    auto shared_code = std::make_shared<std::optional<CodeSpace>>(std::move(code));
    for (std::size_t k = 0; k < cfg.tau.size(); ++k) {
      const double tau = cfg.tau[k];
      tasks.push_back({s, k, [=]() {
                         const CodeSpace* c = shared_code->has_value() ? &shared_code->value() : nullptr;
                         return dd_row(tau, make_sequence(tau), *mp, seed, c);
                       }});
    }
  };

  switch (cfg.experiment) {
    case ExperimentKind::Free:
      tau_section("", [](double tau) {
        PulseSequence seq;
        seq.name = "free";
        seq.events.emplace_back(FreeEvent{tau});
        return seq;
      }, std::nullopt);
      break;
    case ExperimentKind::Xy4:
      tau_section("", [](double tau) { return xy4(tau); }, std::nullopt);
      break;
    case ExperimentKind::Symmetrize: {
      const NamedGroup group = pick_group(cfg, mp->n_qubits());
      tau_section("", [group](double tau) { return symmetrize(group, tau); }, std::nullopt);
      break;
    }
    case ExperimentKind::Cdd: {
      const NamedGroup group = pick_group(cfg, mp->n_qubits());
      for (int m : cfg.m) {
        tau_section("level=" + std::to_string(m),
                    [group, m](double tau) { return cdd(group, m, tau); }, std::nullopt);
      }
      break;
    }
    case ExperimentKind::Hybrid: {
      const HybridDdDfs h = hybrid_ddfs_two_qubit(1.0);
      tau_section("", [](double tau) { return hybrid_ddfs_two_qubit(tau).u3; }, h.code);
      break;
    }
    case ExperimentKind::RealPulse: {
      const double tau = cfg.tau.front();
      labels.push_back("tau=" + format_real(tau));
      section_sizes.push_back(cfg.delta.size());
      const std::string axis(mp->n_qubits(), 'X');
      for (std::size_t k = 0; k < cfg.delta.size(); ++k) {
        const double delta = cfg.delta[k];
        tasks.push_back({0, k, [=]() {
                           PulseSequence seq;
                           seq.name = "XfXf-real";
                           for (int r = 0; r < 2; ++r) {
                             seq.events.emplace_back(real_pauli_pulse(axis, delta));
                             seq.events.emplace_back(FreeEvent{tau});
                           }
                           return dd_row(delta, seq, *mp, seed);
                         }});
      }
      break;
    }
    case ExperimentKind::Deutsch: {
      result.columns = {"p", "function", "encoded", "misidentification", "seed"};
      labels.push_back("");
      section_sizes.push_back(cfg.p.size() * 8);
      for (std::size_t k = 0; k < cfg.p.size(); ++k) {
        for (int enc = 0; enc < 2; ++enc) {
          for (int f = 0; f < 4; ++f) {
            const double p = cfg.p[k];
            const std::size_t row = 8 * k + 4 * static_cast<std::size_t>(enc) + static_cast<std::size_t>(f);
            tasks.push_back({0, row, [=]() {
                               const DeutschRow r = deutsch_demo(p, enc == 1)[static_cast<std::size_t>(f)];
                               RowOutput out;
                               out.cells = {format_real(p), "f" + std::to_string(f), enc ? "1" : "0",
                                            format_real(r.misidentification), std::to_string(seed)};
                               out.x = p;
                               return out;
                             }});
          }
        }
      }
      break;
    }
  }

  std::vector<std::vector<RowOutput>> outputs(section_sizes.size());
  for (std::size_t s = 0; s < section_sizes.size(); ++s) outputs[s].resize(section_sizes[s]);
  run_tasks(tasks, outputs, cfg.threads);

  for (std::size_t s = 0; s < outputs.size(); ++s) {
    SweepSection section;
    section.label = labels[s];
    for (RowOutput& r : outputs[s]) {
      section.rows.push_back(std::move(r.cells));
      section.x.push_back(r.x);
      section.error_phase.push_back(r.error_phase);
    }
    if (cfg.experiment != ExperimentKind::Deutsch && section.x.size() >= 2) {
      try {
        section.slope = fit_loglog(section.x, section.error_phase);
      } catch (const PreconditionError&) {
        section.slope.reset();  // not enough points above the noise floor
      }
    }
    result.sections.push_back(std::move(section));
  }
  return result;
}

void write_csv(std::ostream& os, const SweepResult& result) {
  char hash[17];
  std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(result.config_hash));
  os << "# dfslab sweep\n";
  os << "# experiment=" << result.experiment << "\n";
  os << "# config_hash=" << hash << "\n";
  os << "# seed=" << result.seed << "\n";
  os << "# version=" << result.version << "\n";
  for (std::size_t c = 0; c < result.columns.size(); ++c) os << (c ? "," : "") << result.columns[c];
  os << "\n";
  for (const SweepSection& s : result.sections) {
    if (!s.label.empty()) os << "# " << s.label << "\n";
    for (const auto& row : s.rows) {
      for (std::size_t c = 0; c < row.size(); ++c) os << (c ? "," : "") << row[c];
      os << "\n";
    }
    if (s.slope) {
      os << "# slope error_phase=" << format_real(s.slope->slope)
         << " points=" << s.slope->points_used << (s.label.empty() ? "" : " " + s.label) << "\n";
    }
  }
}

std::string to_csv(const SweepResult& result) {
  std::ostringstream os;
  write_csv(os, result);
  return os.str();
}

}  // namespace dfslab
