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
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "dfslab/codes.hpp"
#include "dfslab/dd.hpp"
#include "dfslab/model_config.hpp"

namespace dfslab {

// ----- Deutsch's algorithm under dephasing ----------------------------------------------------

struct DeutschRow {
  int function = 0;        ///< 0: f=0, 1: f=1, 2: f=x, 3: f=not x
  bool constant = false;
  int expected_outcome = 0;     ///< 0 for constant functions, 1 for balanced ones
  double prob_outcome_0 = 0.0;  ///< probability of reading logical 0 on the first qubit
  double prob_outcome_1 = 0.0;
  double misidentification = 0.0;  ///< probability of the contradicting outcome
};

/// One-query Deutsch circuit with a dephasing channel after the first Hadamard layer.
/// Unencoded: 2 qubits, Kraus {sqrt(1-p) I, sqrt(p) Z (x) I}. Encoded: the query qubit is stored
/// in Span{|00>, |11>} of two physical qubits and the channel is {sqrt(1-p) III, sqrt(p) ZZI};
/// the logical Hadamard and oracle act as identity outside the code block.
[[nodiscard]] std::vector<DeutschRow> deutsch_demo(double p, bool encoded);

// ----- code rates -----------------------------------------------------------------------------

enum class RateModel { Dephasing, Decoherence };
[[nodiscard]] RateModel parse_rate_model(const std::string& name);

struct RateRow {
  std::size_t n = 0;
  Count dim;               ///< largest DFS dimension (dephasing) or d_N (decoherence)
  double rate = 0.0;       ///< log2(dim) / N
  double asymptote = 0.0;  ///< 1 - c log2(N) / N with c = 1/2 (dephasing) or 3/2 (decoherence)
};

/// Dephasing: every N in [1, max_n] with dim = C(N, floor(N/2)). Decoherence: even N in
/// [2, max_n] with d_N = N! / ((N/2)! (N/2 + 1)!). Requires max_n <= 1024.
[[nodiscard]] std::vector<RateRow> rate_table(std::size_t max_n, RateModel model);

/// log2 of a nonnegative exact integer (-inf for zero).
[[nodiscard]] double log2_count(const Count& x);

// ----- experiment configuration ---------------------------------------------------------------

enum class ExperimentKind { Free, Xy4, Symmetrize, Cdd, Hybrid, RealPulse, Deutsch };
[[nodiscard]] std::string experiment_name(ExperimentKind k);

struct ExperimentConfig {
  ExperimentKind experiment = ExperimentKind::Xy4;
  std::optional<ModelSpec> model;  ///< required by every experiment except deutsch
  std::vector<double> tau;
  std::vector<double> delta;
  std::vector<int> m;
  std::vector<double> p;
  std::string group = "auto";  ///< symmetrize/cdd group: auto, klein, collective_pauli
  std::string output;          ///< CSV path; empty means stdout
  unsigned threads = 1;
  std::string source = "<config>";
};

/// YAML experiment description. Grids accept explicit lists or generators:
///     tau: {pow2_from: -10, pow2_to: -5}            (2^k for each integer k)
///     delta: {log10_from: -4, log10_to: -2, count: 5}
[[nodiscard]] ExperimentConfig parse_experiment_config(const std::string& text,
                                                       const std::string& source = "<config>",
                                                       const std::string& base_dir = ".");
[[nodiscard]] ExperimentConfig load_experiment_config(const std::string& path);

/// Text that determines the sweep output (output path and thread count excluded).
[[nodiscard]] std::string canonical_text(const ExperimentConfig& cfg);
/// 64-bit FNV-1a hash.
[[nodiscard]] std::uint64_t fnv1a64(const std::string& text);

// ----- sweeps ---------------------------------------------------------------------------------

struct SweepSection {
  std::string label;  ///< e.g. "level=2"; empty for single-section sweeps
  std::vector<std::vector<std::string>> rows;
  std::vector<double> x;            ///< fitted abscissa (tau or delta)
  std::vector<double> error_phase;  ///< fitted ordinate
  std::optional<LogLogFit> slope;
};

struct SweepResult {
  std::string experiment;
  std::uint64_t config_hash = 0;
  std::uint64_t seed = 0;
  std::string version;
  std::vector<std::string> columns;
  std::vector<SweepSection> sections;

  [[nodiscard]] std::size_t row_count() const;
};

/// Runs every grid point (concurrently when threads > 1); rows follow the grid order.
[[nodiscard]] SweepResult run_sweep(const ExperimentConfig& cfg);
/// CSV with a '#' provenance header, one '# level=m' line per CDD section and '# slope' footers.
void write_csv(std::ostream& os, const SweepResult& result);
[[nodiscard]] std::string to_csv(const SweepResult& result);

/// Library version string.
[[nodiscard]] std::string version();

}  // namespace dfslab
