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
#include <filesystem>
#include <fstream>
#include <sstream>

#include "dfslab/cli.hpp"
#include "dfslab/errors.hpp"
#include "dfslab/harness.hpp"

namespace dfslab {
namespace {

// ----- Deutsch ---------------------------------------------------------------------------------

TEST(Deutsch, IdealCircuitIsExact) {
  for (bool encoded : {false, true}) {
    for (const DeutschRow& r : deutsch_demo(0.0, encoded)) {
      EXPECT_NEAR(r.misidentification, 0.0, 1e-12);
      EXPECT_NEAR(r.prob_outcome_0 + r.prob_outcome_1, 1.0, 1e-12);
      EXPECT_EQ(r.expected_outcome, r.constant ? 0 : 1);
    }
  }
}

TEST(Deutsch, UnencodedErrorEqualsDephasingProbability) {
  for (double p : {0.0, 0.1, 0.25, 0.5, 0.9, 1.0}) {
    const std::vector<DeutschRow> rows = deutsch_demo(p, false);
    ASSERT_EQ(rows.size(), 4u);
    for (const DeutschRow& r : rows) EXPECT_NEAR(r.misidentification, p, 1e-12) << "p=" << p;
  }
}

TEST(Deutsch, EncodedRunIsImmune) {
  for (double p : {0.0, 0.25, 0.5, 1.0}) {
    for (const DeutschRow& r : deutsch_demo(p, true)) {
      EXPECT_NEAR(r.misidentification, 0.0, 1e-12) << "p=" << p;
      EXPECT_NEAR(r.prob_outcome_0 + r.prob_outcome_1, 1.0, 1e-12);
    }
  }
  EXPECT_THROW((void)deutsch_demo(1.5, true), PreconditionError);
}

// ----- rates -----------------------------------------------------------------------------------

TEST(Rates, DephasingDimensionsAndAsymptote) {
  const std::vector<RateRow> rows = rate_table(8, RateModel::Dephasing);
  ASSERT_EQ(rows.size(), 8u);
  const int expected[] = {1, 2, 3, 6, 10, 20, 35, 70};
  for (std::size_t k = 0; k < rows.size(); ++k) {
    EXPECT_EQ(rows[k].n, k + 1);
    EXPECT_EQ(rows[k].dim, Count(expected[k]));
    EXPECT_NEAR(rows[k].rate, std::log2(expected[k]) / static_cast<double>(k + 1), 1e-14);
  }
  EXPECT_NEAR(rows[7].asymptote, 1.0 - 0.5 * 3.0 / 8.0, 1e-15);
}

TEST(Rates, DecoherenceDimensions) {
  const std::vector<RateRow> rows = rate_table(12, RateModel::Decoherence);
  ASSERT_EQ(rows.size(), 6u);
  const int expected[] = {1, 2, 5, 14, 42, 132};  // Catalan numbers
  for (std::size_t k = 0; k < rows.size(); ++k) {
    EXPECT_EQ(rows[k].n, 2 * (k + 1));
    EXPECT_EQ(rows[k].dim, Count(expected[k]));
  }
}

TEST(Rates, LargeNApproachesOne) {
  const std::vector<RateRow> rows = rate_table(1024, RateModel::Decoherence);
  const RateRow& last = rows.back();
  EXPECT_EQ(last.n, 1024u);
  EXPECT_GT(last.rate, 0.98);
  EXPECT_NEAR(last.rate, last.asymptote, 0.01);
  EXPECT_NEAR(log2_count(Count(1) << 700), 700.0, 1e-12);
  EXPECT_THROW((void)rate_table(2000, RateModel::Dephasing), PreconditionError);
  EXPECT_THROW((void)parse_rate_model("thermal"), PreconditionError);
}

// ----- experiment configuration ------------------------------------------------------------------

const char* kXy4Config = R"(experiment: xy4
model:
  template: general
  n_qubits: 1
  bath_dim: 4
  seed: 42
grid:
  tau: {pow2_from: -9, pow2_to: -6}
)";

TEST(ExperimentConfig, ParsesGridsAndDefaults) {
  const ExperimentConfig cfg = parse_experiment_config(kXy4Config);
  EXPECT_EQ(cfg.experiment, ExperimentKind::Xy4);
  ASSERT_EQ(cfg.tau.size(), 4u);
  EXPECT_EQ(cfg.tau.front(), std::ldexp(1.0, -9));
  EXPECT_EQ(cfg.threads, 1u);
  EXPECT_EQ(cfg.group, "auto");

  const ExperimentConfig rp = parse_experiment_config(
      "experiment: real_pulse\nmodel: {template: pure_dephasing, n_qubits: 1, seed: 1}\n"
      "grid: {tau: 0.1, delta: {log10_from: -4, log10_to: -2, count: 3}}\n");
  ASSERT_EQ(rp.delta.size(), 3u);
  EXPECT_NEAR(rp.delta[1], 1e-3, 1e-18);
}

ConfigError config_error(const std::string& text) {
  try {
    (void)parse_experiment_config(text, "exp.yaml");
  } catch (const ConfigError& e) {
    return e;
  }
  ADD_FAILURE() << "accepted:\n" << text;
  return ConfigError("none");
}

TEST(ExperimentConfig, RejectsInvalidInput) {
  const std::string model = "model: {template: general, n_qubits: 1, seed: 1}\n";
  EXPECT_EQ(config_error("experiment: warp\n" + model + "grid: {tau: 0.1}\n").field(), "experiment");
  EXPECT_EQ(config_error("experiment: cdd\n" + model + "grid: {tau: 0.1}\n").field(), "m");
  EXPECT_EQ(config_error("experiment: cdd\n" + model + "grid: {tau: 0.1, m: [1, 5]}\n").field(), "m");
  EXPECT_EQ(config_error("experiment: xy4\n" + model + "grid: {tau: []}\n").field(), "tau");
  EXPECT_EQ(config_error("experiment: xy4\n" + model + "grid: {tau: -1}\n").field(), "tau");
  EXPECT_EQ(config_error("experiment: xy4\n" + model + "grid: {tau: 0.1}\nthreads: 0\n").field(),
            "threads");
  EXPECT_EQ(config_error("experiment: xy4\n" + model + "grid: {tau: 0.1}\ncolour: red\n").field(),
            "colour");
  EXPECT_EQ(config_error("experiment: xy4\ngrid: {tau: 0.1}\n").field(), "model");
  EXPECT_EQ(config_error("experiment: hybrid\n" + model + "grid: {tau: 0.1}\n").field(), "n_qubits");
  EXPECT_EQ(config_error("experiment: real_pulse\n" + model + "grid: {tau: [0.1, 0.2], delta: 0.01}\n")
                .field(),
            "tau");
  const ConfigError e = config_error("experiment: xy4\n" + model + "grid:\n  tau: oops\n");
  EXPECT_EQ(e.line(), 3);
  EXPECT_NE(std::string(e.what()).find("exp.yaml:4"), std::string::npos) << e.what();
  EXPECT_THROW((void)load_experiment_config("/nonexistent.yaml"), ConfigError);
}

TEST(ExperimentConfig, HashIgnoresOutputAndThreads) {
  ExperimentConfig a = parse_experiment_config(kXy4Config);
  ExperimentConfig b = a;
  b.threads = 4;
  b.output = "elsewhere.csv";
  EXPECT_EQ(canonical_text(a), canonical_text(b));
  b.tau.push_back(0.5);
  EXPECT_NE(fnv1a64(canonical_text(a)), fnv1a64(canonical_text(b)));
  // Reference FNV-1a values.
  EXPECT_EQ(fnv1a64(""), 0xcbf29ce484222325ULL);
  EXPECT_EQ(fnv1a64("a"), 0xaf63dc4c8601ec8cULL);
}

// ----- sweeps ----------------------------------------------------------------------------------

TEST(Sweep, CsvIsIndependentOfThreadCount) {
  ExperimentConfig cfg = parse_experiment_config(
      "experiment: cdd\nmodel: {template: general, n_qubits: 1, bath_dim: 4, seed: 42}\n"
      "grid: {tau: {pow2_from: -7, pow2_to: -4}, m: [1, 2]}\n");
  const std::string one = to_csv(run_sweep(cfg));
  cfg.threads = 3;
  const std::string three = to_csv(run_sweep(cfg));
  EXPECT_EQ(one, three);
  EXPECT_EQ(one, to_csv(run_sweep(cfg)));

  std::istringstream lines(one);
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line, "# dfslab sweep");
  std::getline(lines, line);
  EXPECT_EQ(line, "# experiment=cdd");
  std::getline(lines, line);
  EXPECT_EQ(line.rfind("# config_hash=", 0), 0u);
  EXPECT_EQ(line.size(), std::string("# config_hash=").size() + 16);
  std::getline(lines, line);
  EXPECT_EQ(line, "# seed=42");
  std::getline(lines, line);
  EXPECT_EQ(line, "# version=" + version());
  std::getline(lines, line);
  EXPECT_EQ(line, "m_or_tau,system_error,bath_distance,T_total,seed");
  std::getline(lines, line);
  EXPECT_EQ(line, "# level=1");
  EXPECT_NE(one.find("# level=2"), std::string::npos);
  EXPECT_NE(one.find("# slope error_phase="), std::string::npos);
}

TEST(Sweep, SlopeFootersMatchTheExpectedOrders) {
  const SweepResult r = run_sweep(parse_experiment_config(
      "experiment: cdd\nmodel: {template: general, n_qubits: 1, bath_dim: 4, seed: 42}\n"
      "grid: {tau: {pow2_from: -7, pow2_to: -4}, m: [1, 2]}\n"));
  ASSERT_EQ(r.sections.size(), 2u);
  ASSERT_TRUE(r.sections[0].slope.has_value());
  EXPECT_NEAR(r.sections[0].slope->slope, 2.0, 0.15);
  EXPECT_NEAR(r.sections[1].slope->slope, 3.0, 0.2);
  EXPECT_EQ(r.row_count(), 8u);
}

TEST(Sweep, DeutschRows) {
  const SweepResult r =
      run_sweep(parse_experiment_config("experiment: deutsch\ngrid: {p: [0.25]}\nthreads: 2\n"));
  EXPECT_EQ(r.columns.front(), "p");
  ASSERT_EQ(r.row_count(), 8u);
  const auto& rows = r.sections[0].rows;
  EXPECT_EQ(rows[0][2], "0");
  EXPECT_NEAR(std::stod(rows[0][3]), 0.25, 1e-12);
  EXPECT_EQ(rows[4][2], "1");
  EXPECT_NEAR(std::stod(rows[4][3]), 0.0, 1e-12);
}

// ----- command line ----------------------------------------------------------------------------

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli_main(args, out, err);
  return {code, out.str(), err.str()};
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run_cli({"--help"}).code, kExitOk);
  EXPECT_EQ(run_cli({}).code, kExitUsage);
  EXPECT_EQ(run_cli({"frobnicate"}).code, kExitUsage);
  EXPECT_EQ(run_cli({"rates", "--model", "thermal", "--max-n", "4"}).code, kExitUsage);
  EXPECT_EQ(run_cli({"sweep", "--config", "/nonexistent.yaml"}).code, kExitUsage);
}

TEST(Cli, DeutschAndRates) {
  const CliRun d = run_cli({"--format", "csv", "deutsch", "--p", "0.5"});
  ASSERT_EQ(d.code, kExitOk) << d.err;
  EXPECT_NE(d.out.find("0.5"), std::string::npos);
  const CliRun r = run_cli({"rates", "--model", "dephasing", "--max-n", "4", "--format", "csv"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("4,6,"), std::string::npos) << r.out;
}

TEST(Cli, DecomposeAndBound) {
  const CliRun d = run_cli({"decompose", "--group", "collective_pauli", "--n", "4"});
  ASSERT_EQ(d.code, kExitOk) << d.err;
  EXPECT_NE(d.out.find("(4,1),(4,1),(4,1),(4,1)"), std::string::npos) << d.out;
  const CliRun b = run_cli({"bound", "--J", "0.5", "--beta", "1", "--tau", "0.015625", "--m-max", "4"});
  ASSERT_EQ(b.code, kExitOk) << b.err;
  EXPECT_NE(b.out.find("m_opt"), std::string::npos) << b.out;
}

TEST(Cli, BuildAndCheckCode) {
  const std::filesystem::path dir = std::filesystem::temp_directory_path() / "dfslab_cli_test";
  std::filesystem::create_directories(dir);
  const std::string code_path = (dir / "four.code").string();
  const CliRun b = run_cli({"build-code", "--kind", "four-qubit", "--out", code_path});
  ASSERT_EQ(b.code, kExitOk) << b.err;
  std::ofstream(dir / "model.yaml")
      << "template: collective_decoherence\nn_qubits: 4\nbath_dim: 2\nseed: 3\n";
  const CliRun ok = run_cli({"check-dfs", "--code", code_path, "--model", (dir / "model.yaml").string()});
  EXPECT_EQ(ok.code, kExitOk) << ok.out << ok.err;
  std::ofstream(dir / "local.yaml")
      << "template: pure_dephasing\nn_qubits: 4\nbath_dim: 2\nseed: 3\n";
  const CliRun bad = run_cli({"check-dfs", "--code", code_path, "--model", (dir / "local.yaml").string()});
  EXPECT_EQ(bad.code, kExitFailure) << bad.out << bad.err;
  std::filesystem::remove_all(dir);
}

TEST(Cli, SweepWritesCsv) {
  const std::filesystem::path dir = std::filesystem::temp_directory_path() / "dfslab_cli_sweep";
  std::filesystem::create_directories(dir);
  std::ofstream(dir / "xy4.yaml") << kXy4Config;
  const std::string out = (dir / "out.csv").string();
  const CliRun r = run_cli({"--format", "csv", "--out", out, "sweep", "--config", (dir / "xy4.yaml").string(),
                            "--threads", "2"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  std::ifstream in(out);
  std::stringstream ss;
  ss << in.rdbuf();
  EXPECT_EQ(ss.str(), to_csv(run_sweep(parse_experiment_config(kXy4Config))));
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace dfslab
