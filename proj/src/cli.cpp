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

#include "dfslab/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "dfslab/algebra.hpp"
#include "dfslab/codes.hpp"
#include "dfslab/dd.hpp"
#include "dfslab/errors.hpp"
#include "dfslab/harness.hpp"
#include "dfslab/matrix_io.hpp"
#include "dfslab/model_config.hpp"

namespace dfslab {
namespace {

/// Rectangular output with leading '#' comment lines, rendered as CSV or an aligned text table.
struct Table {
  std::vector<std::string> comments;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

void render(std::ostream& os, const Table& t, const std::string& format) {
  for (const std::string& c : t.comments) os << "# " << c << "\n";
  if (format == "csv") {
    for (std::size_t c = 0; c < t.columns.size(); ++c) os << (c ? "," : "") << t.columns[c];
    os << "\n";
    for (const auto& row : t.rows) {
      for (std::size_t c = 0; c < row.size(); ++c) os << (c ? "," : "") << row[c];
      os << "\n";
    }
    return;
  }
  std::vector<std::size_t> width(t.columns.size(), 0);
  for (std::size_t c = 0; c < t.columns.size(); ++c) width[c] = t.columns[c].size();
  for (const auto& row : t.rows) {
    for (std::size_t c = 0; c < row.size() && c < width.size(); ++c) {
      width[c] = std::max(width[c], row[c].size());
    }
  }
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t c = 0; c < cells.size(); ++c) {
      os << (c ? "  " : "") << std::left << std::setw(static_cast<int>(width[c])) << cells[c];
    }
    os << "\n";
  };
  line(t.columns);
  for (const auto& row : t.rows) line(row);
}

std::string yes_no(bool b) { return b ? "true" : "false"; }

std::string format_block_list(const AlgebraDecomposition& d) {
  std::string s;
  for (const AlgebraBlock& b : d.blocks) {
    s += (s.empty() ? "" : ",") + ("(" + std::to_string(b.n) + "," + std::to_string(b.d) + ")");
  }
  return s;
}

NamedGroup named_group(const std::string& name, std::size_t n) {
  if (name == "klein") return klein_group();
  if (name == "collective_pauli") return collective_pauli_group(n);
  if (name == "trivial") return trivial_group(Eigen::Index{1} << n);
  throw PreconditionError("unknown group '" + name + "' (expected klein, collective_pauli, trivial)");
}

NamedGroup group_from_file(const std::string& path) {
  NamedGroup g;
  std::size_t k = 0;
  for (NamedMatrix& m : read_matrices_file(path)) {
    g.names.push_back(m.name.empty() ? "g" + std::to_string(k) : m.name);
    g.elements.push_back(std::move(m.matrix));
    ++k;
  }
  return g;
}

struct GlobalOptions {
  std::optional<std::uint64_t> seed;
  double tol = 1e-9;
  std::string format = "text";
  std::string out_path;
};

class Runner {
 public:
  Runner(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

  int run(const std::vector<std::string>& args);

 private:
  std::ostream& sink() { return file_ ? *file_ : out_; }
  void open_output() {
    if (!g_.out_path.empty()) {
      file_ = std::make_unique<std::ofstream>(g_.out_path, std::ios::binary);
      if (!*file_) throw ConfigError(g_.out_path, -1, -1, "out", "cannot open output file");
    }
  }

  int cmd_deutsch();
  int cmd_enumerate();
  int cmd_build_code();
  int cmd_check_dfs();
  int cmd_decompose();
  int cmd_sequence(bool concatenated);
  int cmd_sweep();
  int cmd_rates();
  int cmd_bound();

  std::ostream& out_;
  std::ostream& err_;
  std::unique_ptr<std::ofstream> file_;
  GlobalOptions g_;

  // deutsch
  double p_ = 0.25;
  bool encoded_ = false;
  // shared sizes
  std::size_t n_ = 0;
  // build-code
  std::string kind_;
  int cz_ = 0;
  bool have_cz_ = false;
  // check-dfs
  std::string code_path_;
  std::string model_path_;
  std::string kraus_path_;
  // decompose
  std::string template_;
  std::string generators_path_;
  std::string group_name_;
  // symmetrize / cdd
  std::string group_path_;
  double tau_ = 0.01;
  int level_ = 1;
  // sweep
  std::string config_path_;
  unsigned threads_ = 0;
  // rates
  std::string rate_model_;
  std::size_t max_n_ = 0;
  // bound
  double J_ = 0.0;
  double beta_ = 0.0;
  double total_time_ = 0.0;
  int m_max_ = 6;
};

int Runner::run(const std::vector<std::string>& args) {
  CLI::App app{"dfslab: decoherence-free subspaces, noiseless subsystems and dynamical decoupling"};
  app.set_version_flag("--version", version());
  app.require_subcommand(1);
  app.fallthrough();  // global options may also follow the subcommand
  app.add_option("--seed", g_.seed, "Seed for randomized steps (overrides model seeds)");
  app.add_option("--tol", g_.tol, "Tolerance for validation checks")->check(CLI::PositiveNumber);
  app.add_option("--format", g_.format, "Output format")->check(CLI::IsMember({"csv", "text"}));
  app.add_option("--out", g_.out_path, "Write output to this file instead of stdout");

  auto* deutsch = app.add_subcommand("deutsch", "Deutsch's algorithm under dephasing");
  deutsch->add_option("--p", p_, "Dephasing probability")->check(CLI::Range(0.0, 1.0));
  deutsch->add_flag("--encoded", encoded_, "Store the query qubit in the two-qubit DFS");

  auto* enumerate = app.add_subcommand("enumerate-dfs", "Collective-dephasing DFS of n qubits");
  enumerate->add_option("--n", n_, "Number of qubits")->required()->check(CLI::Range(1, 12));

  auto* build = app.add_subcommand("build-code", "Write a code space in the code text format");
  build->add_option("--kind", kind_, "Code family")
      ->required()
      ->check(CLI::IsMember({"dephasing", "pairwise", "four-qubit", "three-qubit-ns", "even-weight"}));
  build->add_option("--n", n_, "Qubits (dephasing, even-weight) or pairs (pairwise)");
  build->add_option("--cz", cz_, "S_z eigenvalue c_z for the dephasing family");

  auto* check = app.add_subcommand("check-dfs", "Check a code against a model or Kraus channel");
  check->add_option("--code", code_path_, "Code file")->required()->check(CLI::ExistingFile);
  auto* model_opt = check->add_option("--model", model_path_, "Model description (YAML)")->check(CLI::ExistingFile);
  auto* kraus_opt = check->add_option("--kraus", kraus_path_, "Kraus operators (matrix file)")->check(CLI::ExistingFile);
  model_opt->excludes(kraus_opt);

  auto* decomp = app.add_subcommand("decompose", "Block structure of an interaction algebra");
  auto* t_opt = decomp->add_option("--model", template_, "Coupling template")
                    ->check(CLI::IsMember({"collective_decoherence", "collective_dephasing",
                                           "pure_dephasing", "linear_independent_baths"}));
  auto* gen_opt = decomp->add_option("--generators", generators_path_, "Generator matrix file")->check(CLI::ExistingFile);
  auto* grp_opt = decomp->add_option("--group", group_name_, "Named group whose elements generate the algebra")
                      ->check(CLI::IsMember({"klein", "collective_pauli"}));
  decomp->add_option("--n", n_, "Number of qubits")->check(CLI::Range(1, 5));
  t_opt->excludes(gen_opt)->excludes(grp_opt);
  gen_opt->excludes(grp_opt);

  auto add_sequence_options = [&](CLI::App* sub) {
    auto* g = sub->add_option("--group", group_name_, "Named group")
                  ->check(CLI::IsMember({"klein", "collective_pauli", "trivial"}));
    auto* gf = sub->add_option("--group-file", group_path_, "Group elements (matrix file, identity first)")
                   ->check(CLI::ExistingFile);
    g->excludes(gf);
    sub->add_option("--n", n_, "Number of qubits for named groups")->check(CLI::Range(1, 6));
    sub->add_option("--tau", tau_, "Free-evolution duration")->check(CLI::NonNegativeNumber);
    sub->add_option("--model", model_path_, "Model description; adds the decoupling-error report")
        ->check(CLI::ExistingFile);
  };
  auto* sym = app.add_subcommand("symmetrize", "Group symmetrization sequence");
  add_sequence_options(sym);
  auto* cddc = app.add_subcommand("cdd", "Concatenated decoupling sequence");
  add_sequence_options(cddc);
  cddc->add_option("--level", level_, "Concatenation level m")->check(CLI::Range(1, 6));

  auto* sweep = app.add_subcommand("sweep", "Run an experiment configuration");
  sweep->add_option("--config", config_path_, "Experiment configuration (YAML)")->required()->check(CLI::ExistingFile);
  sweep->add_option("--threads", threads_, "Worker threads (overrides the config)")->check(CLI::Range(1, 256));

  auto* rates = app.add_subcommand("rates", "Code dimensions and rates");
  rates->add_option("--model", rate_model_, "Noise model")->required()->check(CLI::IsMember({"dephasing", "decoherence"}));
  rates->add_option("--max-n", max_n_, "Largest N")->required()->check(CLI::Range(1, 1024));

  auto* bound = app.add_subcommand("bound", "CDD error-phase bound and optimal level");
  bound->add_option("--J", J_, "System-bath coupling strength")->required();
  bound->add_option("--beta", beta_, "Bath strength")->required();
  bound->add_option("--tau", tau_, "Pulse interval")->required();
  bound->add_option("--m-max", m_max_, "Largest level")->check(CLI::Range(1, 64));
  bound->add_option("--total-time", total_time_, "Also tabulate the fixed total time variant");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out_, err_);
    return code == 0 ? kExitOk : kExitUsage;
  }

  open_output();
  if (deutsch->parsed()) return cmd_deutsch();
  if (enumerate->parsed()) return cmd_enumerate();
  if (build->parsed()) {
    have_cz_ = build->count("--cz") > 0;
    return cmd_build_code();
  }
  if (check->parsed()) return cmd_check_dfs();
  if (decomp->parsed()) return cmd_decompose();
  if (sym->parsed()) return cmd_sequence(false);
  if (cddc->parsed()) return cmd_sequence(true);
  if (sweep->parsed()) return cmd_sweep();
  if (rates->parsed()) return cmd_rates();
  if (bound->parsed()) return cmd_bound();
  return kExitUsage;
}

int Runner::cmd_deutsch() {
  Table t;
  t.comments.push_back(std::string("deutsch p=") + format_real(p_) + " encoded=" + yes_no(encoded_));
  t.columns = {"function", "constant", "expected_outcome", "prob_outcome_0", "prob_outcome_1",
               "misidentification"};
  for (const DeutschRow& r : deutsch_demo(p_, encoded_)) {
    t.rows.push_back({"f" + std::to_string(r.function), yes_no(r.constant),
                      std::to_string(r.expected_outcome), format_real(r.prob_outcome_0),
                      format_real(r.prob_outcome_1), format_real(r.misidentification)});
  }
  render(sink(), t, g_.format);
  return kExitOk;
}

int Runner::cmd_enumerate() {
  Table t;
  t.comments.push_back("collective dephasing DFS, n=" + std::to_string(n_));
  t.columns = {"c_z", "dim", "basis"};
  for (const CodeSpace& c : dephasing_dfs_enumerate(n_)) {
    std::string basis;
    for (Eigen::Index k = 0; k < c.dim(); ++k) {
      Eigen::Index idx = 0;
      c.isometry().col(k).cwiseAbs().maxCoeff(&idx);
      std::string bits;
      for (std::size_t q = 0; q < n_; ++q) bits += ((idx >> (n_ - 1 - q)) & 1) ? '1' : '0';
      basis += (basis.empty() ? "" : " ") + bits;
    }
    t.rows.push_back({std::to_string(*c.labels().front().c_z), std::to_string(c.dim()), basis});
  }
  render(sink(), t, g_.format);
  return kExitOk;
}

int Runner::cmd_build_code() {
  auto need_n = [&](const char* what) {
    if (n_ == 0) throw PreconditionError(std::string("build-code --kind ") + what + " needs --n");
  };
  std::optional<CodeSpace> code;
  if (kind_ == "dephasing") {
    need_n("dephasing");
    if (!have_cz_) throw PreconditionError("build-code --kind dephasing needs --cz");
    for (CodeSpace& c : dephasing_dfs_enumerate(n_)) {
      if (*c.labels().front().c_z == cz_) code.emplace(std::move(c));
    }
    if (!code) throw PreconditionError("no dephasing DFS with c_z=" + std::to_string(cz_));
  } else if (kind_ == "pairwise") {
    need_n("pairwise");
    code.emplace(pairwise_code(n_));
  } else if (kind_ == "four-qubit") {
    code.emplace(four_qubit_dfs());
  } else if (kind_ == "three-qubit-ns") {
    code.emplace(three_qubit_ns_code().code);
  } else {
    need_n("even-weight");
    code.emplace(even_weight_stabilized_code(n_));
  }
  write_code_space(sink(), *code);
  return kExitOk;
}

int Runner::cmd_check_dfs() {
  const CodeSpace code = read_code_space_file(code_path_);
  Table t;
  t.columns = {"term", "value", "residual"};
  bool ok = false;
  if (!model_path_.empty()) {
    ModelSpec spec = load_model_spec(model_path_);
    if (g_.seed) spec.seed = *g_.seed;
    const HamiltonianModel model = build_model(spec);
    const HamiltonianDfsReport r = dfs_check_hamiltonian(model, code, g_.tol);
    ok = r.ok;
    for (std::size_t a = 0; a < r.coupling_eigenvalues.size(); ++a) {
      const Complex c = r.coupling_eigenvalues[a];
      t.rows.push_back({model.couplings()[a].label,
                        format_real(c.real()) + (c.imag() < 0 ? "-" : "+") +
                            format_real(std::abs(c.imag())) + "i",
                        format_real(r.coupling_residuals[a])});
    }
    t.rows.push_back({"system_leakage", "", format_real(r.system_leakage)});
  } else if (!kraus_path_.empty()) {
    std::vector<ComplexMatrix> ops;
    for (NamedMatrix& m : read_matrices_file(kraus_path_)) ops.push_back(std::move(m.matrix));
    const KrausDfsReport r = dfs_check_kraus(KrausChannel(std::move(ops)), code, g_.tol);
    ok = r.ok;
    for (std::size_t a = 0; a < r.g.size(); ++a) {
      const Complex g = r.g[a];
      t.rows.push_back({"K" + std::to_string(a),
                        format_real(g.real()) + (g.imag() < 0 ? "-" : "+") +
                            format_real(std::abs(g.imag())) + "i",
                        format_real(std::max(r.leakage_residuals[a], r.block_residuals[a]))});
    }
    t.rows.push_back({"sum_g_squared", format_real(r.g_norm_sq), ""});
  } else {
    throw PreconditionError("check-dfs needs --model or --kraus");
  }
  t.comments.push_back(std::string("dfs ") + (ok ? "ok" : "violated") + " tol=" + format_real(g_.tol));
  render(sink(), t, g_.format);
  if (!ok) err_ << "check-dfs: the code is not decoherence-free for this noise\n";
  return ok ? kExitOk : kExitFailure;
}

int Runner::cmd_decompose() {
  std::vector<ComplexMatrix> gens;
  std::string what;
  if (!generators_path_.empty()) {
    for (NamedMatrix& m : read_matrices_file(generators_path_)) gens.push_back(std::move(m.matrix));
    what = generators_path_;
  } else if (!group_name_.empty()) {
    if (n_ == 0) throw PreconditionError("decompose --group needs --n");
    gens = named_group(group_name_, n_).elements;
    what = group_name_ + " n=" + std::to_string(n_);
  } else if (!template_.empty()) {
    if (n_ == 0) throw PreconditionError("decompose --model needs --n");
    ModelSpec spec;
    spec.model_template = parse_template(template_);
    spec.n_qubits = n_;
    spec.bath_dim = 1;
    const HamiltonianModel model = build_model(spec);
    for (const Coupling& c : model.couplings()) gens.push_back(c.system);
    what = template_ + " n=" + std::to_string(n_);
  } else {
    throw PreconditionError("decompose needs --model, --generators or --group");
  }
  const AlgebraDecomposition d = decompose(gens, g_.seed.value_or(0));
  Table t;
  t.comments.push_back("decompose " + what);
  t.comments.push_back("blocks " + format_block_list(d));
  t.comments.push_back("structure_residual " + format_real(d.structure_residual));
  t.columns = {"block", "n_J", "d_J", "offset"};
  for (std::size_t j = 0; j < d.blocks.size(); ++j) {
    t.rows.push_back({std::to_string(j), std::to_string(d.blocks[j].n),
                      std::to_string(d.blocks[j].d), std::to_string(d.block_offsets[j])});
  }
  render(sink(), t, g_.format);
  return kExitOk;
}

int Runner::cmd_sequence(bool concatenated) {
  NamedGroup group;
  if (!group_path_.empty()) {
    group = group_from_file(group_path_);
  } else {
    const std::string name = group_name_.empty() ? "klein" : group_name_;
    if (name != "klein" && n_ == 0) throw PreconditionError("named group '" + name + "' needs --n");
    group = named_group(name, n_);
  }
  const PulseSequence seq = concatenated ? cdd(group, level_, tau_) : symmetrize(group, tau_);
  std::ostream& os = sink();
  os << "# pattern " << seq.pattern() << "\n";
  os << "# free_segments " << seq.free_segments() << "\n";
  os << "# total_duration " << format_real(seq.total_duration()) << "\n";
  if (!model_path_.empty()) {
    ModelSpec spec = load_model_spec(model_path_);
    if (g_.seed) spec.seed = *g_.seed;
    const HamiltonianModel model = build_model(spec);
    const DecouplingErrorReport r = decoupling_error(simulate(seq, model), seq.total_duration(),
                                                     model.n_qubits(), model.bath_dim());
    os << "# system_error " << format_real(r.system_error) << "\n";
    os << "# error_phase " << format_real(r.error_phase) << "\n";
    os << "# bath_distance " << format_real(r.bath_distance) << "\n";
  }
  write_sequence(os, seq);
  return kExitOk;
}

int Runner::cmd_sweep() {
  ExperimentConfig cfg = load_experiment_config(config_path_);
  if (threads_ > 0) cfg.threads = threads_;
  if (g_.seed && cfg.model) cfg.model->seed = *g_.seed;
  const SweepResult result = run_sweep(cfg);
  std::unique_ptr<std::ofstream> cfg_file;
  std::ostream* os = &sink();
  if (g_.out_path.empty() && !cfg.output.empty()) {
    cfg_file = std::make_unique<std::ofstream>(cfg.output, std::ios::binary);
    if (!*cfg_file) throw ConfigError(cfg.source, -1, -1, "output", "cannot open '" + cfg.output + "'");
    os = cfg_file.get();
  }
  if (g_.format == "csv") {
    write_csv(*os, result);
  } else {
    Table t;
    t.comments.push_back("experiment=" + result.experiment + " seed=" + std::to_string(result.seed));
    t.columns = result.columns;
    t.columns.insert(t.columns.begin(), "section");
    for (const SweepSection& s : result.sections) {
      for (const auto& row : s.rows) {
        std::vector<std::string> r = row;
        r.insert(r.begin(), s.label.empty() ? "-" : s.label);
        t.rows.push_back(std::move(r));
      }
      if (s.slope) {
        t.comments.push_back("slope " + (s.label.empty() ? std::string("all") : s.label) + " " +
                             format_real(s.slope->slope));
      }
    }
    render(*os, t, "text");
  }
  return kExitOk;
}

int Runner::cmd_rates() {
  const RateModel model = parse_rate_model(rate_model_);
  Table t;
  t.comments.push_back("rates model=" + rate_model_ + " max_n=" + std::to_string(max_n_));
  t.columns = {"N", model == RateModel::Dephasing ? "max_dim" : "d_N", "rate", "asymptote"};
  for (const RateRow& r : rate_table(max_n_, model)) {
    t.rows.push_back({std::to_string(r.n), r.dim.str(), format_real(r.rate), format_real(r.asymptote)});
  }
  render(sink(), t, g_.format);
  return kExitOk;
}

int Runner::cmd_bound() {
  const CddBoundTable b = cdd_bound_and_optimum(J_, beta_, tau_, m_max_);
  Table t;
  t.comments.push_back("m_opt " + format_real(b.m_opt));
  t.comments.push_back("m_opt_floor " + std::to_string(b.m_opt_floor));
  t.comments.push_back(b.concatenate ? std::string("concatenate") : std::string("do not concatenate"));
  t.columns = {"m", "T_m", "phi_bound", "log10_phi_bound"};
  for (const CddBoundRow& r : b.rows) {
    t.rows.push_back({std::to_string(r.m), format_real(r.total_time), format_real(r.phi_bound),
                      format_real(r.log10_phi_bound)});
  }
  render(sink(), t, g_.format);
  if (total_time_ > 0.0) {
    Table f;
    f.comments.push_back("fixed total time T=" + format_real(total_time_));
    f.columns = {"m", "bound", "two_pow_m_gt_betaT", "decreasing"};
    for (const FixedTimeBoundRow& r : cdd_fixed_time_bound(J_, beta_, total_time_, m_max_)) {
      f.rows.push_back({std::to_string(r.m), format_real(r.bound), yes_no(r.in_regime), yes_no(r.decreasing)});
    }
    render(sink(), f, g_.format);
  }
  return kExitOk;
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Runner runner(out, err);
  try {
    return runner.run(args);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}

int cli_main(int argc, char** argv) {
  std::vector<std::string> args;
  for (int k = 1; k < argc; ++k) args.emplace_back(argv[k]);
  return cli_main(args, std::cout, std::cerr);
}

}  // namespace dfslab
