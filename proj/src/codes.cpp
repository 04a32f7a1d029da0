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

#include "dfslab/codes.hpp"

#include <bit>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <regex>
#include <sstream>

#include "dfslab/errors.hpp"
#include "dfslab/matrix_io.hpp"
#include "dfslab/pauli.hpp"

namespace dfslab {
// ----- labels ---------------------------------------------------------------------------------

std::string format_half_integer(int twice) {
  if (twice % 2 == 0) return std::to_string(twice / 2);
  return std::to_string(twice) + "/2";
}

CodeLabel CodeLabel::from_cz(int c_z) {
  CodeLabel l;
  l.text = "cz=" + std::to_string(c_z);
  l.c_z = c_z;
  return l;
}

CodeLabel CodeLabel::from_spin(const SpinLabel& s) {
  CodeLabel l;
  l.text = "J=" + format_half_integer(s.two_j) + ",lambda=" + std::to_string(s.lambda) +
           ",m=" + format_half_integer(s.two_m);
  l.spin = s;
  return l;
}

CodeLabel CodeLabel::named(std::string text) {
  CodeLabel l;
  l.text = std::move(text);
  return l;
}

CodeLabel CodeLabel::parse(const std::string& text) {
  static const std::regex cz_re(R"(cz=(-?\d+))");
  static const std::regex spin_re(R"(J=(\d+)(/2)?,lambda=(\d+),m=(-?\d+)(/2)?)");
  std::smatch m;
  if (std::regex_match(text, m, cz_re)) return from_cz(std::stoi(m[1]));
  if (std::regex_match(text, m, spin_re)) {
    SpinLabel s;
    s.two_j = m[2].matched ? std::stoi(m[1]) : 2 * std::stoi(m[1]);
    s.lambda = std::stoi(m[3]);
    s.two_m = m[5].matched ? std::stoi(m[4]) : 2 * std::stoi(m[4]);
    return from_spin(s);
  }
  return named(text);
}

// ----- CodeSpace ------------------------------------------------------------------------------

CodeSpace::CodeSpace(std::size_t n_qubits, ComplexMatrix isometry, std::vector<CodeLabel> labels,
                     double tol)
    : n_qubits_(n_qubits), isometry_(std::move(isometry)), labels_(std::move(labels)) {
  if (n_qubits_ == 0 || n_qubits_ > 12) throw PreconditionError("code n_qubits must be in [1, 12]");
  const auto d = static_cast<Eigen::Index>(std::size_t{1} << n_qubits_);
  if (isometry_.rows() != d) throw DimensionError("code isometry must have 2^n rows");
  if (isometry_.cols() == 0 || isometry_.cols() > d) throw DimensionError("invalid code dimension");
  if (labels_.empty()) {
    for (Eigen::Index k = 0; k < isometry_.cols(); ++k) {
      labels_.push_back(CodeLabel::named("col" + std::to_string(k)));
    }
  }
  if (static_cast<Eigen::Index>(labels_.size()) != isometry_.cols()) {
    throw DimensionError("code space needs one label per column");
  }
  if (max_abs_diff(isometry_.adjoint() * isometry_, identity(isometry_.cols())) > tol) {
    throw PreconditionError("code space columns are not orthonormal");
  }
}

void write_code_space(std::ostream& os, const CodeSpace& code) {
  os << "code " << code.n_qubits() << ' ' << code.dim() << '\n';
  for (const CodeLabel& l : code.labels()) os << "label " << l.text << '\n';
  write_matrix(os, code.isometry());
}

CodeSpace read_code_space(std::istream& is, const std::string& source) {
  std::string line;
  int line_no = -1;
  std::size_t n_qubits = 0;
  long dim = -1;
  std::vector<CodeLabel> labels;
  std::ostringstream rest;
  bool header_done = false;
  while (std::getline(is, line)) {
    ++line_no;
    if (header_done) {
      rest << line << '\n';
      continue;
    }
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key) || key.starts_with('#')) {
      rest << '\n';
      continue;
    }
    if (key == "code") {
      long n = 0;
      if (!(ls >> n >> dim) || n <= 0 || dim <= 0) {
        throw ConfigError(source, line_no, -1, "code", "expected 'code <n_qubits> <dim>'");
      }
      n_qubits = static_cast<std::size_t>(n);
      rest << '\n';
    } else if (key == "label") {
      std::string text;
      ls >> std::ws;
      std::getline(ls, text);
      labels.push_back(CodeLabel::parse(text));
      rest << '\n';
    } else {
      header_done = true;
      rest << line << '\n';
    }
  }
  if (n_qubits == 0) throw ConfigError(source, -1, -1, "code", "missing 'code' header line");
  std::istringstream body(rest.str());
  ComplexMatrix iso = read_matrix(body, source);
  if (iso.cols() != dim) throw ConfigError(source, -1, -1, "matrix", "column count differs from header");
  if (!labels.empty() && static_cast<long>(labels.size()) != dim) {
    throw ConfigError(source, -1, -1, "label", "label count differs from header");
  }
  // Text round trips lose at most a few ulps; accept a slightly looser orthonormality check.
  return CodeSpace(n_qubits, std::move(iso), std::move(labels), 1e-10);
}

CodeSpace read_code_space_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path, -1, -1, "", "cannot open file");
  return read_code_space(in, path);
}

// ----- collective spin ------------------------------------------------------------------------

CollectiveSpinOps collective_spin_ops(std::size_t n, bool half_spin) {
  if (n == 0 || n > 12) throw PreconditionError("collective_spin_ops: n must be in [1, 12]");
  const double f = half_spin ? 0.5 : 1.0;
  const auto d = static_cast<Eigen::Index>(std::size_t{1} << n);
  ComplexMatrix lower(2, 2);  // |1><0|
  lower << 0.0, 0.0, 1.0, 0.0;
  CollectiveSpinOps ops;
  ops.plus = ComplexMatrix::Zero(d, d);
  ops.z = ComplexMatrix::Zero(d, d);
  for (std::size_t q = 0; q < n; ++q) {
    ops.plus += f * embed_qubit_op(lower, q, n);
    ops.z += f * embed_qubit_op(pauli(Pauli::Z), q, n);
  }
  ops.minus = ops.plus.adjoint();
  ops.x = ops.plus + ops.minus;
  ops.y = Complex(0.0, 1.0) * (ops.plus - ops.minus);
  ops.s2 = ops.x * ops.x + ops.y * ops.y + ops.z * ops.z;
  return ops;
}

// ----- collective dephasing codes -------------------------------------------------------------

std::vector<CodeSpace> dephasing_dfs_enumerate(std::size_t n) {
  if (n == 0 || n > 12) throw PreconditionError("dephasing_dfs_enumerate: n must be in [1, 12]");
  const std::size_t d = std::size_t{1} << n;
  std::vector<CodeSpace> out;
  // c_z = #0 - #1 = n - 2w for Hamming weight w; decreasing c_z means increasing weight.
  for (std::size_t w = 0; w <= n; ++w) {
    std::vector<std::size_t> members;
    for (std::size_t s = 0; s < d; ++s) {
      if (static_cast<std::size_t>(std::popcount(s)) == w) members.push_back(s);
    }
    ComplexMatrix iso = ComplexMatrix::Zero(static_cast<Eigen::Index>(d),
                                            static_cast<Eigen::Index>(members.size()));
    const int c_z = static_cast<int>(n) - 2 * static_cast<int>(w);
    std::vector<CodeLabel> labels;
    for (std::size_t k = 0; k < members.size(); ++k) {
      iso(static_cast<Eigen::Index>(members[k]), static_cast<Eigen::Index>(k)) = 1.0;
      labels.push_back(CodeLabel::from_cz(c_z));
    }
    out.emplace_back(n, std::move(iso), std::move(labels));
  }
  return out;
}

CodeSpace pairwise_code(std::size_t n_pairs) {
  if (n_pairs == 0 || n_pairs > 6) throw PreconditionError("pairwise_code: n_pairs must be in [1, 6]");
  ComplexMatrix pair = ComplexMatrix::Zero(4, 2);
  pair(1, 0) = 1.0;  // |0_L> = |01>
  pair(2, 1) = 1.0;  // |1_L> = |10>
  ComplexMatrix iso = pair;
  for (std::size_t p = 1; p < n_pairs; ++p) iso = tensor(iso, pair);
  std::vector<CodeLabel> labels;
  for (Eigen::Index k = 0; k < iso.cols(); ++k) {
    std::string bits(n_pairs, '0');
    for (std::size_t p = 0; p < n_pairs; ++p) {
      if ((k >> (n_pairs - 1 - p)) & 1) bits[p] = '1';
    }
    labels.push_back(CodeLabel::named("L" + bits));
  }
  return CodeSpace(2 * n_pairs, std::move(iso), std::move(labels));
}

std::vector<PairLogicalOps> pairwise_logical_ops(std::size_t n_pairs) {
  if (n_pairs == 0 || n_pairs > 6) {
    throw PreconditionError("pairwise_logical_ops: n_pairs must be in [1, 6]");
  }
  const std::size_t n = 2 * n_pairs;
  std::vector<PairLogicalOps> out;
  for (std::size_t i = 0; i < n_pairs; ++i) {
    PairLogicalOps ops;
    ops.z = embed_qubit_op(pauli(Pauli::Z), 2 * i, n);
    ops.x = embed_qubit_op(pauli(Pauli::X), 2 * i, n) * embed_qubit_op(pauli(Pauli::X), 2 * i + 1, n);
    out.push_back(std::move(ops));
  }
  return out;
}

// ----- counting -------------------------------------------------------------------------------

Count bratteli_paths(std::size_t n, int two_j) {
  if (two_j < 0 || static_cast<std::size_t>(two_j) > n) return 0;
  if ((n - static_cast<std::size_t>(two_j)) % 2 != 0) return 0;
  // counts[k] = number of walks from the origin reaching 2J = k after the current qubit.
  std::vector<Count> counts(n + 2, 0);
  counts[0] = 1;
  for (std::size_t step = 0; step < n; ++step) {
    std::vector<Count> next(n + 2, 0);
    for (std::size_t k = 0; k <= step; ++k) {
      if (counts[k] == 0) continue;
      next[k + 1] += counts[k];
      if (k > 0) next[k - 1] += counts[k];
    }
    counts = std::move(next);
  }
  return counts[static_cast<std::size_t>(two_j)];
}

// ----- four-qubit DFS and exchange operators --------------------------------------------------

CodeSpace four_qubit_dfs() {
  const double r2 = std::sqrt(2.0);
  const ComplexVector s = (ket("01") - ket("10")) / r2;
  const ComplexVector tp = ket("00");
  const ComplexVector tm = ket("11");
  const ComplexVector t0 = (ket("01") + ket("10")) / r2;
  ComplexMatrix iso(16, 2);
  iso.col(0) = tensor(s, s);
  iso.col(1) = (tensor(tp, tm) + tensor(tm, tp) - tensor(t0, t0)) / std::sqrt(3.0);
  return CodeSpace(4, std::move(iso), {CodeLabel::named("0L"), CodeLabel::named("1L")});
}

ComplexMatrix exchange_op(std::size_t n, std::size_t i, std::size_t j) {
  if (n < 2 || n > 12) throw PreconditionError("exchange_op: n must be in [2, 12]");
  if (i < 1 || i >= j || j > n) {
    std::ostringstream os;
    os << "exchange_op: need 1 <= i < j <= n, got i=" << i << " j=" << j << " n=" << n;
    throw PreconditionError(os.str());
  }
  const std::size_t d = std::size_t{1} << n;
  const std::size_t bi = n - i;  // bit position of qubit i (qubit 1 is the most significant bit)
  const std::size_t bj = n - j;
  ComplexMatrix e = ComplexMatrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  for (std::size_t s = 0; s < d; ++s) {
    const std::size_t vi = (s >> bi) & 1;
    const std::size_t vj = (s >> bj) & 1;
    std::size_t t = s;
    if (vi != vj) t ^= (std::size_t{1} << bi) | (std::size_t{1} << bj);
    e(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(s)) = 1.0;
  }
  return e;
}

LogicalPaulis logical_paulis_4qubit() {
  LogicalPaulis ops;
  ops.z = -exchange_op(4, 1, 2);
  ops.x = (exchange_op(4, 2, 3) - exchange_op(4, 1, 3)) / std::sqrt(3.0);
  ops.y = Complex(0.0, 0.5) * commutator(ops.x, ops.z);
  return ops;
}

NoiselessSubsystemCode three_qubit_ns_code() {
  const SpinTowerBasis tower = spin_tower(3);
  ComplexMatrix iso(8, 4);
  std::vector<CodeLabel> labels;
  Eigen::Index col = 0;
  for (int lambda = 0; lambda < 2; ++lambda) {
    for (int two_m : {-1, 1}) {
      const SpinLabel l{1, lambda, two_m};
      iso.col(col++) = tower.state(l);
      labels.push_back(CodeLabel::from_spin(l));
    }
  }
  return {CodeSpace(3, std::move(iso), std::move(labels)), 2, 2};
}

// ----- stabilized codewords -------------------------------------------------------------------

CodeSpace even_weight_stabilized_code(std::size_t n) {
  if (n < 2 || n % 2 != 0 || n > 12) {
    throw PreconditionError("even_weight_stabilized_code: n must be even and in [2, 12]");
  }
  const std::size_t k = n - 2;
  const std::size_t count = std::size_t{1} << k;
  const std::size_t d = std::size_t{1} << n;
  const std::size_t all_ones = d - 1;
  ComplexMatrix iso = ComplexMatrix::Zero(static_cast<Eigen::Index>(d),
                                          static_cast<Eigen::Index>(count));
  std::vector<CodeLabel> labels;
  const double amp = 1.0 / std::sqrt(2.0);
  for (std::size_t b = 0; b < count; ++b) {
    const std::size_t parity = static_cast<std::size_t>(std::popcount(b)) & 1U;
    // Bit string r_1..r_n as an integer with r_1 most significant; r_1 = 0, r_n = parity(b),
    // r_{j+1} = b_j xor r_n with b_1 the most significant logical bit.
    std::size_t r = parity;
    for (std::size_t j = 1; j <= k; ++j) {
      const std::size_t bj = (b >> (k - j)) & 1U;
      r |= (bj ^ parity) << (n - 1 - j);
    }
    iso(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(b)) += amp;
    iso(static_cast<Eigen::Index>(r ^ all_ones), static_cast<Eigen::Index>(b)) += amp;
    std::string rbits(n, '0');
    for (std::size_t q = 0; q < n; ++q) {
      if ((r >> (n - 1 - q)) & 1U) rbits[q] = '1';
    }
    labels.push_back(CodeLabel::named("psi_" + rbits));
  }
  return CodeSpace(n, std::move(iso), std::move(labels));
}

ComplexMatrix even_weight_logical_x(std::size_t n, std::size_t j) {
  if (n < 2 || n % 2 != 0 || j < 1 || j > n - 2) {
    throw PreconditionError("even_weight_logical_x: need even n and 1 <= j <= n-2");
  }
  return embed_qubit_op(pauli(Pauli::X), 0, n) * embed_qubit_op(pauli(Pauli::X), j, n);
}

ComplexMatrix even_weight_logical_z(std::size_t n, std::size_t j) {
  if (n < 2 || n % 2 != 0 || j < 1 || j > n - 2) {
    throw PreconditionError("even_weight_logical_z: need even n and 1 <= j <= n-2");
  }
  return embed_qubit_op(pauli(Pauli::Z), j, n) * embed_qubit_op(pauli(Pauli::Z), n - 1, n);
}

}  // namespace dfslab
