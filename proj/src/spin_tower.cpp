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

#include <algorithm>
#include <cmath>
#include <sstream>

#include "dfslab/codes.hpp"
#include "dfslab/errors.hpp"
#include "dfslab/pauli.hpp"

namespace dfslab {
namespace {

/// States printed explicitly in the literature; the tower adopts their overall sign.
struct ReferenceState {
  std::size_t n;
  int two_j;
  int lambda;
  int two_m;
  ComplexVector state;
};

std::vector<ReferenceState> reference_states() {
  const double r2 = std::sqrt(2.0);
  const double r6 = std::sqrt(6.0);
  const ComplexVector s = (ket("01") - ket("10")) / r2;
  const ComplexVector t0 = (ket("01") + ket("10")) / r2;
  std::vector<ReferenceState> refs;
  refs.push_back({2, 0, 0, 0, s});
  refs.push_back({3, 1, 0, 1, (ket("010") - ket("100")) / r2});
  refs.push_back({3, 1, 1, -1, (2.0 * ket("110") - ket("011") - ket("101")) / r6});
  refs.push_back({4, 0, 0, 0, tensor(s, s)});
  refs.push_back({4, 0, 1, 0,
                  (tensor(ket("00"), ket("11")) + tensor(ket("11"), ket("00")) - tensor(t0, t0)) /
                      std::sqrt(3.0)});
  return refs;
}

/// Couples every multiplet of n-1 qubits with one more spin-1/2 (Condon-Shortley phases).
std::vector<SpinMultiplet> couple_one_more(const std::vector<SpinMultiplet>& prev) {
  std::vector<SpinMultiplet> next;
  ComplexVector up(2);
  up << 1.0, 0.0;  // m = +1/2 is |0>
  ComplexVector down(2);
  down << 0.0, 1.0;
  for (const SpinMultiplet& mp : prev) {
    const int tj = mp.two_j;
    const Eigen::Index dim = mp.states.front().size() * 2;
    for (int dir : {-1, +1}) {
      const int tJ = tj + dir;
      if (tJ < 0) continue;
      SpinMultiplet out;
      out.two_j = tJ;
      out.steps = mp.steps;
      out.steps.push_back(dir);
      const double denom = 2.0 * (tj + 1);
      for (int tM = -tJ; tM <= tJ; tM += 2) {
        ComplexVector v = ComplexVector::Zero(dim);
        // Components |j, M - 1/2>|up> and |j, M + 1/2>|down>.
        const int tm_up = tM - 1;
        const int tm_dn = tM + 1;
        const double a = std::sqrt(std::max(0.0, (tj + tM + 1) / denom));
        const double b = std::sqrt(std::max(0.0, (tj - tM + 1) / denom));
        double c_up = 0.0;
        double c_dn = 0.0;
        if (dir > 0) {
          c_up = a;
          c_dn = b;
        } else {
          c_up = -b;
          c_dn = a;
        }
        if (std::abs(tm_up) <= tj && c_up != 0.0) {
          v += c_up * tensor(mp.states[static_cast<std::size_t>((tm_up + tj) / 2)], up);
        }
        if (std::abs(tm_dn) <= tj && c_dn != 0.0) {
          v += c_dn * tensor(mp.states[static_cast<std::size_t>((tm_dn + tj) / 2)], down);
        }
        out.states.push_back(std::move(v));
      }
      next.push_back(std::move(out));
    }
  }
  // Sort by J, then by step sequence (down step before up step) and assign lambda.
  std::sort(next.begin(), next.end(), [](const SpinMultiplet& x, const SpinMultiplet& y) {
    if (x.two_j != y.two_j) return x.two_j < y.two_j;
    return x.steps < y.steps;
  });
  int prev_j = -1;
  int lambda = 0;
  for (SpinMultiplet& m : next) {
    lambda = (m.two_j == prev_j) ? lambda + 1 : 0;
    prev_j = m.two_j;
    m.lambda = lambda;
  }
  return next;
}

}  // namespace

SpinTowerBasis::SpinTowerBasis(std::size_t n_qubits, std::vector<SpinMultiplet> multiplets)
    : n_qubits_(n_qubits), multiplets_(std::move(multiplets)) {}

const SpinMultiplet& SpinTowerBasis::multiplet(int two_j, int lambda) const {
  for (const SpinMultiplet& m : multiplets_) {
    if (m.two_j == two_j && m.lambda == lambda) return m;
  }
  std::ostringstream os;
  os << "spin tower has no multiplet J=" << format_half_integer(two_j) << ", lambda=" << lambda;
  throw PreconditionError(os.str());
}

const ComplexVector& SpinTowerBasis::state(const SpinLabel& label) const {
  const SpinMultiplet& m = multiplet(label.two_j, label.lambda);
  if (std::abs(label.two_m) > label.two_j || (label.two_j - label.two_m) % 2 != 0) {
    throw PreconditionError("spin tower: invalid m for the requested J");
  }
  return m.states[static_cast<std::size_t>((label.two_m + label.two_j) / 2)];
}

std::size_t SpinTowerBasis::num_states() const {
  std::size_t total = 0;
  for (const SpinMultiplet& m : multiplets_) total += m.states.size();
  return total;
}

std::size_t SpinTowerBasis::multiplicity(int two_j) const {
  return static_cast<std::size_t>(std::count_if(
      multiplets_.begin(), multiplets_.end(),
      [two_j](const SpinMultiplet& m) { return m.two_j == two_j; }));
}

SpinTowerBasis spin_tower(std::size_t n) {
  if (n < 1 || n > 8) throw PreconditionError("spin_tower: n must be in [1, 8]");
  SpinMultiplet single;
  single.two_j = 1;
  single.lambda = 0;
  single.steps = {+1};
  ComplexVector down(2);
  down << 0.0, 1.0;
  ComplexVector up(2);
  up << 1.0, 0.0;
  single.states = {down, up};
  std::vector<SpinMultiplet> level{single};
  for (std::size_t k = 2; k <= n; ++k) level = couple_one_more(level);

  // One sign per (J, lambda): match printed states where they exist, else make the first
  // nonzero amplitude of the m = J member positive.
  const std::vector<ReferenceState> refs = reference_states();
  for (SpinMultiplet& m : level) {
    double sign = 0.0;
    for (const ReferenceState& r : refs) {
      if (r.n == n && r.two_j == m.two_j && r.lambda == m.lambda) {
        const Complex overlap = r.state.dot(m.states[static_cast<std::size_t>((r.two_m + m.two_j) / 2)]);
        sign = overlap.real() >= 0.0 ? 1.0 : -1.0;
      }
    }
    if (sign == 0.0) {
      const ComplexVector& top = m.states.back();
      sign = 1.0;
      for (Eigen::Index i = 0; i < top.size(); ++i) {
        if (std::abs(top(i)) > 1e-12) {
          sign = top(i).real() >= 0.0 ? 1.0 : -1.0;
          break;
        }
      }
    }
    for (ComplexVector& v : m.states) v *= sign;
  }
  return SpinTowerBasis(n, std::move(level));
}

}  // namespace dfslab
