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

#include "dfslab/dd.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <numbers>
#include <sstream>

#include "dfslab/errors.hpp"
#include "dfslab/matrix_io.hpp"
#include "dfslab/pauli.hpp"

namespace dfslab {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

bool is_pauli_label(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c != 'I' && c != 'X' && c != 'Y' && c != 'Z') return false;
  }
  return true;
}

std::size_t identity_index(const NamedGroup& group) {
  if (group.size() == 0) throw PreconditionError("group is empty");
  require_group(group.elements);
  if (group.names.size() != group.size()) {
    throw PreconditionError("group needs one name per element");
  }
  const Eigen::Index d = group.elements.front().rows();
  if (distance_up_to_global_phase(group.elements.front(), identity(d)) > 1e-8) {
    throw PreconditionError("group must list the identity first (g_0 = I)");
  }
  return 0;
}

/// Collapses runs of adjacent ideal pulses into one group representative; identities vanish.
std::vector<PulseEvent> merge_group_pulses(const std::vector<PulseEvent>& raw,
                                           const NamedGroup& group) {
  const Eigen::Index d = group.elements.front().rows();
  std::vector<PulseEvent> out;
  ComplexMatrix pending = identity(d);
  bool have_pending = false;
  auto flush = [&]() {
    if (!have_pending) return;
    const auto idx = group.find(pending);
    if (!idx) throw ValidationFailed("merged pulse product left the group");
    if (*idx != 0) out.emplace_back(IdealPulse{group.names[*idx], group.elements[*idx]});
    pending = identity(d);
    have_pending = false;
  };
  for (const PulseEvent& ev : raw) {
    if (const auto* p = std::get_if<IdealPulse>(&ev)) {
      pending = pending * p->unitary;
      have_pending = true;
    } else {
      flush();
      out.push_back(ev);
    }
  }
  flush();
  return out;
}

/// Group element g^dagger, returned as the canonical representative.
IdealPulse adjoint_pulse(const NamedGroup& group, std::size_t j) {
  const auto idx = group.find(group.elements[j].adjoint());
  if (!idx) throw PreconditionError("group is not closed under inversion");
  return IdealPulse{group.names[*idx], group.elements[*idx]};
}

std::vector<PulseEvent> cdd_raw(const NamedGroup& group, int level, double tau) {
  if (level == 0) return {FreeEvent{tau}};
  const std::vector<PulseEvent> inner = cdd_raw(group, level - 1, tau);
  std::vector<PulseEvent> out;
  for (std::size_t j = group.size(); j-- > 0;) {
    out.emplace_back(adjoint_pulse(group, j));
    out.insert(out.end(), inner.begin(), inner.end());
    out.emplace_back(IdealPulse{group.names[j], group.elements[j]});
  }
  return out;
}

std::string event_token(const PulseEvent& ev) {
  return std::visit(Overloaded{[](const FreeEvent&) { return std::string("f"); },
                               [](const IdealPulse& p) { return p.name; },
                               [](const RealPulse& p) { return "[" + p.name + "]"; }},
                    ev);
}

}  // namespace

// ----- PulseSequence --------------------------------------------------------------------------

double PulseSequence::total_duration() const {
  double t = 0.0;
  for (const PulseEvent& ev : events) {
    if (const auto* f = std::get_if<FreeEvent>(&ev)) t += f->tau;
    if (const auto* r = std::get_if<RealPulse>(&ev)) t += r->width;
  }
  return t;
}

std::size_t PulseSequence::free_segments() const {
  std::size_t k = 0;
  for (const PulseEvent& ev : events) k += std::holds_alternative<FreeEvent>(ev) ? 1 : 0;
  return k;
}

std::string PulseSequence::pattern() const {
  bool compact = true;
  for (const PulseEvent& ev : events) compact = compact && event_token(ev).size() == 1;
  std::string out;
  for (const PulseEvent& ev : events) {
    if (!compact && !out.empty()) out += ' ';
    out += event_token(ev);
  }
  return out;
}

// ----- simulation -----------------------------------------------------------------------------

ComplexMatrix simulate(const PulseSequence& seq, const HamiltonianModel& model) {
  const Eigen::Index ds = model.system_dim();
  const auto db = static_cast<Eigen::Index>(model.bath_dim());
  const ComplexMatrix h = total_hamiltonian(model);
  const ComplexMatrix id_b = identity(db);
  std::map<double, ComplexMatrix> free_cache;

  auto check_system = [&](const ComplexMatrix& m, const std::string& name) {
    if (m.rows() != ds || m.cols() != ds) {
      throw DimensionError("pulse '" + name + "' has dimension " + std::to_string(m.rows()) +
                           ", the model system has dimension " + std::to_string(ds));
    }
  };

  ComplexMatrix u = identity(model.joint_dim());
  for (auto it = seq.events.rbegin(); it != seq.events.rend(); ++it) {
    std::visit(Overloaded{
                   [&](const FreeEvent& f) {
                     if (!(f.tau >= 0.0)) throw PreconditionError("free duration must be >= 0");
                     auto found = free_cache.find(f.tau);
                     if (found == free_cache.end()) {
                       found = free_cache.emplace(f.tau, expm_skew_hermitian(h, f.tau)).first;
                     }
                     u = found->second * u;
                   },
                   [&](const IdealPulse& p) {
                     check_system(p.unitary, p.name);
                     if (!is_unitary(p.unitary, 1e-10)) {
                       throw PreconditionError("pulse '" + p.name + "' is not unitary");
                     }
                     u = tensor(p.unitary, id_b) * u;
                   },
                   [&](const RealPulse& p) {
                     check_system(p.control, p.name);
                     if (!(p.width >= 0.0)) throw PreconditionError("pulse width must be >= 0");
                     if (!is_hermitian(p.control, 1e-10)) {
                       throw PreconditionError("control of pulse '" + p.name + "' is not Hermitian");
                     }
                     u = expm_skew_hermitian(tensor(p.control, id_b) + h, p.width) * u;
                   }},
               *it);
  }
  return u;
}

RealPulse real_pauli_pulse(const std::string& pauli_label, double delta) {
  if (!is_pauli_label(pauli_label)) {
    throw PreconditionError("real pulse axis must be a Pauli string, got '" + pauli_label + "'");
  }
  if (!(delta > 0.0)) throw PreconditionError("real pulse width must be positive");
  const double lambda = std::numbers::pi / (2.0 * delta);
  return RealPulse{pauli_label, lambda * pauli_string(pauli_label), delta};
}

PulseSequence xy4(double tau, bool ideal, double delta, double lambda) {
  if (!(tau >= 0.0)) throw PreconditionError("xy4: tau must be >= 0");
  PulseSequence seq;
  seq.name = ideal ? "xy4" : "xy4-real";
  seq.level = 1;
  for (const char* axis : {"Z", "X", "Z", "X"}) {
    if (ideal) {
      seq.events.emplace_back(IdealPulse{axis, pauli_string(axis)});
    } else {
      if (!(delta > 0.0) || std::abs(delta * lambda - std::numbers::pi / 2.0) > 1e-9) {
        throw PreconditionError("xy4: real pulses need delta * lambda = pi/2");
      }
      seq.events.emplace_back(RealPulse{axis, lambda * pauli_string(axis), delta});
    }
    seq.events.emplace_back(FreeEvent{tau});
  }
  return seq;
}

PulseSequence symmetrize(const NamedGroup& group, double tau) {
  if (!(tau >= 0.0)) throw PreconditionError("symmetrize: tau must be >= 0");
  identity_index(group);
  PulseSequence seq;
  seq.name = "symmetrize";
  seq.level = 1;
  seq.events = merge_group_pulses(cdd_raw(group, 1, tau), group);
  return seq;
}

PulseSequence cdd(const NamedGroup& group, int level, double tau) {
  if (level < 1) throw PreconditionError("cdd: level must be >= 1");
  if (level > 8) throw PreconditionError("cdd: level above 8 is not supported");
  if (!(tau >= 0.0)) throw PreconditionError("cdd: tau must be >= 0");
  identity_index(group);
  PulseSequence seq;
  seq.name = "cdd";
  seq.level = level;
  seq.events = merge_group_pulses(cdd_raw(group, level, tau), group);
  return seq;
}

// ----- names and text format ------------------------------------------------------------------

ComplexMatrix resolve_pulse(const std::string& name, std::size_t n_qubits) {
  if (name.empty()) throw PreconditionError("empty pulse name");
  const std::size_t star = name.find('*');
  if (star != std::string::npos) {
    return resolve_pulse(name.substr(0, star), n_qubits) *
           resolve_pulse(name.substr(star + 1), n_qubits);
  }
  if (is_pauli_label(name)) {
    if (name.size() != n_qubits) {
      throw PreconditionError("pulse '" + name + "' does not act on " + std::to_string(n_qubits) +
                              " qubits");
    }
    return pauli_string(name);
  }
  if (name == "Xbar" || name == "Zbar") {
    if (n_qubits != 2) throw PreconditionError("pulse '" + name + "' needs a two-qubit system");
    const HybridDdDfs h = hybrid_ddfs_two_qubit(0.0);
    return expm_skew_hermitian(name == "Xbar" ? h.sigma_bar_x : h.sigma_bar_z,
                               std::numbers::pi / 2.0);
  }
  throw PreconditionError("unknown pulse name '" + name + "'");
}

void write_sequence(std::ostream& os, const PulseSequence& seq) {
  os << "# name " << (seq.name.empty() ? "sequence" : seq.name) << "\n";
  os << "# level " << seq.level << "\n";
  for (const PulseEvent& ev : seq.events) {
    std::visit(Overloaded{[&](const FreeEvent& f) { os << "free " << format_real(f.tau) << "\n"; },
                          [&](const IdealPulse& p) { os << "pulse " << p.name << "\n"; },
                          [&](const RealPulse& p) {
                            os << "realpulse " << p.name << " " << format_real(p.width) << "\n";
                          }},
               ev);
  }
}

PulseSequence read_sequence(std::istream& is, std::size_t n_qubits, const std::string& source) {
  PulseSequence seq;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string word;
    if (!(ls >> word)) continue;
    auto fail = [&](const std::string& msg) -> void {
      throw ConfigError(source, lineno - 1, 0, word, msg);
    };
    if (word[0] == '#') {
      std::string key;
      if (word == "#") ls >> key;
      if (key == "name") {
        std::getline(ls >> std::ws, seq.name);
      } else if (key == "level") {
        if (!(ls >> seq.level)) fail("expected an integer level");
      }
      continue;
    }
    try {
      if (word == "free") {
        double tau = 0.0;
        if (!(ls >> tau) || tau < 0.0) fail("expected a nonnegative duration");
        seq.events.emplace_back(FreeEvent{tau});
      } else if (word == "pulse") {
        std::string name;
        if (!(ls >> name)) fail("expected a pulse name");
        seq.events.emplace_back(IdealPulse{name, resolve_pulse(name, n_qubits)});
      } else if (word == "realpulse") {
        std::string name;
        double delta = 0.0;
        if (!(ls >> name >> delta)) fail("expected a pulse name and a width");
        const RealPulse p = real_pauli_pulse(name, delta);
        if (static_cast<std::size_t>(p.control.rows()) != (std::size_t{1} << n_qubits)) {
          fail("pulse '" + name + "' does not act on " + std::to_string(n_qubits) + " qubits");
        }
        seq.events.emplace_back(p);
      } else {
        fail("unknown event kind (expected free, pulse or realpulse)");
      }
      std::string extra;
      if (ls >> extra) fail("unexpected trailing text '" + extra + "'");
    } catch (const PreconditionError& e) {
      fail(e.what());
    }
  }
  return seq;
}

PulseSequence read_sequence_file(const std::string& path, std::size_t n_qubits) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path, -1, -1, "", "cannot open file");
  return read_sequence(in, n_qubits, path);
}

// ----- fits -----------------------------------------------------------------------------------

LogLogFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw DimensionError("fit_loglog: x and y differ in length");
  const double floor = 1e3 * std::numeric_limits<double>::epsilon();
  std::vector<double> lx;
  std::vector<double> ly;
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (!(x[k] > 0.0)) throw PreconditionError("fit_loglog: x values must be positive");
    if (y[k] < floor) continue;
    lx.push_back(std::log(x[k]));
    ly.push_back(std::log(y[k]));
  }
  if (lx.size() < 2) throw PreconditionError("fit_loglog: fewer than two usable points");
  const auto n = static_cast<double>(lx.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t k = 0; k < lx.size(); ++k) {
    mx += lx[k];
    my += ly[k];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t k = 0; k < lx.size(); ++k) {
    sxx += (lx[k] - mx) * (lx[k] - mx);
    sxy += (lx[k] - mx) * (ly[k] - my);
  }
  if (sxx == 0.0) throw PreconditionError("fit_loglog: x values are all equal");
  LogLogFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.points_used = lx.size();
  return fit;
}

}  // namespace dfslab
