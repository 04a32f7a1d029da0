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

#include "dfslab/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/SVD>

#include "dfslab/errors.hpp"
#include "dfslab/pauli.hpp"

namespace dfslab {
namespace {

Complex hs_inner(const ComplexMatrix& a, const ComplexMatrix& b) {
  // Tr(a^dagger b) without forming the product.
  return (a.conjugate().cwiseProduct(b)).sum();
}

Eigen::Index common_dimension(const std::vector<ComplexMatrix>& ops, const char* what) {
  if (ops.empty()) throw PreconditionError(std::string(what) + ": need at least one operator");
  const Eigen::Index d = ops.front().rows();
  for (const ComplexMatrix& m : ops) {
    if (m.rows() != d || m.cols() != d) {
      throw DimensionError(std::string(what) + ": operators differ in dimension");
    }
  }
  require_dimension(static_cast<std::size_t>(d));
  return d;
}

/// Modified Gram-Schmidt with one re-orthogonalization pass.
class OrthonormalBuilder {
 public:
  explicit OrthonormalBuilder(double threshold) : threshold_(threshold) {}

  bool add(const ComplexMatrix& m) {
    const double norm = m.norm();
    if (norm == 0.0) return false;
    ComplexMatrix r = m / norm;
    for (int pass = 0; pass < 2; ++pass) {
      for (const ComplexMatrix& q : basis_) r -= hs_inner(q, r) * q;
    }
    const double rn = r.norm();
    if (rn <= threshold_) return false;
    basis_.push_back(r / rn);
    return true;
  }

  [[nodiscard]] std::size_t size() const noexcept { return basis_.size(); }
  [[nodiscard]] const ComplexMatrix& operator[](std::size_t i) const { return basis_[i]; }
  std::vector<ComplexMatrix> take() { return std::move(basis_); }

 private:
  double threshold_;
  std::vector<ComplexMatrix> basis_;
};

/// Orthonormal null-space vectors of `a` (singular values below rel_tol * largest).
Eigen::MatrixXcd null_space(const ComplexMatrix& a, double rel_tol) {
  // JacobiSVD: Eigen 3.4's divide-and-conquer SVD is unreliable on these complex stacks.
  Eigen::JacobiSVD<ComplexMatrix> svd(a, Eigen::ComputeFullV);
  const Eigen::VectorXd& sv = svd.singularValues();
  const double largest = sv.size() > 0 ? sv(0) : 0.0;
  const Eigen::Index cols = a.cols();
  Eigen::Index rank = 0;
  if (largest > 0.0) {
    for (Eigen::Index k = 0; k < sv.size(); ++k) {
      if (sv(k) > rel_tol * largest) ++rank;
    }
  }
  return svd.matrixV().rightCols(cols - rank);
}

ComplexMatrix unvec(const ComplexVector& v, Eigen::Index d) {
  return Eigen::Map<const ComplexMatrix>(v.data(), d, d);
}

}  // namespace

// ----- OperatorSpace --------------------------------------------------------------------------

OperatorSpace::OperatorSpace(Eigen::Index ambient_dim, std::vector<ComplexMatrix> basis)
    : ambient_dim_(ambient_dim), basis_(std::move(basis)) {
  for (const ComplexMatrix& b : basis_) {
    if (b.rows() != ambient_dim_ || b.cols() != ambient_dim_) {
      throw DimensionError("operator space basis element has the wrong dimension");
    }
  }
}

ComplexMatrix OperatorSpace::project(const ComplexMatrix& m) const {
  ComplexMatrix out = ComplexMatrix::Zero(ambient_dim_, ambient_dim_);
  for (const ComplexMatrix& b : basis_) out += hs_inner(b, m) * b;
  return out;
}

double OperatorSpace::relative_residual(const ComplexMatrix& m) const {
  const double n = m.norm();
  if (n == 0.0) return 0.0;
  return (m - project(m)).norm() / n;
}

bool OperatorSpace::contains(const ComplexMatrix& m, double tol) const {
  return relative_residual(m) <= tol;
}

double OperatorSpace::gram_error() const {
  double worst = 0.0;
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    for (std::size_t j = 0; j < basis_.size(); ++j) {
      const Complex g = hs_inner(basis_[i], basis_[j]);
      worst = std::max(worst, std::abs(g - (i == j ? 1.0 : 0.0)));
    }
  }
  return worst;
}

// ----- closure, commutant, center -------------------------------------------------------------

OperatorSpace algebra_closure(const std::vector<ComplexMatrix>& generators) {
  const Eigen::Index d = common_dimension(generators, "algebra_closure");
  const std::size_t cap = static_cast<std::size_t>(d * d);

  // Left multiplication by the generators and their adjoints, applied to a spanning set that
  // starts from {I} and the generators, reaches every word in the generators.
  std::vector<ComplexMatrix> letters;
  for (const ComplexMatrix& g : generators) {
    letters.push_back(g);
    if (!is_hermitian(g, 1e-12)) letters.push_back(g.adjoint());
  }
  OrthonormalBuilder builder(1e-8);
  builder.add(identity(d));
  for (const ComplexMatrix& g : letters) builder.add(g);
  for (std::size_t i = 0; i < builder.size() && builder.size() < cap; ++i) {
    const ComplexMatrix b = builder[i];
    for (const ComplexMatrix& g : letters) {
      if (builder.size() >= cap) break;
      builder.add(g * b);
    }
  }
  return OperatorSpace(d, builder.take());
}

OperatorSpace commutant(const std::vector<ComplexMatrix>& generators) {
  const Eigen::Index d = common_dimension(generators, "commutant");
  if (d > 32) throw DimensionError("commutant: ambient dimension above 32 is not supported");
  const Eigen::Index d2 = d * d;
  // Column-stacking vec: vec(G X - X G) = (I (x) G - G^T (x) I) vec(X).
  ComplexMatrix stacked(d2 * static_cast<Eigen::Index>(generators.size()), d2);
  const ComplexMatrix id = identity(d);
  for (std::size_t k = 0; k < generators.size(); ++k) {
    const ComplexMatrix& g = generators[k];
    stacked.middleRows(static_cast<Eigen::Index>(k) * d2, d2) =
        tensor(id, g) - tensor(ComplexMatrix(g.transpose()), id);
  }
  const Eigen::MatrixXcd ns = null_space(stacked, 1e-10);
  std::vector<ComplexMatrix> basis;
  for (Eigen::Index c = 0; c < ns.cols(); ++c) basis.push_back(unvec(ns.col(c), d));
  return OperatorSpace(d, std::move(basis));
}

OperatorSpace center(const std::vector<ComplexMatrix>& generators) {
  const Eigen::Index d = common_dimension(generators, "center");
  const OperatorSpace alg = algebra_closure(generators);
  const Eigen::Index d2 = d * d;
  const auto dim_a = static_cast<Eigen::Index>(alg.dim());
  ComplexMatrix map(d2 * static_cast<Eigen::Index>(generators.size()), dim_a);
  for (Eigen::Index i = 0; i < dim_a; ++i) {
    for (std::size_t k = 0; k < generators.size(); ++k) {
      const ComplexMatrix c = commutator(generators[k], alg.basis()[static_cast<std::size_t>(i)]);
      map.block(static_cast<Eigen::Index>(k) * d2, i, d2, 1) =
          Eigen::Map<const ComplexVector>(c.data(), d2);
    }
  }
  const Eigen::MatrixXcd ns = null_space(map, 1e-10);
  std::vector<ComplexMatrix> basis;
  for (Eigen::Index c = 0; c < ns.cols(); ++c) {
    ComplexMatrix z = ComplexMatrix::Zero(d, d);
    for (Eigen::Index i = 0; i < dim_a; ++i) z += ns(i, c) * alg.basis()[static_cast<std::size_t>(i)];
    basis.push_back(std::move(z));
  }
  return OperatorSpace(d, std::move(basis));
}

// ----- groups ---------------------------------------------------------------------------------

std::optional<std::size_t> NamedGroup::find(const ComplexMatrix& m, double tol) const {
  for (std::size_t k = 0; k < elements.size(); ++k) {
    if (elements[k].rows() == m.rows() && distance_up_to_global_phase(elements[k], m) < tol) {
      return k;
    }
  }
  return std::nullopt;
}

void require_group(const std::vector<ComplexMatrix>& elements, double tol) {
  common_dimension(elements, "group");
  for (const ComplexMatrix& g : elements) {
    if (!is_unitary(g, 1e-10)) throw PreconditionError("group element is not unitary");
  }
  for (std::size_t a = 0; a < elements.size(); ++a) {
    for (std::size_t b = 0; b < elements.size(); ++b) {
      const ComplexMatrix prod = elements[a] * elements[b];
      bool found = false;
      for (const ComplexMatrix& g : elements) {
        if (distance_up_to_global_phase(g, prod) < tol) {
          found = true;
          break;
        }
      }
      if (!found) {
        std::ostringstream os;
        os << "group is not closed under multiplication: product of elements " << a << " and " << b
           << " is not in the set (up to phase)";
        throw PreconditionError(os.str());
      }
    }
  }
}

NamedGroup klein_group() {
  NamedGroup g;
  for (Pauli p : {Pauli::I, Pauli::X, Pauli::Y, Pauli::Z}) {
    g.names.emplace_back(1, "IXYZ"[static_cast<int>(p)]);
    g.elements.push_back(pauli(p));
  }
  return g;
}

NamedGroup collective_pauli_group(std::size_t n) {
  if (n == 0 || n > 12) throw PreconditionError("collective_pauli_group: n must be in [1, 12]");
  NamedGroup g;
  for (char c : std::string("IXYZ")) {
    const std::string label(n, c);
    g.names.push_back(label);
    g.elements.push_back(pauli_string(label));
  }
  return g;
}

NamedGroup trivial_group(Eigen::Index dim) {
  NamedGroup g;
  g.names.emplace_back("I");
  g.elements.push_back(identity(dim));
  return g;
}

ComplexMatrix average_over_group(const ComplexMatrix& h, const std::vector<ComplexMatrix>& group) {
  require_group(group);
  const Eigen::Index ds = group.front().rows();
  if (h.rows() != h.cols() || h.rows() % ds != 0) {
    throw DimensionError("average_over_group: operator does not factor as system (x) bath");
  }
  const Eigen::Index db = h.rows() / ds;
  const ComplexMatrix id_b = identity(db);
  ComplexMatrix acc = ComplexMatrix::Zero(h.rows(), h.cols());
  for (const ComplexMatrix& g : group) {
    const ComplexMatrix gb = tensor(g, id_b);
    acc += gb.adjoint() * h * gb;
  }
  return acc / static_cast<double>(group.size());
}

ComplexMatrix system_part(const ComplexMatrix& h, Eigen::Index system_dim) {
  if (system_dim <= 0 || h.rows() != h.cols() || h.rows() % system_dim != 0) {
    throw DimensionError("system_part: operator does not factor as system (x) bath");
  }
  const Eigen::Index db = h.rows() / system_dim;
  ComplexMatrix tr = ComplexMatrix::Zero(db, db);
  for (Eigen::Index s = 0; s < system_dim; ++s) tr += h.block(s * db, s * db, db, db);
  return h - tensor(identity(system_dim), tr) / static_cast<double>(system_dim);
}

}  // namespace dfslab
