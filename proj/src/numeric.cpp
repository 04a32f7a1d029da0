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

#include "dfslab/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "dfslab/errors.hpp"

namespace dfslab {
namespace {

void require_square(const ComplexMatrix& m, const char* what) {
  if (!is_square(m)) {
    std::ostringstream os;
    os << what << ": expected a square matrix, got " << m.rows() << "x" << m.cols();
    throw DimensionError(os.str());
  }
}

}  // namespace

void require_dimension(std::size_t dim) {
  if (dim == 0 || dim > kMaxDimension) {
    std::ostringstream os;
    os << "dimension " << dim << " outside the supported range [1, " << kMaxDimension << "]";
    throw DimensionError(os.str());
  }
}

// ----- TensorLayout ---------------------------------------------------------------------------

TensorLayout::TensorLayout(std::vector<std::size_t> factor_dims) : dims_(std::move(factor_dims)) {
  total_ = 1;
  for (std::size_t d : dims_) {
    if (d == 0) throw DimensionError("tensor factor dimensions must be positive");
    if (total_ > kMaxDimension / d) {
      throw DimensionError("tensor layout exceeds the supported total dimension");
    }
    total_ *= d;
  }
  require_dimension(total_);
}

TensorLayout TensorLayout::qubits(std::size_t n_qubits, std::size_t bath_dim) {
  std::vector<std::size_t> dims(n_qubits, 2);
  if (bath_dim != 1) dims.push_back(bath_dim);
  return TensorLayout(std::move(dims));
}

void TensorLayout::require_matches(Eigen::Index dim) const {
  if (dim < 0 || static_cast<std::size_t>(dim) != total_) {
    std::ostringstream os;
    os << "layout of total dimension " << total_ << " does not match operand dimension " << dim;
    throw DimensionError(os.str());
  }
}

// ----- StateVector / DensityMatrix ------------------------------------------------------------

StateVector::StateVector(ComplexVector amplitudes, TensorLayout layout, double tol)
    : amplitudes_(std::move(amplitudes)), layout_(std::move(layout)) {
  layout_.require_matches(amplitudes_.size());
  if (std::abs(amplitudes_.norm() - 1.0) > tol) {
    throw PreconditionError("state vector is not normalized");
  }
}

DensityMatrix::DensityMatrix(ComplexMatrix matrix, TensorLayout layout, double tol)
    : matrix_(std::move(matrix)), layout_(std::move(layout)) {
  require_square(matrix_, "DensityMatrix");
  layout_.require_matches(matrix_.rows());
  if (!is_hermitian(matrix_, tol)) throw PreconditionError("density matrix is not Hermitian");
  if (std::abs(matrix_.trace() - Complex(1.0, 0.0)) > tol) {
    throw PreconditionError("density matrix does not have unit trace");
  }
  if (!is_psd(matrix_, 1e-10)) {
    throw PreconditionError("density matrix has a negative eigenvalue");
  }
}

DensityMatrix DensityMatrix::pure(const StateVector& psi) {
  const ComplexVector& a = psi.amplitudes();
  return DensityMatrix(a * a.adjoint(), psi.layout());
}

DensityMatrix DensityMatrix::maximally_mixed(const TensorLayout& layout) {
  const auto d = static_cast<Eigen::Index>(layout.total_dim());
  return DensityMatrix(identity(d) / static_cast<double>(d), layout);
}

// ----- predicates -----------------------------------------------------------------------------

bool is_square(const ComplexMatrix& m) { return m.rows() == m.cols(); }

bool is_hermitian(const ComplexMatrix& m, double tol) {
  if (!is_square(m)) return false;
  return m.size() == 0 || (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

bool is_unitary(const ComplexMatrix& m, double tol) {
  if (!is_square(m)) return false;
  if (m.size() == 0) return true;
  return (m.adjoint() * m - identity(m.rows())).cwiseAbs().maxCoeff() <= tol;
}

bool is_psd(const ComplexMatrix& m, double tol) {
  if (!is_hermitian(m, tol)) return false;
  if (m.size() == 0) return true;
  const ComplexMatrix herm = (m + m.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(herm, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff() >= -tol;
}

// ----- constructions --------------------------------------------------------------------------

ComplexMatrix identity(Eigen::Index dim) { return ComplexMatrix::Identity(dim, dim); }

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_dimension(static_cast<std::size_t>(std::max<Eigen::Index>(1, a.rows() * b.rows())));
  require_dimension(static_cast<std::size_t>(std::max<Eigen::Index>(1, a.cols() * b.cols())));
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

ComplexMatrix tensor(std::span<const ComplexMatrix> factors) {
  ComplexMatrix out = ComplexMatrix::Identity(1, 1);
  for (const ComplexMatrix& f : factors) out = tensor(out, f);
  return out;
}

ComplexVector tensor(const ComplexVector& a, const ComplexVector& b) {
  require_dimension(static_cast<std::size_t>(a.size() * b.size()));
  ComplexVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, const TensorLayout& layout,
                            std::span<const std::size_t> keep) {
  require_square(m, "partial_trace");
  layout.require_matches(m.rows());
  const auto& dims = layout.factor_dims();
  const std::size_t k = dims.size();

  std::vector<bool> kept(k, false);
  for (std::size_t f : keep) {
    if (f >= k) {
      std::ostringstream os;
      os << "partial_trace: factor index " << f << " out of range for " << k << " factors";
      throw PreconditionError(os.str());
    }
    kept[f] = true;
  }

  // Row-major strides: factor 0 is the most significant digit.
  std::vector<std::size_t> stride(k, 1);
  for (std::size_t f = k; f-- > 1;) stride[f - 1] = stride[f] * dims[f];

  std::vector<std::size_t> kept_factors;
  std::vector<std::size_t> traced_factors;
  for (std::size_t f = 0; f < k; ++f) (kept[f] ? kept_factors : traced_factors).push_back(f);

  auto offsets = [&](const std::vector<std::size_t>& factors) {
    std::size_t count = 1;
    for (std::size_t f : factors) count *= dims[f];
    std::vector<std::size_t> out(count, 0);
    for (std::size_t idx = 0; idx < count; ++idx) {
      std::size_t rem = idx;
      std::size_t off = 0;
      for (std::size_t p = factors.size(); p-- > 0;) {
        const std::size_t f = factors[p];
        off += (rem % dims[f]) * stride[f];
        rem /= dims[f];
      }
      out[idx] = off;
    }
    return out;
  };

  const std::vector<std::size_t> kept_off = offsets(kept_factors);
  const std::vector<std::size_t> traced_off = offsets(traced_factors);
  const auto dk = static_cast<Eigen::Index>(kept_off.size());

  ComplexMatrix out = ComplexMatrix::Zero(dk, dk);
  for (Eigen::Index i = 0; i < dk; ++i) {
    for (Eigen::Index j = 0; j < dk; ++j) {
      Complex acc(0.0, 0.0);
      for (std::size_t t : traced_off) {
        acc += m(static_cast<Eigen::Index>(kept_off[i] + t),
                 static_cast<Eigen::Index>(kept_off[j] + t));
      }
      out(i, j) = acc;
    }
  }
  return out;
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) { return a * b - b * a; }

ComplexMatrix anticommutator(const ComplexMatrix& a, const ComplexMatrix& b) {
  return a * b + b * a;
}

// ----- matrix functions -----------------------------------------------------------------------

ComplexMatrix expm_skew_hermitian(const ComplexMatrix& h, double t) {
  require_square(h, "expm_skew_hermitian");
  if (h.size() == 0) return h;
  const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
  if (!is_hermitian(h, 1e-10 * scale)) {
    throw PreconditionError("expm_skew_hermitian: generator is not Hermitian");
  }
  const ComplexMatrix herm = (h + h.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(herm);
  const Eigen::VectorXd& w = es.eigenvalues();
  ComplexVector phases(w.size());
  for (Eigen::Index k = 0; k < w.size(); ++k) phases(k) = std::polar(1.0, -t * w(k));
  const ComplexMatrix& v = es.eigenvectors();
  return v * phases.asDiagonal() * v.adjoint();
}

namespace {

struct UnitarySpectrum {
  ComplexMatrix vectors;
  std::vector<double> phases;
};

UnitarySpectrum unitary_spectrum(const ComplexMatrix& u) {
  Eigen::ComplexSchur<ComplexMatrix> schur(u);
  const ComplexMatrix& tri = schur.matrixT();
  UnitarySpectrum out;
  out.vectors = schur.matrixU();
  out.phases.resize(static_cast<std::size_t>(tri.rows()));
  for (Eigen::Index k = 0; k < tri.rows(); ++k) out.phases[k] = std::arg(tri(k, k));
  return out;
}

}  // namespace

std::vector<double> unitary_eigenphases(const ComplexMatrix& u) {
  require_square(u, "unitary_eigenphases");
  return unitary_spectrum(u).phases;
}

ComplexMatrix logm_unitary(const ComplexMatrix& u, double branch_margin) {
  require_square(u, "logm_unitary");
  if (u.size() == 0) return u;
  if (!is_unitary(u, 1e-10)) throw PreconditionError("logm_unitary: input is not unitary");
  const UnitarySpectrum spec = unitary_spectrum(u);
  Eigen::VectorXd theta(static_cast<Eigen::Index>(spec.phases.size()));
  for (std::size_t k = 0; k < spec.phases.size(); ++k) {
    if (std::abs(spec.phases[k]) > std::numbers::pi - branch_margin) {
      std::ostringstream os;
      os << "logm_unitary: eigenphase " << spec.phases[k] << " is within " << branch_margin
         << " of the branch cut at +-pi";
      throw BranchAmbiguityError(os.str());
    }
    theta(static_cast<Eigen::Index>(k)) = spec.phases[k];
  }
  // u = Q diag(e^{i theta}) Q^dagger = exp(-i H)  =>  H = -Q diag(theta) Q^dagger.
  const ComplexMatrix h = -(spec.vectors * theta.cast<Complex>().asDiagonal() *
                            spec.vectors.adjoint());
  return (h + h.adjoint()) / 2.0;
}

ComplexMatrix polar_unitary(const ComplexMatrix& m) {
  require_square(m, "polar_unitary");
  Eigen::JacobiSVD<ComplexMatrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

// ----- norms and comparisons ------------------------------------------------------------------

double op_norm(const ComplexMatrix& m) {
  if (m.size() == 0) return 0.0;
  if (m.rows() <= 16 && m.cols() <= 16) {
    Eigen::JacobiSVD<ComplexMatrix> svd(m);
    return svd.singularValues()(0);
  }
  // Largest eigenvalue of the Gram matrix of the smaller side.
  const ComplexMatrix gram = m.rows() <= m.cols() ? ComplexMatrix(m * m.adjoint())
                                                  : ComplexMatrix(m.adjoint() * m);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(gram, Eigen::EigenvaluesOnly);
  return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

double distance_up_to_global_phase(const ComplexMatrix& u, const ComplexMatrix& v) {
  if (u.rows() != v.rows() || u.cols() != v.cols() || !is_square(u)) {
    throw DimensionError("distance_up_to_global_phase: dimension mismatch");
  }
  const auto d = static_cast<double>(u.rows());
  if (d == 0) return 0.0;
  const Complex overlap = (u.adjoint() * v).trace();
  if (std::abs(overlap) == 0.0) return 1.0;
  // For unitaries 1 - |Tr(u^dagger v)|/d equals ||u - e^{i phi} v||_F^2 / (2d) at the optimal phase;
  // the difference form avoids cancellation when u and v nearly coincide.
  const Complex phase = std::conj(overlap) / std::abs(overlap);
  const double defect = (u - phase * v).squaredNorm() / (2.0 * d);
  return std::sqrt(std::clamp(defect, 0.0, 1.0));
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError("max_abs_diff: shape mismatch");
  }
  if (a.size() == 0) return 0.0;
  return (a - b).cwiseAbs().maxCoeff();
}

ComplexMatrix orthogonal_complement(const ComplexMatrix& isometry) {
  const Eigen::Index n = isometry.rows();
  const Eigen::Index d = isometry.cols();
  if (d > n) throw DimensionError("orthogonal_complement: more columns than rows");
  if (d == 0) return identity(n);
  Eigen::HouseholderQR<ComplexMatrix> qr(isometry);
  const ComplexMatrix q = qr.householderQ() * identity(n);
  return q.rightCols(n - d);
}

}  // namespace dfslab
