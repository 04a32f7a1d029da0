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

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace dfslab {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// Largest total Hilbert-space dimension accepted anywhere in the library.
inline constexpr std::size_t kMaxDimension = 4096;

/// Numerical tolerances; structural predicates use `structural`, algebraic identities `algebraic`.
struct Tolerances {
  double structural = 1e-10;
  double algebraic = 1e-12;
};

/// Throws DimensionError if `dim` is zero or exceeds kMaxDimension.
void require_dimension(std::size_t dim);

/// Ordered tensor-factor dimensions, e.g. [2, 2, 2, d_B]; system factors precede the bath factor.
class TensorLayout {
 public:
  TensorLayout() = default;
  explicit TensorLayout(std::vector<std::size_t> factor_dims);

  /// n qubit factors followed by an optional bath factor (omitted when bath_dim == 1).
  static TensorLayout qubits(std::size_t n_qubits, std::size_t bath_dim = 1);

  [[nodiscard]] const std::vector<std::size_t>& factor_dims() const noexcept { return dims_; }
  [[nodiscard]] std::size_t num_factors() const noexcept { return dims_.size(); }
  [[nodiscard]] std::size_t total_dim() const noexcept { return total_; }

  /// Throws DimensionError unless total_dim() == dim.
  void require_matches(Eigen::Index dim) const;

 private:
  std::vector<std::size_t> dims_;
  std::size_t total_ = 1;
};

/// Unit-norm pure state with layout metadata.
class StateVector {
 public:
  StateVector(ComplexVector amplitudes, TensorLayout layout, double tol = 1e-12);

  [[nodiscard]] const ComplexVector& amplitudes() const noexcept { return amplitudes_; }
  [[nodiscard]] const TensorLayout& layout() const noexcept { return layout_; }

 private:
  ComplexVector amplitudes_;
  TensorLayout layout_;
};

/// Hermitian, unit-trace, positive semidefinite matrix with layout metadata.
class DensityMatrix {
 public:
  DensityMatrix(ComplexMatrix matrix, TensorLayout layout, double tol = 1e-12);

  static DensityMatrix pure(const StateVector& psi);
  static DensityMatrix maximally_mixed(const TensorLayout& layout);

  [[nodiscard]] const ComplexMatrix& matrix() const noexcept { return matrix_; }
  [[nodiscard]] const TensorLayout& layout() const noexcept { return layout_; }
  [[nodiscard]] Eigen::Index dim() const noexcept { return matrix_.rows(); }

 private:
  ComplexMatrix matrix_;
  TensorLayout layout_;
};

// ----- predicates -----------------------------------------------------------------------------

[[nodiscard]] bool is_square(const ComplexMatrix& m);
[[nodiscard]] bool is_hermitian(const ComplexMatrix& m, double tol = 1e-10);
[[nodiscard]] bool is_unitary(const ComplexMatrix& m, double tol = 1e-10);
[[nodiscard]] bool is_psd(const ComplexMatrix& m, double tol = 1e-10);

// ----- constructions --------------------------------------------------------------------------

[[nodiscard]] ComplexMatrix identity(Eigen::Index dim);

/// Kronecker product with the indices of `a` major.
[[nodiscard]] ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b);

/// Left-to-right Kronecker product of a list of factors.
[[nodiscard]] ComplexMatrix tensor(std::span<const ComplexMatrix> factors);

/// Kronecker product of two column vectors.
[[nodiscard]] ComplexVector tensor(const ComplexVector& a, const ComplexVector& b);

/// Traces out every factor not listed in `keep`; the kept factors stay in layout order.
[[nodiscard]] ComplexMatrix partial_trace(const ComplexMatrix& m, const TensorLayout& layout,
                                          std::span<const std::size_t> keep);

[[nodiscard]] ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);
[[nodiscard]] ComplexMatrix anticommutator(const ComplexMatrix& a, const ComplexMatrix& b);

// ----- matrix functions -----------------------------------------------------------------------

/// exp(-i t h) for Hermitian h, computed through a Hermitian eigendecomposition.
[[nodiscard]] ComplexMatrix expm_skew_hermitian(const ComplexMatrix& h, double t);

/// Hermitian H with u = exp(-i H) on the principal branch (eigenphases in (-pi, pi)).
/// Throws BranchAmbiguityError when an eigenphase lies within `branch_margin` of +-pi.
[[nodiscard]] ComplexMatrix logm_unitary(const ComplexMatrix& u, double branch_margin = 1e-6);

/// Eigenphases of a unitary (in (-pi, pi]), computed from its complex Schur form.
[[nodiscard]] std::vector<double> unitary_eigenphases(const ComplexMatrix& u);

/// Unitary factor of the polar decomposition m = U |m|.
[[nodiscard]] ComplexMatrix polar_unitary(const ComplexMatrix& m);

// ----- norms and comparisons ------------------------------------------------------------------

/// Largest singular value.
[[nodiscard]] double op_norm(const ComplexMatrix& m);

/// sqrt(1 - |Tr(u^dagger v)| / d); zero exactly when u = e^{i phi} v.
[[nodiscard]] double distance_up_to_global_phase(const ComplexMatrix& u, const ComplexMatrix& v);

/// Largest absolute entry of a - b (shapes must agree).
[[nodiscard]] double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

/// Orthonormal basis of the orthogonal complement of the column span of an isometry.
[[nodiscard]] ComplexMatrix orthogonal_complement(const ComplexMatrix& isometry);

}  // namespace dfslab
