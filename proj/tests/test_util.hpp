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

#include <cmath>
#include <complex>

#include "dfslab/numeric.hpp"

namespace dfslab::testing {

/// exp(-i t h) by scaling and squaring of a truncated Taylor series. Independent of the
/// eigendecomposition route used by the library.
inline ComplexMatrix expm_taylor(const ComplexMatrix& h, double t) {
  const ComplexMatrix a = Complex(0.0, -t) * h;
  const double norm = a.cwiseAbs().rowwise().sum().maxCoeff();
  int squarings = 0;
  while (norm / std::ldexp(1.0, squarings) > 0.25) ++squarings;
  const ComplexMatrix scaled = a / std::ldexp(1.0, squarings);
  ComplexMatrix term = ComplexMatrix::Identity(h.rows(), h.cols());
  ComplexMatrix sum = term;
  for (int k = 1; k <= 30; ++k) {
    term = (term * scaled / static_cast<double>(k)).eval();
    sum += term;
  }
  for (int s = 0; s < squarings; ++s) sum = (sum * sum).eval();
  return sum;
}

/// Operator norm from the largest eigenvalue of m^dagger m, by power iteration on the Gram matrix.
inline double op_norm_power(const ComplexMatrix& m) {
  const ComplexMatrix g = m.adjoint() * m;
  ComplexVector v = ComplexVector::Ones(g.cols()) / std::sqrt(static_cast<double>(g.cols()));
  for (Eigen::Index k = 0; k < g.cols(); ++k) v(k) += Complex(0.01 * static_cast<double>(k), 0.0);
  v.normalize();
  double lambda = 0.0;
  for (int it = 0; it < 2000; ++it) {
    ComplexVector w = g * v;
    const double n = w.norm();
    if (n == 0.0) return 0.0;
    lambda = n;
    v = w / n;
  }
  return std::sqrt(lambda);
}

/// Maximum entry deviation between a and b after removing the best global phase.
inline double phase_aligned_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  const Complex overlap = (b.adjoint() * a).trace();
  const Complex phase = std::abs(overlap) > 0.0 ? overlap / std::abs(overlap) : Complex(1.0, 0.0);
  return (a - phase * b).cwiseAbs().maxCoeff();
}

}  // namespace dfslab::testing
