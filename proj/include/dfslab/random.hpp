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

#include <cstdint>
#include <random>

#include "dfslab/numeric.hpp"

namespace dfslab {

/// SplitMix64 finalizer; used to derive independent engine seeds from (seed, stream) counters.
[[nodiscard]] std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Deterministic random stream keyed by (seed, stream_index).
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the C++ standard; normal
/// deviates use an explicit Box-Muller transform so draws do not depend on the standard library's
/// distribution implementations.
class RandomStream {
 public:
  RandomStream(std::uint64_t seed, std::uint64_t stream_index);

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform();
  /// Standard normal deviate.
  double normal();
  /// Complex Gaussian with independent N(0,1) real and imaginary parts.
  Complex complex_normal();

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

/// Matrix of independent complex Gaussian entries.
[[nodiscard]] ComplexMatrix random_complex_matrix(Eigen::Index rows, Eigen::Index cols,
                                                  RandomStream& rng);

/// (M + M^dagger)/2 for a complex Gaussian M (unnormalized).
[[nodiscard]] ComplexMatrix random_hermitian(Eigen::Index dim, RandomStream& rng);

/// Haar-like random unitary from the QR decomposition of a complex Gaussian matrix.
[[nodiscard]] ComplexMatrix random_unitary(Eigen::Index dim, RandomStream& rng);

}  // namespace dfslab
