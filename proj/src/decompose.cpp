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
#include <numeric>
#include <optional>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "dfslab/algebra.hpp"
#include "dfslab/errors.hpp"
#include "dfslab/random.hpp"

namespace dfslab {
namespace {

constexpr int kMaxAttempts = 5;
constexpr double kSameEigenvalue = 1e-9;   // spread inside one eigenvalue cluster
constexpr double kDistinctGap = 1e-6;      // minimum gap between clusters
constexpr double kStructureTol = 1e-8;

/// Random Hermitian element of a dagger-closed operator space.
ComplexMatrix random_hermitian_element(const OperatorSpace& space, RandomStream& rng) {
  const Eigen::Index d = space.ambient_dim();
  ComplexMatrix m = ComplexMatrix::Zero(d, d);
  for (const ComplexMatrix& b : space.basis()) m += rng.complex_normal() * b;
  m = ((m + m.adjoint()) / 2.0).eval();
  const double n = op_norm(m);
  return n > 0.0 ? ComplexMatrix(m / n) : m;
}

ComplexMatrix random_element(const OperatorSpace& space, RandomStream& rng) {
  const Eigen::Index d = space.ambient_dim();
  ComplexMatrix m = ComplexMatrix::Zero(d, d);
  for (const ComplexMatrix& b : space.basis()) m += rng.complex_normal() * b;
  return m;
}

/// Groups sorted eigenvalues into clusters; nullopt when a gap is ambiguous.
std::optional<std::vector<std::vector<Eigen::Index>>> cluster_eigenvalues(
    const Eigen::VectorXd& w) {
  std::vector<std::vector<Eigen::Index>> clusters;
  for (Eigen::Index k = 0; k < w.size(); ++k) {
    if (k == 0) {
      clusters.push_back({k});
      continue;
    }
    const double gap = w(k) - w(k - 1);
    if (gap < kSameEigenvalue) {
      clusters.back().push_back(k);
    } else if (gap < kDistinctGap) {
      return std::nullopt;
    } else {
      clusters.push_back({k});
    }
  }
  return clusters;
}

ComplexMatrix columns(const ComplexMatrix& v, const std::vector<Eigen::Index>& idx) {
  ComplexMatrix out(v.rows(), static_cast<Eigen::Index>(idx.size()));
  for (std::size_t c = 0; c < idx.size(); ++c) out.col(static_cast<Eigen::Index>(c)) = v.col(idx[c]);
  return out;
}

struct IsotypicBlock {
  std::size_t n = 0;
  std::size_t d = 0;
  ComplexMatrix basis;  // columns ordered (copy k, index a)
  std::size_t first_index = 0;
};

std::optional<AlgebraDecomposition> attempt(const std::vector<ComplexMatrix>& generators,
                                            const OperatorSpace& cent, const OperatorSpace& comm,
                                            std::uint64_t draw_seed) {
  const Eigen::Index dim = generators.front().rows();
  RandomStream rng(draw_seed, 0);

  // 1. Isotypic components: eigenspaces of a random Hermitian central element.
  const ComplexMatrix z = random_hermitian_element(cent, rng);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> ez(z);
  const auto z_clusters = cluster_eigenvalues(ez.eigenvalues());
  if (!z_clusters || z_clusters->size() != cent.dim()) return std::nullopt;

  // 2. Within each component, split into irrep copies with a random commutant element and
  //    align the copies with intertwiners drawn from the commutant.
  const ComplexMatrix c = random_hermitian_element(comm, rng);
  const ComplexMatrix c_link = random_element(comm, rng);
  std::vector<IsotypicBlock> blocks;
  for (const auto& zc : *z_clusters) {
    const ComplexMatrix v = columns(ez.eigenvectors(), zc);
    const ComplexMatrix c_block = v.adjoint() * c * v;
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> ec((c_block + c_block.adjoint()) / 2.0);
    const auto c_clusters = cluster_eigenvalues(ec.eigenvalues());
    if (!c_clusters) return std::nullopt;
    const std::size_t n_j = c_clusters->size();
    const std::size_t d_j = zc.size() / n_j;
    if (d_j * n_j != zc.size()) return std::nullopt;
    for (const auto& cc : *c_clusters) {
      if (cc.size() != d_j) return std::nullopt;
    }
    std::vector<ComplexMatrix> copies;
    for (const auto& cc : *c_clusters) copies.push_back(v * columns(ec.eigenvectors(), cc));

    IsotypicBlock blk;
    blk.n = n_j;
    blk.d = d_j;
    blk.basis.resize(dim, static_cast<Eigen::Index>(n_j * d_j));
    const auto dj = static_cast<Eigen::Index>(d_j);
    blk.basis.leftCols(dj) = copies[0];
    for (std::size_t k = 1; k < n_j; ++k) {
      ComplexMatrix t = copies[k].adjoint() * c_link * copies[0];
      const double scale = std::sqrt(t.squaredNorm() / static_cast<double>(d_j));
      if (scale < 1e-6) return std::nullopt;
      t /= scale;
      if (max_abs_diff(t.adjoint() * t, identity(dj)) > 1e-6) return std::nullopt;
      blk.basis.middleCols(static_cast<Eigen::Index>(k) * dj, dj) = copies[k] * t;
    }
    const ComplexMatrix proj = v * v.adjoint();
    for (Eigen::Index i = 0; i < dim; ++i) {
      if (std::abs(proj(i, i)) > 1e-6) {
        blk.first_index = static_cast<std::size_t>(i);
        break;
      }
    }
    blocks.push_back(std::move(blk));
  }

  std::stable_sort(blocks.begin(), blocks.end(), [](const IsotypicBlock& a, const IsotypicBlock& b) {
    if (a.n != b.n) return a.n > b.n;
    if (a.d != b.d) return a.d > b.d;
    return a.first_index < b.first_index;
  });

  AlgebraDecomposition out;
  out.transform.resize(dim, dim);
  std::size_t offset = 0;
  for (std::size_t j = 0; j < blocks.size(); ++j) {
    const auto width = static_cast<Eigen::Index>(blocks[j].n * blocks[j].d);
    out.transform.middleCols(static_cast<Eigen::Index>(offset), width) = blocks[j].basis;
    out.blocks.push_back({j, blocks[j].n, blocks[j].d});
    out.block_offsets.push_back(offset);
    offset += blocks[j].n * blocks[j].d;
  }
  if (offset != static_cast<std::size_t>(dim)) return std::nullopt;
  if (!is_unitary(out.transform, 1e-10)) return std::nullopt;
  out.structure_residual = block_structure_residual(out, generators);
  if (out.structure_residual > kStructureTol) return std::nullopt;
  out.seed_used = draw_seed;
  return out;
}

}  // namespace

double block_structure_residual(const AlgebraDecomposition& decomposition,
                                const std::vector<ComplexMatrix>& generators) {
  const ComplexMatrix& w = decomposition.transform;
  double worst = 0.0;
  for (const ComplexMatrix& g : generators) {
    const ComplexMatrix h = w.adjoint() * g * w;
    ComplexMatrix expected = ComplexMatrix::Zero(h.rows(), h.cols());
    for (std::size_t j = 0; j < decomposition.blocks.size(); ++j) {
      const AlgebraBlock& b = decomposition.blocks[j];
      const auto off = static_cast<Eigen::Index>(decomposition.block_offsets[j]);
      const auto d = static_cast<Eigen::Index>(b.d);
      // Average the diagonal sub-blocks to estimate M, then rebuild I_n (x) M.
      ComplexMatrix m = ComplexMatrix::Zero(d, d);
      for (std::size_t k = 0; k < b.n; ++k) {
        const Eigen::Index s = off + static_cast<Eigen::Index>(k) * d;
        m += h.block(s, s, d, d);
      }
      m /= static_cast<double>(b.n);
      for (std::size_t k = 0; k < b.n; ++k) {
        const Eigen::Index s = off + static_cast<Eigen::Index>(k) * d;
        expected.block(s, s, d, d) = m;
      }
    }
    worst = std::max(worst, h.size() ? (h - expected).cwiseAbs().maxCoeff() : 0.0);
  }
  return worst;
}

AlgebraDecomposition decompose(const std::vector<ComplexMatrix>& generators, std::uint64_t seed) {
  if (generators.empty()) throw PreconditionError("decompose: need at least one generator");
  for (const ComplexMatrix& g : generators) {
    if (!is_hermitian(g, 1e-10)) {
      throw PreconditionError("decompose: generators must be Hermitian (dagger-closed family)");
    }
  }
  const OperatorSpace cent = center(generators);
  const OperatorSpace comm = commutant(generators);
  for (int a = 0; a < kMaxAttempts; ++a) {
    const std::uint64_t draw_seed = splitmix64(seed + static_cast<std::uint64_t>(a));
    if (auto result = attempt(generators, cent, comm, draw_seed)) return *result;
  }
  std::ostringstream os;
  os << "decompose: no random draw produced a valid block structure after " << kMaxAttempts
     << " attempts";
  throw ValidationFailed(os.str());
}

}  // namespace dfslab
