// Copyright 2026 The qchan Authors
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

// Seeded random ensembles used by generators, the contraction optimizer and
// the verification harnesses. All draws go through Rng (std::mt19937_64).

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "qchan/linalg.hpp"

namespace qchan {

using Rng = std::mt19937_64;

/// Independent seed for sub-stream `stream` of `seed` (splitmix64 finalizer).
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

inline double standard_normal(Rng& rng) {
  std::normal_distribution<double> dist(0.0, 1.0);
  return dist(rng);
}

inline double uniform01(Rng& rng) {
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  return dist(rng);
}

/// Entries i.i.d. standard complex Gaussian (E|z|^2 = 1).
inline ComplexMatrix ginibre(Index rows, Index cols, Rng& rng) {
  ComplexMatrix g(rows, cols);
  const double s = 1.0 / std::sqrt(2.0);
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < rows; ++i) {
      const double re = standard_normal(rng);
      const double im = standard_normal(rng);
      g(i, j) = Complex(s * re, s * im);
    }
  }
  return g;
}

/// Haar-distributed unitary: QR of a Ginibre matrix with the phases of
/// diag(R) moved into Q.
inline ComplexMatrix haar_unitary(Index n, Rng& rng) {
  const ComplexMatrix g = ginibre(n, n, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(n, n);
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index j = 0; j < n; ++j) {
    const double mag = std::abs(r(j, j));
    const Complex phase = mag > 0.0 ? r(j, j) / mag : Complex(1.0, 0.0);
    q.col(j) *= phase;
  }
  return q;
}

/// Uniform point on the unit sphere of C^n.
inline ComplexVector random_unit_vector(Index n, Rng& rng) {
  ComplexVector v = ginibre(n, 1, rng).col(0);
  return v / v.norm();
}

/// Uniform weights on the probability simplex.
inline std::vector<double> random_simplex_weights(std::size_t k, Rng& rng) {
  std::vector<double> w(k);
  double total = 0.0;
  for (auto& x : w) {
    x = -std::log(1.0 - uniform01(rng));
    total += x;
  }
  for (auto& x : w) x /= total;
  return w;
}

/// GUE-like Hermitian matrix.
inline ComplexMatrix random_hermitian(Index n, Rng& rng) {
  return hermitian_part(ginibre(n, n, rng));
}

inline DensityMatrix random_pure_state(Index n, Rng& rng) {
  return DensityMatrix::pure(random_unit_vector(n, rng));
}

/// Induced-measure state G G^* / tr(G G^*) with G of shape n x rank.
inline DensityMatrix random_density_matrix(Index n, Index rank, Rng& rng) {
  const ComplexMatrix g = ginibre(n, rank, rng);
  ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityMatrix::validated(rho);
}

/// Pure with probability 1/4, otherwise mixed with rank uniform in [1, n].
inline DensityMatrix random_state(Index n, Rng& rng) {
  if (uniform01(rng) < 0.25) return random_pure_state(n, rng);
  std::uniform_int_distribution<Index> rank(1, n);
  return random_density_matrix(n, rank(rng), rng);
}

}  // namespace qchan
