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

#include <cmath>
#include <vector>

#include "qchan/linalg.hpp"

namespace qchan {

/// Orthonormal Hermitian basis of M_n under tr(A^* B):
///   index 0            I / sqrt(n)
///   then               (|j><k| + |k><j|) / sqrt(2),     j < k
///   then               (-i|j><k| + i|k><j|) / sqrt(2),  j < k
///   then for l=1..n-1  (sum_{j<l} |j><j| - l|l><l|) / sqrt(l(l+1))
/// At n = 2 this is (I, sigma_1, sigma_2, sigma_3) / sqrt(2). Elements 1..
/// span the traceless Hermitian operators.
inline std::vector<ComplexMatrix> hermitian_operator_basis(Index n) {
  if (n < 1) throw InvalidInput("hermitian_operator_basis: n must be >= 1");
  std::vector<ComplexMatrix> basis;
  basis.reserve(static_cast<std::size_t>(n * n));
  basis.push_back(ComplexMatrix::Identity(n, n) / std::sqrt(static_cast<double>(n)));

  const double h = 1.0 / std::sqrt(2.0);
  for (Index j = 0; j < n; ++j) {
    for (Index k = j + 1; k < n; ++k) {
      ComplexMatrix b = ComplexMatrix::Zero(n, n);
      b(j, k) = h;
      b(k, j) = h;
      basis.push_back(std::move(b));
    }
  }
  for (Index j = 0; j < n; ++j) {
    for (Index k = j + 1; k < n; ++k) {
      ComplexMatrix b = ComplexMatrix::Zero(n, n);
      b(j, k) = Complex(0.0, -h);
      b(k, j) = Complex(0.0, h);
      basis.push_back(std::move(b));
    }
  }
  for (Index l = 1; l < n; ++l) {
    const double f = 1.0 / std::sqrt(static_cast<double>(l * (l + 1)));
    ComplexMatrix b = ComplexMatrix::Zero(n, n);
    for (Index j = 0; j < l; ++j) b(j, j) = f;
    b(l, l) = -static_cast<double>(l) * f;
    basis.push_back(std::move(b));
  }
  return basis;
}

/// Real coordinates of a Hermitian operator in hermitian_operator_basis(n).
inline RealVector basis_coordinates(const std::vector<ComplexMatrix>& basis,
                                    const ComplexMatrix& a) {
  RealVector c(static_cast<Index>(basis.size()));
  for (std::size_t i = 0; i < basis.size(); ++i) {
    c(static_cast<Index>(i)) = hs_inner(basis[i], a).real();
  }
  return c;
}

}  // namespace qchan
