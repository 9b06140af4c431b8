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

// Bloch-ball machinery for N = 2. A bistochastic qubit channel is
// 1 (+) M in the Pauli basis; the singular values of the real 3x3 block M
// are the |xi_j| of its canonical diagonal form, the trace-norm contraction
// rate is ||M|| and the spectral gap satisfies 1 - gamma = ||M||^2.

#include <array>
#include <cmath>
#include <sstream>

#include "qchan/channel.hpp"

namespace qchan {

/// sigma_1, sigma_2, sigma_3.
inline std::array<ComplexMatrix, 3> pauli_matrices() {
  ComplexMatrix x(2, 2), y(2, 2), z(2, 2);
  x << 0.0, 1.0, 1.0, 0.0;
  y << 0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0;
  z << 1.0, 0.0, 0.0, -1.0;
  return {x, y, z};
}

struct BlochVector {
  double r1 = 0.0;
  double r2 = 0.0;
  double r3 = 0.0;

  double norm() const { return std::sqrt(r1 * r1 + r2 * r2 + r3 * r3); }
};

/// r_j = tr(sigma_j rho).
inline BlochVector to_bloch(const DensityMatrix& rho) {
  if (rho.dim() != 2) throw InvalidInput("to_bloch: state must be 2x2");
  const auto s = pauli_matrices();
  const ComplexMatrix& m = rho.matrix();
  return {(s[0] * m).trace().real(), (s[1] * m).trace().real(), (s[2] * m).trace().real()};
}

/// rho = (I + sum r_j sigma_j) / 2.
inline DensityMatrix from_bloch(const BlochVector& r, const Tolerances& tol = {}) {
  if (!(r.norm() <= 1.0 + tol.eig)) {
    std::ostringstream os;
    os << "from_bloch: Bloch vector has length " << r.norm() << " > 1";
    throw InvalidInput(os.str());
  }
  const auto s = pauli_matrices();
  const ComplexMatrix rho = (ComplexMatrix::Identity(2, 2) + r.r1 * s[0] + r.r2 * s[1] + r.r3 * s[2]) / 2.0;
  // Vectors on the sphere within tol.eig may carry an O(tol.eig) negative
  // eigenvalue; scale the psd tolerance accordingly.
  Tolerances relaxed = tol;
  relaxed.psd = std::max(tol.psd, tol.eig);
  return DensityMatrix::validated(rho, relaxed);
}

struct KingRuskaiForm {
  Eigen::Matrix3d m;       // traceless block of the Schrodinger superoperator
  Eigen::Vector3d xi_abs;  // singular values of m, descending
  double c_exact = 0.0;    // ||m||, the trace-norm contraction rate
};

/// Block form of a bistochastic qubit channel. U and V of the canonical
/// decomposition are not reconstructed.
inline KingRuskaiForm king_ruskai_form(const KrausChannel& ch, const Tolerances& tol = {}) {
  if (ch.dim() != 2) throw InvalidInput("king_ruskai_form: channel must act on a qubit");
  const Superoperator s = superoperator_schrodinger(ch, tol);
  const double shift = s.matrix.block(1, 0, 3, 1).norm();
  if (shift > tol.fix || !is_bistochastic(ch, tol)) {
    std::ostringstream os;
    os << "king_ruskai_form: channel is not bistochastic (affine shift " << shift << ")";
    throw InvalidInput(os.str());
  }
  KingRuskaiForm f;
  f.m = s.matrix.block(1, 1, 3, 3);
  f.xi_abs = svd_singular_values(f.m);
  f.c_exact = f.xi_abs(0);
  return f;
}

/// gamma = 1 - ||M||^2.
inline double qubit_gap_exact(const KingRuskaiForm& form) { return 1.0 - form.c_exact * form.c_exact; }

}  // namespace qchan
