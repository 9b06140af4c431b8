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

// Ergodicity, spectral gap of T That on the traceless subspace, and the
// subdominant eigenvalue modulus kappa of That.
//
// Ergodicity is decided two ways: the dimension of the commutant of the
// Kraus operators (for bistochastic channels the fixed points of T are
// exactly the matrices commuting with every V_i) and the multiplicity of
// the eigenvalue 1 of the superoperator. The two must agree.
//
// The gap is 1 minus the largest eigenvalue of T That restricted to the
// traceless Hermitian block. That eigenvalue is taken as 1 - gamma
// unconditionally, including when it is degenerate.

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>
#include <vector>

#include "qchan/channel.hpp"

namespace qchan {

struct SpectralReport {
  bool is_ergodic = false;
  int commutant_dim = 0;
  int fixed_space_dim = 0;
  double gap_gamma = 0.0;
  double one_minus_gamma = 1.0;
  double kappa = 1.0;
  std::vector<double> eigenvalues_tthat;  // traceless block, descending
  double asymmetry_residual = 0.0;        // ||G - G^t||_F before symmetrizing
};

namespace detail {

inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

/// Count of singular values <= rel * largest.
inline int numerical_nullity(const ComplexMatrix& stacked, double rel) {
  const Index cols = stacked.cols();
  ComplexMatrix square;
  if (stacked.rows() > cols) {
    Eigen::HouseholderQR<ComplexMatrix> qr(stacked);
    square = qr.matrixQR().topRows(cols).triangularView<Eigen::Upper>();
  } else {
    square = stacked;
  }
  const RealVector sv = svd_singular_values(square);
  const double largest = sv.size() > 0 ? sv(0) : 0.0;
  int nullity = static_cast<int>(cols - sv.size());
  for (double s : sv) {
    if (s <= rel * largest) ++nullity;
  }
  return nullity;
}

inline Eigen::VectorXcd superoperator_spectrum(const Superoperator& s) {
  Eigen::EigenSolver<RealMatrix> solver(s.matrix, false);
  if (solver.info() != Eigen::Success) {
    throw NumericalFailure("superoperator eigensolver did not converge");
  }
  return solver.eigenvalues();
}

}  // namespace detail

/// Dimension of {X : V_i X = X V_i for all i}, as the numerical nullity of
/// the stacked commutator map vec(X) -> (I (x) V_i - V_i^t (x) I) vec(X).
/// Singular values <= tol.eig times the largest count as zero.
inline int commutant_dimension(const KrausChannel& ch, const Tolerances& tol = {}) {
  require_bistochastic(ch, "commutant_dimension", tol);
  const Index n = ch.dim();
  const Index n2 = n * n;
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  ComplexMatrix stacked(n2 * static_cast<Index>(ch.size()), n2);
  Index row = 0;
  for (const auto& v : ch.kraus_ops()) {
    stacked.middleRows(row, n2) = detail::kron(id, v) - detail::kron(v.transpose(), id);
    row += n2;
  }
  return detail::numerical_nullity(stacked, tol.eig);
}

/// Multiplicity of eigenvalues of the Schrodinger superoperator within
/// tol.fix of 1.
inline int fixed_space_dimension(const KrausChannel& ch, const Tolerances& tol = {}) {
  const auto spectrum = detail::superoperator_spectrum(superoperator_schrodinger(ch, tol));
  int count = 0;
  for (const auto& z : spectrum) {
    if (std::abs(z - Complex(1.0, 0.0)) <= tol.fix) ++count;
  }
  return count;
}

/// True iff the only fixed points of That are multiples of the identity.
/// Throws NumericalFailure when the commutant and eigenspace verdicts differ.
inline bool is_ergodic(const KrausChannel& ch, const Tolerances& tol = {}) {
  const int commutant = commutant_dimension(ch, tol);
  const int fixed = fixed_space_dimension(ch, tol);
  if ((commutant == 1) != (fixed == 1)) {
    std::ostringstream os;
    os << "is_ergodic: commutant dimension " << commutant << " disagrees with fixed-space dimension "
       << fixed;
    throw NumericalFailure(os.str());
  }
  return commutant == 1;
}

/// Largest eigenvalue modulus of That after removing the eigenvalue closest
/// to 1. A second eigenvalue within tol.fix of 1 means non-ergodic.
inline double kappa(const KrausChannel& ch, const Tolerances& tol = {}) {
  require_bistochastic(ch, "kappa", tol);
  const auto spectrum = detail::superoperator_spectrum(superoperator_schrodinger(ch, tol));
  Index closest = 0;
  for (Index i = 1; i < spectrum.size(); ++i) {
    if (std::abs(spectrum(i) - 1.0) < std::abs(spectrum(closest) - 1.0)) closest = i;
  }
  double result = 0.0;
  for (Index i = 0; i < spectrum.size(); ++i) {
    if (i == closest) continue;
    if (std::abs(spectrum(i) - 1.0) <= tol.fix) {
      throw NotErgodic("kappa: eigenvalue 1 of the channel is not simple");
    }
    result = std::max(result, std::abs(spectrum(i)));
  }
  return result;
}

/// Full spectral report for a bistochastic ergodic channel. Throws
/// NotErgodic otherwise; use analyze_spectrum for a non-throwing variant.
inline SpectralReport spectral_gap(const KrausChannel& ch, const Tolerances& tol = {}) {
  require_bistochastic(ch, "spectral_gap", tol);
  SpectralReport r;
  r.commutant_dim = commutant_dimension(ch, tol);
  r.fixed_space_dim = fixed_space_dimension(ch, tol);
  if ((r.commutant_dim == 1) != (r.fixed_space_dim == 1)) {
    throw NumericalFailure("spectral_gap: commutant and fixed-space ergodicity verdicts disagree");
  }
  if (r.commutant_dim != 1) {
    std::ostringstream os;
    os << "spectral_gap: channel is not ergodic (commutant dimension " << r.commutant_dim << ")";
    throw NotErgodic(os.str());
  }
  r.is_ergodic = true;

  // G(a, b) = <B_a, T(That(B_b))> over the traceless basis elements.
  const auto basis = hermitian_operator_basis(ch.dim());
  const auto m = static_cast<Index>(basis.size()) - 1;
  RealMatrix g(m, m);
  for (Index b = 0; b < m; ++b) {
    const ComplexMatrix image =
        apply_heisenberg(ch, apply_schrodinger(ch, basis[static_cast<std::size_t>(b + 1)]));
    for (Index a = 0; a < m; ++a) g(a, b) = hs_inner(basis[static_cast<std::size_t>(a + 1)], image).real();
  }
  r.asymmetry_residual = (g - g.transpose()).norm();
  const RealMatrix sym = (g + g.transpose()) / 2.0;

  if (m > 0) {
    Eigen::SelfAdjointEigenSolver<RealMatrix> solver(sym, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
      throw NumericalFailure("spectral_gap: eigensolver did not converge");
    }
    for (Index i = m - 1; i >= 0; --i) {
      double lambda = solver.eigenvalues()(i);
      if (lambda < -tol.eig || lambda > 1.0 + tol.eig) {
        std::ostringstream os;
        os << "spectral_gap: eigenvalue " << lambda << " of T That outside [0, 1]";
        throw NumericalFailure(os.str());
      }
      r.eigenvalues_tthat.push_back(std::clamp(lambda, 0.0, 1.0));
    }
    r.one_minus_gamma = r.eigenvalues_tthat.front();
  } else {
    r.one_minus_gamma = 0.0;
  }
  r.gap_gamma = 1.0 - r.one_minus_gamma;
  r.kappa = kappa(ch, tol);
  return r;
}

/// Like spectral_gap, but a non-ergodic channel yields a report with
/// is_ergodic = false and no gap instead of an exception.
inline SpectralReport analyze_spectrum(const KrausChannel& ch, const Tolerances& tol = {}) {
  try {
    return spectral_gap(ch, tol);
  } catch (const NotErgodic&) {
    SpectralReport r;
    r.commutant_dim = commutant_dimension(ch, tol);
    r.fixed_space_dim = fixed_space_dimension(ch, tol);
    r.is_ergodic = false;
    r.gap_gamma = 0.0;
    r.one_minus_gamma = 1.0;
    r.kappa = 1.0;
    return r;
  }
}

}  // namespace qchan
