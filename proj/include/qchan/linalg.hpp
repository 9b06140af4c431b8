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

// Dense complex matrix substrate: norms, Hermitian eigensolver, singular
// values, density matrices and von Neumann entropy. Everything here is a
// pure function of its arguments.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>
#include <string>
#include <utility>

#include "qchan/error.hpp"

namespace qchan {

using Complex = std::complex<double>;
using Index = Eigen::Index;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

/// Numerical thresholds shared by every module. All are absolute unless a
/// function documents a scale.
struct Tolerances {
  double herm = 1e-9;   // ||A - A^*||_HS for Hermiticity checks
  double trace = 1e-9;  // |tr rho - 1|
  double psd = 1e-9;    // most negative admissible eigenvalue (negated)
  double eig = 1e-8;    // eigen/SVD residuals, rank decisions
  double fix = 1e-7;    // fixed-point and completeness residuals
  double audit = 1e-6;  // sampled ratio vs. optimized contraction estimate
  double bound = 1e-9;  // slack allowed on entropy and envelope inequalities

  void validate() const {
    for (double t : {herm, trace, psd, eig, fix, audit, bound}) {
      if (!(t >= 0.0) || !std::isfinite(t)) {
        throw InvalidInput("tolerances must be finite and nonnegative");
      }
    }
  }
};

namespace detail {

inline std::string shape_of(Index rows, Index cols) {
  std::ostringstream os;
  os << rows << "x" << cols;
  return os.str();
}

}  // namespace detail

/// Rejects empty, non-square or non-finite operators.
template <typename Derived>
void require_square(const Eigen::MatrixBase<Derived>& a, const char* what) {
  if (a.rows() < 1 || a.rows() != a.cols()) {
    throw InvalidInput(std::string(what) + ": expected a nonempty square matrix, got " +
                       detail::shape_of(a.rows(), a.cols()));
  }
  if (!a.allFinite()) {
    throw InvalidInput(std::string(what) + ": matrix has non-finite entries");
  }
}

template <typename DerivedA, typename DerivedB>
void require_same_dim(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b,
                      const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw InvalidInput(std::string(what) + ": dimension mismatch " +
                       detail::shape_of(a.rows(), a.cols()) + " vs " +
                       detail::shape_of(b.rows(), b.cols()));
  }
}

/// Singular values in descending order.
template <typename Derived>
RealVector svd_singular_values(const Eigen::MatrixBase<Derived>& a) {
  if (a.size() == 0 || !a.allFinite()) {
    throw InvalidInput("svd_singular_values: empty or non-finite matrix");
  }
  using Plain = typename Derived::PlainObject;
  Eigen::JacobiSVD<Plain> svd(a.eval());
  if (svd.info() != Eigen::Success) {
    throw NumericalFailure("svd_singular_values: SVD did not converge");
  }
  return svd.singularValues();
}

/// Sum of singular values.
template <typename Derived>
double trace_norm(const Eigen::MatrixBase<Derived>& a) {
  require_square(a, "trace_norm");
  return svd_singular_values(a).sum();
}

/// Frobenius norm, sqrt(tr A^* A).
template <typename Derived>
double hs_norm(const Eigen::MatrixBase<Derived>& a) {
  require_square(a, "hs_norm");
  return a.norm();
}

/// tr(A^* B), conjugate-linear in the first slot.
inline Complex hs_inner(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a, b, "hs_inner");
  return (a.conjugate().cwiseProduct(b)).sum();
}

inline ComplexMatrix hermitian_part(const ComplexMatrix& a) {
  return (a + a.adjoint()) / 2.0;
}

/// ||A - A^*||_HS.
inline double hermiticity_residual(const ComplexMatrix& a) {
  return (a - a.adjoint()).norm();
}

struct HermitianEigen {
  RealVector values;            // ascending
  ComplexMatrix vectors;        // orthonormal columns
  double symmetrization_residual = 0.0;
};

/// Eigendecomposition of (A + A^*)/2. Inputs whose anti-Hermitian part
/// exceeds tol.herm * max(1, ||A||_HS) are rejected as non-Hermitian.
inline HermitianEigen hermitian_eigendecomposition(const ComplexMatrix& a,
                                                   const Tolerances& tol = {},
                                                   bool want_vectors = true) {
  require_square(a, "hermitian_eigendecomposition");
  const double residual = hermiticity_residual(a);
  if (residual > tol.herm * std::max(1.0, a.norm())) {
    std::ostringstream os;
    os << "hermitian_eigendecomposition: input not Hermitian (residual " << residual << ")";
    throw InvalidInput(os.str());
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(
      hermitian_part(a), want_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw NumericalFailure("hermitian_eigendecomposition: eigensolver did not converge");
  }
  HermitianEigen out;
  out.values = solver.eigenvalues();
  if (want_vectors) out.vectors = solver.eigenvectors();
  out.symmetrization_residual = residual;
  return out;
}

/// Eigenvalues only; the input is symmetrized without a Hermiticity check.
inline RealVector hermitian_eigenvalues(const ComplexMatrix& a) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitian_part(a), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw NumericalFailure("hermitian_eigenvalues: eigensolver did not converge");
  }
  return solver.eigenvalues();
}

/// Trace norm of the Hermitian part of A, via eigenvalues. Faster than the
/// SVD route for operators already known to be Hermitian.
inline double hermitian_trace_norm(const ComplexMatrix& a) {
  return hermitian_eigenvalues(a).cwiseAbs().sum();
}

/// Positive semidefinite, unit-trace operator. Construction validates and
/// stores the Hermitian part.
class DensityMatrix {
 public:
  static DensityMatrix validated(const ComplexMatrix& m, const Tolerances& tol = {}) {
    require_square(m, "DensityMatrix");
    const double herm = hermiticity_residual(m);
    if (herm > tol.herm) {
      std::ostringstream os;
      os << "DensityMatrix: not Hermitian (residual " << herm << ")";
      throw InvalidInput(os.str());
    }
    const Complex tr = m.trace();
    if (std::abs(tr - Complex(1.0, 0.0)) > tol.trace) {
      std::ostringstream os;
      os << "DensityMatrix: trace " << tr.real() << " differs from 1";
      throw InvalidInput(os.str());
    }
    ComplexMatrix h = hermitian_part(m);
    const double min_eig = hermitian_eigenvalues(h).minCoeff();
    if (min_eig < -tol.psd) {
      std::ostringstream os;
      os << "DensityMatrix: negative eigenvalue " << min_eig;
      throw InvalidInput(os.str());
    }
    return DensityMatrix(std::move(h));
  }

  static DensityMatrix maximally_mixed(Index dim) {
    if (dim < 1) throw InvalidInput("maximally_mixed: dim must be >= 1");
    return DensityMatrix(ComplexMatrix::Identity(dim, dim) / static_cast<double>(dim));
  }

  /// |psi><psi| for the normalized psi.
  static DensityMatrix pure(const ComplexVector& psi) {
    const double n = psi.norm();
    if (psi.size() < 1 || !(n > 0.0) || !psi.allFinite()) {
      throw InvalidInput("DensityMatrix::pure: vector must be nonzero and finite");
    }
    const ComplexVector u = psi / n;
    return DensityMatrix(u * u.adjoint());
  }

  const ComplexMatrix& matrix() const { return mat_; }
  Index dim() const { return mat_.rows(); }

 private:
  explicit DensityMatrix(ComplexMatrix m) : mat_(std::move(m)) {}
  ComplexMatrix mat_;
};

/// -sum lambda ln lambda in nats. Eigenvalues in [-tol.psd, 0) count as 0.
inline double von_neumann_entropy(const DensityMatrix& sigma, const Tolerances& tol = {}) {
  const RealVector evals = hermitian_eigenvalues(sigma.matrix());
  double s = 0.0;
  for (double lambda : evals) {
    if (lambda < -tol.psd) {
      throw InvalidInput("von_neumann_entropy: state has a negative eigenvalue");
    }
    if (lambda > 0.0) s -= lambda * std::log(lambda);
  }
  return std::max(0.0, s);
}

inline double von_neumann_entropy(const ComplexMatrix& sigma, const Tolerances& tol = {}) {
  return von_neumann_entropy(DensityMatrix::validated(sigma, tol), tol);
}

}  // namespace qchan
