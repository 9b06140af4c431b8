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

// Quantum channels in Kraus form. A KrausChannel {V_i} presents both
//   T(A)    = sum_i V_i^* A V_i   (Heisenberg picture, unital)
//   That(A) = sum_i V_i A V_i^*   (Schrodinger picture, trace preserving)
// and is immutable after construction.
//
// Conventions:
//  * Choi matrix C = sum_{jk} That(E_jk) (x) E_jk with the composite index
//    (a, j) -> a + n*j, so that the rank-one terms of C are the
//    column-stacked vec(V_i).
//  * Superoperators are real n^2 x n^2 matrices in hermitian_operator_basis.

#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>
#include <utility>
#include <vector>

#include "qchan/basis.hpp"
#include "qchan/linalg.hpp"
#include "qchan/random.hpp"

namespace qchan {

namespace detail {

inline double completeness_residual(const std::vector<ComplexMatrix>& ops, bool dual) {
  const Index n = ops.front().rows();
  ComplexMatrix sum = ComplexMatrix::Zero(n, n);
  for (const auto& v : ops) sum += dual ? ComplexMatrix(v * v.adjoint()) : ComplexMatrix(v.adjoint() * v);
  return (sum - ComplexMatrix::Identity(n, n)).norm();
}

inline void require_kraus_shapes(const std::vector<ComplexMatrix>& ops, const char* what) {
  if (ops.empty()) throw InvalidInput(std::string(what) + ": Kraus list is empty");
  const Index n = ops.front().rows();
  for (std::size_t i = 0; i < ops.size(); ++i) {
    require_square(ops[i], what);
    if (ops[i].rows() != n) {
      std::ostringstream os;
      os << what << ": Kraus operator " << i << " has dimension " << ops[i].rows()
         << ", expected " << n;
      throw InvalidInput(os.str());
    }
  }
}

inline ComplexMatrix schrodinger_sum(const std::vector<ComplexMatrix>& ops, const ComplexMatrix& a) {
  ComplexMatrix out = ComplexMatrix::Zero(a.rows(), a.cols());
  for (const auto& v : ops) out.noalias() += v * a * v.adjoint();
  return out;
}

}  // namespace detail

class KrausChannel {
 public:
  /// Validates shapes and the completeness relation
  /// ||sum V_i^* V_i - I||_HS <= tol.fix.
  explicit KrausChannel(std::vector<ComplexMatrix> ops, const Tolerances& tol = {})
      : ops_(std::move(ops)) {
    detail::require_kraus_shapes(ops_, "KrausChannel");
    const double residual = detail::completeness_residual(ops_, false);
    if (residual > tol.fix) {
      std::ostringstream os;
      os << "KrausChannel: not trace preserving, ||sum V^*V - I||_HS = " << residual;
      throw InvalidInput(os.str());
    }
  }

  Index dim() const { return ops_.front().rows(); }
  std::size_t size() const { return ops_.size(); }
  const std::vector<ComplexMatrix>& kraus_ops() const { return ops_; }

 private:
  std::vector<ComplexMatrix> ops_;
};

struct ChannelCertificate {
  bool is_cptp = false;
  bool is_bistochastic = false;
  double choi_min_eigenvalue = 0.0;
  double unitality_residual = 0.0;       // ||sum V^* V - I||_HS
  double dual_unitality_residual = 0.0;  // ||sum V V^* - I||_HS
};

inline ComplexMatrix apply_heisenberg(const KrausChannel& ch, const ComplexMatrix& a) {
  require_square(a, "apply_heisenberg");
  if (a.rows() != ch.dim()) throw InvalidInput("apply_heisenberg: dimension mismatch");
  ComplexMatrix out = ComplexMatrix::Zero(a.rows(), a.cols());
  for (const auto& v : ch.kraus_ops()) out.noalias() += v.adjoint() * a * v;
  return out;
}

inline ComplexMatrix apply_schrodinger(const KrausChannel& ch, const ComplexMatrix& a) {
  require_square(a, "apply_schrodinger");
  if (a.rows() != ch.dim()) throw InvalidInput("apply_schrodinger: dimension mismatch");
  return detail::schrodinger_sum(ch.kraus_ops(), a);
}

/// |tr(That(A) B) - tr(A T(B))|.
inline double duality_check(const KrausChannel& ch, const ComplexMatrix& a, const ComplexMatrix& b) {
  const Complex lhs = (apply_schrodinger(ch, a) * b).trace();
  const Complex rhs = (a * apply_heisenberg(ch, b)).trace();
  return std::abs(lhs - rhs);
}

namespace detail {

inline ComplexMatrix choi_of(const std::vector<ComplexMatrix>& ops) {
  const Index n = ops.front().rows();
  ComplexMatrix choi = ComplexMatrix::Zero(n * n, n * n);
  for (Index j = 0; j < n; ++j) {
    for (Index k = 0; k < n; ++k) {
      ComplexMatrix e = ComplexMatrix::Zero(n, n);
      e(j, k) = 1.0;
      const ComplexMatrix image = schrodinger_sum(ops, e);
      for (Index b = 0; b < n; ++b) {
        for (Index a = 0; a < n; ++a) choi(a + n * j, b + n * k) = image(a, b);
      }
    }
  }
  return choi;
}

}  // namespace detail

/// (That (x) id) applied to sum_{jk} E_jk (x) E_jk; n^2 x n^2, Hermitian PSD.
inline ComplexMatrix choi_matrix(const KrausChannel& ch) { return detail::choi_of(ch.kraus_ops()); }

/// Trace over the output factor: (j, k) -> sum_a C(a + n j, a + n k).
inline ComplexMatrix choi_partial_trace(const ComplexMatrix& choi, Index n) {
  ComplexMatrix out = ComplexMatrix::Zero(n, n);
  for (Index j = 0; j < n; ++j) {
    for (Index k = 0; k < n; ++k) {
      for (Index a = 0; a < n; ++a) out(j, k) += choi(a + n * j, a + n * k);
    }
  }
  return out;
}

/// Canonical Kraus operators from a Choi matrix: one operator sqrt(lambda)
/// unvec(v) per eigenpair with lambda > tol.psd, largest first.
inline KrausChannel kraus_from_choi(const ComplexMatrix& choi, const Tolerances& tol = {}) {
  require_square(choi, "kraus_from_choi");
  const auto n = static_cast<Index>(std::llround(std::sqrt(static_cast<double>(choi.rows()))));
  if (n * n != choi.rows()) {
    throw InvalidInput("kraus_from_choi: Choi dimension is not a perfect square");
  }
  const HermitianEigen eig = hermitian_eigendecomposition(choi, tol);
  if (eig.values(0) < -tol.psd) {
    std::ostringstream os;
    os << "kraus_from_choi: Choi matrix not positive semidefinite (min eigenvalue "
       << eig.values(0) << ")";
    throw InvalidInput(os.str());
  }
  const double pt = (choi_partial_trace(choi, n) - ComplexMatrix::Identity(n, n)).norm();
  if (pt > tol.fix) {
    std::ostringstream os;
    os << "kraus_from_choi: partial trace differs from identity by " << pt;
    throw InvalidInput(os.str());
  }
  std::vector<ComplexMatrix> ops;
  for (Index i = eig.values.size() - 1; i >= 0; --i) {
    const double lambda = eig.values(i);
    if (lambda <= tol.psd) break;
    const ComplexVector v = eig.vectors.col(i);
    ops.push_back(std::sqrt(lambda) * Eigen::Map<const ComplexMatrix>(v.data(), n, n));
  }
  return KrausChannel(std::move(ops), tol);
}

/// Certificate for a raw Kraus list that need not be trace preserving.
inline ChannelCertificate certify_kraus(const std::vector<ComplexMatrix>& ops, const Tolerances& tol = {}) {
  detail::require_kraus_shapes(ops, "certify");
  ChannelCertificate c;
  c.unitality_residual = detail::completeness_residual(ops, false);
  c.dual_unitality_residual = detail::completeness_residual(ops, true);
  c.choi_min_eigenvalue = hermitian_eigenvalues(detail::choi_of(ops)).minCoeff();
  c.is_cptp = c.choi_min_eigenvalue >= -tol.psd && c.unitality_residual <= tol.fix;
  c.is_bistochastic = c.is_cptp && c.dual_unitality_residual <= tol.fix;
  return c;
}

inline ChannelCertificate certify(const KrausChannel& ch, const Tolerances& tol = {}) {
  return certify_kraus(ch.kraus_ops(), tol);
}

/// T(1) = That(1) = 1 within tol.fix. Cheaper than certify().
inline bool is_bistochastic(const KrausChannel& ch, const Tolerances& tol = {}) {
  return detail::completeness_residual(ch.kraus_ops(), true) <= tol.fix;
}

inline void require_bistochastic(const KrausChannel& ch, const char* what, const Tolerances& tol = {}) {
  const double r = detail::completeness_residual(ch.kraus_ops(), true);
  if (r > tol.fix) {
    std::ostringstream os;
    os << what << ": channel is not bistochastic (||sum V V^* - I||_HS = " << r << ")";
    throw InvalidInput(os.str());
  }
}

struct Superoperator {
  Index dim = 0;
  std::vector<ComplexMatrix> basis;  // hermitian_operator_basis(dim)
  RealMatrix matrix;                 // matrix(a, b) = <basis_a, Phi(basis_b)>
  double imaginary_residual = 0.0;   // largest |Im| discarded
};

namespace detail {

template <typename Map>
Superoperator superoperator_of(Index n, Map&& apply, const Tolerances& tol) {
  Superoperator s;
  s.dim = n;
  s.basis = hermitian_operator_basis(n);
  const auto m = static_cast<Index>(s.basis.size());
  s.matrix.resize(m, m);
  for (Index b = 0; b < m; ++b) {
    const ComplexMatrix image = apply(s.basis[static_cast<std::size_t>(b)]);
    for (Index a = 0; a < m; ++a) {
      const Complex z = hs_inner(s.basis[static_cast<std::size_t>(a)], image);
      s.matrix(a, b) = z.real();
      s.imaginary_residual = std::max(s.imaginary_residual, std::abs(z.imag()));
    }
  }
  if (s.imaginary_residual > tol.herm * std::max(1.0, static_cast<double>(n))) {
    throw NumericalFailure("superoperator: map does not preserve Hermiticity");
  }
  return s;
}

}  // namespace detail

inline Superoperator superoperator_schrodinger(const KrausChannel& ch, const Tolerances& tol = {}) {
  return detail::superoperator_of(
      ch.dim(), [&](const ComplexMatrix& a) { return apply_schrodinger(ch, a); }, tol);
}

inline Superoperator superoperator_heisenberg(const KrausChannel& ch, const Tolerances& tol = {}) {
  return detail::superoperator_of(
      ch.dim(), [&](const ComplexMatrix& a) { return apply_heisenberg(ch, a); }, tol);
}

/// Kraus operators {V_i (x) W_j} on dimension n1 * n2.
inline KrausChannel tensor_product(const KrausChannel& first, const KrausChannel& second,
                                   const Tolerances& tol = {}) {
  std::vector<ComplexMatrix> ops;
  ops.reserve(first.size() * second.size());
  const Index n1 = first.dim();
  const Index n2 = second.dim();
  for (const auto& v : first.kraus_ops()) {
    for (const auto& w : second.kraus_ops()) {
      ComplexMatrix k(n1 * n2, n1 * n2);
      for (Index i = 0; i < n1; ++i) {
        for (Index j = 0; j < n1; ++j) k.block(i * n2, j * n2, n2, n2) = v(i, j) * w;
      }
      ops.push_back(std::move(k));
    }
  }
  return KrausChannel(std::move(ops), tol);
}

/// Schrodinger-picture composition: rho -> outer(inner(rho)).
inline KrausChannel compose(const KrausChannel& outer, const KrausChannel& inner,
                            const Tolerances& tol = {}) {
  if (outer.dim() != inner.dim()) throw InvalidInput("compose: dimension mismatch");
  std::vector<ComplexMatrix> ops;
  ops.reserve(outer.size() * inner.size());
  for (const auto& a : outer.kraus_ops()) {
    for (const auto& b : inner.kraus_ops()) ops.push_back(a * b);
  }
  return KrausChannel(std::move(ops), tol);
}

/// Convex combination sum_i w_i Phi_i. Zero-weight terms are dropped.
inline KrausChannel mixture(const std::vector<std::pair<double, KrausChannel>>& terms,
                            const Tolerances& tol = {}) {
  if (terms.empty()) throw InvalidInput("mixture: no terms");
  double total = 0.0;
  std::vector<ComplexMatrix> ops;
  for (const auto& [w, ch] : terms) {
    if (!(w >= 0.0) || ch.dim() != terms.front().second.dim()) {
      throw InvalidInput("mixture: weights must be nonnegative and dimensions equal");
    }
    total += w;
    if (w == 0.0) continue;
    for (const auto& v : ch.kraus_ops()) ops.push_back(std::sqrt(w) * v);
  }
  if (std::abs(total - 1.0) > tol.fix) throw InvalidInput("mixture: weights must sum to 1");
  return KrausChannel(std::move(ops), tol);
}

inline KrausChannel identity_channel(Index n) {
  if (n < 1) throw InvalidInput("identity_channel: n must be >= 1");
  return KrausChannel({ComplexMatrix::Identity(n, n)});
}

/// rho -> U rho U^*.
inline KrausChannel unitary_channel(const ComplexMatrix& u, const Tolerances& tol = {}) {
  return KrausChannel({u}, tol);
}

/// Generalized Pauli (Weyl) operator X^a Z^b with X|j> = |j+1>, Z|j> = w^j |j>.
inline ComplexMatrix weyl_operator(Index n, Index a, Index b) {
  ComplexMatrix w = ComplexMatrix::Zero(n, n);
  for (Index j = 0; j < n; ++j) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>((b * j) % n) / static_cast<double>(n);
    w((j + a) % n, j) = std::polar(1.0, angle);
  }
  return w;
}

/// rho -> (1 - p) rho + p tr(rho) I/n, presented with the n^2 Weyl unitaries
/// weighted (1 - p) + p/n^2 (identity) and p/n^2 (the rest).
inline KrausChannel make_depolarizing(Index n, double p) {
  if (n < 1) throw InvalidInput("make_depolarizing: n must be >= 1");
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidInput("make_depolarizing: p must lie in [0, 1]");
  const double nn = static_cast<double>(n * n);
  std::vector<ComplexMatrix> ops;
  for (Index a = 0; a < n; ++a) {
    for (Index b = 0; b < n; ++b) {
      const double w = (a == 0 && b == 0) ? (1.0 - p) + p / nn : p / nn;
      if (w == 0.0) continue;
      ops.push_back(std::sqrt(w) * weyl_operator(n, a, b));
    }
  }
  return KrausChannel(std::move(ops));
}

/// Kraus operators sqrt(p_i) U_i with Haar U_i and simplex-uniform p_i.
inline KrausChannel make_random_unitary_mixture(Index n, int k, std::uint64_t seed) {
  if (n < 1) throw InvalidInput("make_random_unitary_mixture: n must be >= 1");
  if (k < 1) throw InvalidInput("make_random_unitary_mixture: k must be >= 1");
  Rng rng(seed);
  const auto weights = random_simplex_weights(static_cast<std::size_t>(k), rng);
  std::vector<ComplexMatrix> ops;
  ops.reserve(weights.size());
  for (double w : weights) ops.push_back(std::sqrt(w) * haar_unitary(n, rng));
  return KrausChannel(std::move(ops));
}

/// Qubit amplitude damping {diag(1, sqrt(1 - eta)), sqrt(eta)|0><1|}.
inline KrausChannel make_amplitude_damping(double eta) {
  if (!(eta >= 0.0 && eta <= 1.0)) throw InvalidInput("make_amplitude_damping: eta must lie in [0, 1]");
  ComplexMatrix k0 = ComplexMatrix::Zero(2, 2);
  k0(0, 0) = 1.0;
  k0(1, 1) = std::sqrt(1.0 - eta);
  ComplexMatrix k1 = ComplexMatrix::Zero(2, 2);
  k1(0, 1) = std::sqrt(eta);
  return KrausChannel({k0, k1});
}

}  // namespace qchan
