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

// Trace-norm contraction rate of That on traceless Hermitian operators,
//
//   C = sup_{A = A^*, tr A = 0} ||That(A)||_1 / ||A||_1
//     = 1/2 sup_{<psi|phi> = 0} ||That(|psi><psi| - |phi><phi|)||_1 ,
//
// estimated by maximizing the right-hand side over orthonormal pairs. For
// N >= 3 the optimum is only a lower bound on C: the optimizer is local.
// sample_ratio_audit samples the left-hand side and feeds any sample that
// beats the estimate back into the optimizer.
//
// Qubit bistochastic channels bypass the optimizer: C = ||M||.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <sstream>
#include <vector>

#include "qchan/channel.hpp"
#include "qchan/qubit.hpp"
#include "qchan/random.hpp"

namespace qchan {

enum class ContractionMethod { qubit_exact, pair_optimization };

inline const char* to_string(ContractionMethod m) {
  return m == ContractionMethod::qubit_exact ? "qubit_exact" : "pair_optimization";
}

struct ContractionEstimate {
  double c_lower = 0.0;
  ContractionMethod method = ContractionMethod::pair_optimization;
  int restarts = 0;
  ComplexVector psi;  // best pair, orthonormal
  ComplexVector phi;
  bool converged = false;
};

namespace detail {

struct Pair {
  ComplexVector psi;
  ComplexVector phi;
  double value = -1.0;
};

/// Gram-Schmidt; false if the pair is (numerically) linearly dependent.
inline bool orthonormalize(ComplexVector& psi, ComplexVector& phi) {
  const double a = psi.norm();
  if (!(a > 0.0) || !std::isfinite(a)) return false;
  psi /= a;
  const double b0 = phi.norm();
  phi -= psi.dot(phi) * psi;
  const double b = phi.norm();
  if (!(b > 1e-6 * b0) || !(b > 0.0)) return false;
  phi /= b;
  return true;
}

inline double pair_value(const KrausChannel& ch, const ComplexVector& psi, const ComplexVector& phi) {
  const ComplexMatrix d = psi * psi.adjoint() - phi * phi.adjoint();
  return 0.5 * hermitian_trace_norm(apply_schrodinger(ch, d));
}

/// Alternating ascent on 1/2 tr(Y That(D)) over the pair and over
/// Hermitian Y with ||Y||_op <= 1. For fixed Y the best pair is the
/// extreme eigenvector pair of T(Y); for a fixed pair the best Y is the
/// sign of That(D). The value never decreases.
inline void alternating_ascent(const KrausChannel& ch, Pair& p, int max_iter = 200) {
  for (int it = 0; it < max_iter; ++it) {
    const ComplexMatrix d = p.psi * p.psi.adjoint() - p.phi * p.phi.adjoint();
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> img(hermitian_part(apply_schrodinger(ch, d)));
    const RealVector& lam = img.eigenvalues();
    RealVector sign(lam.size());
    for (Index i = 0; i < lam.size(); ++i) sign(i) = lam(i) >= 0.0 ? 1.0 : -1.0;
    const ComplexMatrix y = img.eigenvectors() * sign.asDiagonal() * img.eigenvectors().adjoint();
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> h(hermitian_part(apply_heisenberg(ch, y)));
    const Index n = h.eigenvalues().size();
    Pair next{h.eigenvectors().col(n - 1), h.eigenvectors().col(0), -1.0};
    next.value = pair_value(ch, next.psi, next.phi);
    if (!(next.value > p.value + 1e-15)) return;
    p = std::move(next);
  }
}

/// Derivative-free pattern search over the 4N real coordinates of
/// (psi, phi), re-orthonormalizing after every move. Coordinate moves plus
/// two random directions per sweep; the step halves after a failed sweep.
/// Returns true if the step fell below `min_step` within the budget.
inline bool pattern_polish(const KrausChannel& ch, Pair& p, Rng& rng, double min_step = 1e-9,
                           int max_evals = 4000) {
  const Index n = p.psi.size();
  const Index dim = 4 * n;
  auto pack = [n](const Pair& q) {
    RealVector x(4 * n);
    x.segment(0, n) = q.psi.real();
    x.segment(n, n) = q.psi.imag();
    x.segment(2 * n, n) = q.phi.real();
    x.segment(3 * n, n) = q.phi.imag();
    return x;
  };
  auto unpack = [&](const RealVector& x, Pair& q) {
    q.psi = x.segment(0, n).cast<Complex>() + Complex(0.0, 1.0) * x.segment(n, n).cast<Complex>();
    q.phi = x.segment(2 * n, n).cast<Complex>() + Complex(0.0, 1.0) * x.segment(3 * n, n).cast<Complex>();
    if (!orthonormalize(q.psi, q.phi)) return false;
    q.value = pair_value(ch, q.psi, q.phi);
    return true;
  };

  RealVector x = pack(p);
  double step = 1e-2;
  int evals = 0;
  Pair trial;
  while (step > min_step && evals < max_evals) {
    bool improved = false;
    auto attempt = [&](const RealVector& dir) {
      for (double sgn : {1.0, -1.0}) {
        ++evals;
        if (unpack(x + sgn * step * dir, trial) && trial.value > p.value) {
          p = trial;
          x = pack(p);
          improved = true;
          return;
        }
      }
    };
    for (Index j = 0; j < dim; ++j) attempt(RealVector::Unit(dim, j));
    for (int r = 0; r < 2; ++r) {
      RealVector dir(dim);
      for (Index j = 0; j < dim; ++j) dir(j) = standard_normal(rng);
      attempt(dir / dir.norm());
    }
    if (!improved) step *= 0.5;
  }
  return step <= min_step;
}

/// Local maximization from a starting pair. `converged` reports whether
/// the final pattern search terminated on its step threshold.
inline Pair local_maximize(const KrausChannel& ch, Pair start, Rng& rng, bool& converged) {
  start.value = pair_value(ch, start.psi, start.phi);
  converged = false;
  for (int cycle = 0; cycle < 4; ++cycle) {
    alternating_ascent(ch, start);
    const double before = start.value;
    converged = pattern_polish(ch, start, rng);
    if (!(start.value > before + 1e-13)) break;
  }
  return start;
}

}  // namespace detail

/// 1/2 ||That(|psi><psi| - |phi><phi|)||_1 after Gram-Schmidt of (psi, phi).
inline double pair_objective(const KrausChannel& ch, const ComplexVector& psi, const ComplexVector& phi) {
  if (psi.size() != ch.dim() || phi.size() != ch.dim()) {
    throw InvalidInput("pair_objective: vector dimension does not match channel");
  }
  ComplexVector u = psi;
  ComplexVector w = phi;
  if (!detail::orthonormalize(u, w)) {
    throw InvalidInput("pair_objective: vectors are linearly dependent");
  }
  return detail::pair_value(ch, u, w);
}

/// Multi-start local maximization of pair_objective. Restart r draws its
/// start from sub-stream r of `seed` (restart 0 starts at (e_0, e_1)), so
/// the result is deterministic and nondecreasing in `restarts`.
inline ContractionEstimate optimize_pair_objective(const KrausChannel& ch, int restarts, std::uint64_t seed) {
  if (restarts < 1) throw InvalidInput("estimate_contraction_rate: restarts must be >= 1");
  ContractionEstimate est;
  est.method = ContractionMethod::pair_optimization;
  est.restarts = restarts;
  const Index n = ch.dim();
  if (n < 2) {
    est.c_lower = 0.0;
    est.converged = true;
    return est;
  }
  est.c_lower = -1.0;
  for (int r = 0; r < restarts; ++r) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(r)));
    detail::Pair start;
    if (r == 0) {
      start.psi = ComplexVector::Unit(n, 0);
      start.phi = ComplexVector::Unit(n, 1);
    } else {
      do {
        start.psi = random_unit_vector(n, rng);
        start.phi = random_unit_vector(n, rng);
      } while (!detail::orthonormalize(start.psi, start.phi));
    }
    bool converged = false;
    const detail::Pair best = detail::local_maximize(ch, std::move(start), rng, converged);
    if (best.value > est.c_lower) {
      est.c_lower = best.value;
      est.psi = best.psi;
      est.phi = best.phi;
      est.converged = converged;
    }
  }
  return est;
}

/// Exact C = ||M|| with the pair of Bloch vectors +-v, v the top right
/// singular vector of M.
inline ContractionEstimate qubit_exact_contraction(const KrausChannel& ch, const Tolerances& tol = {}) {
  const KingRuskaiForm form = king_ruskai_form(ch, tol);
  Eigen::JacobiSVD<Eigen::Matrix3d> svd(form.m, Eigen::ComputeFullV);
  const Eigen::Vector3d v = svd.matrixV().col(0);
  const auto s = pauli_matrices();
  const ComplexMatrix h = v(0) * s[0] + v(1) * s[1] + v(2) * s[2];
  const HermitianEigen eig = hermitian_eigendecomposition(h, tol);
  ContractionEstimate est;
  est.c_lower = form.c_exact;
  est.method = ContractionMethod::qubit_exact;
  est.psi = eig.vectors.col(1);
  est.phi = eig.vectors.col(0);
  est.converged = true;
  return est;
}

/// Qubit bistochastic channels use the exact block norm; everything else
/// runs the pair optimizer.
inline ContractionEstimate estimate_contraction_rate(const KrausChannel& ch, int restarts, std::uint64_t seed,
                                                     const Tolerances& tol = {}) {
  if (restarts < 1) throw InvalidInput("estimate_contraction_rate: restarts must be >= 1");
  if (ch.dim() == 2 && is_bistochastic(ch, tol)) {
    ContractionEstimate est = qubit_exact_contraction(ch, tol);
    est.restarts = restarts;
    return est;
  }
  return optimize_pair_objective(ch, restarts, seed);
}

struct AuditViolation {
  int trial = 0;
  double ratio = 0.0;
};

struct AuditReport {
  int trials = 0;
  double max_ratio = 0.0;
  double initial_c = 0.0;
  std::vector<AuditViolation> violators;  // against the initial estimate
  int refinement_rounds = 0;
  int remaining_violators = 0;
  bool conclusive = true;      // no sample beats the refined estimate
  ContractionEstimate refined;
};

/// Samples traceless Hermitian A with Gaussian coordinates in the
/// traceless basis and compares ||That(A)||_1 / ||A||_1 with the estimate.
///
/// Refinement: for a violator A = sum_i a_i |psi_i><psi_i| -
/// sum_j b_j |phi_j><phi_j| (a, b > 0) the ratio is a convex combination of
/// pair objectives over its eigenvector pairs (psi_i, phi_j), so the best
/// such pair already matches the violator; it seeds a local maximization.
/// Rounds stop when no violator remains or after `max_rounds`.
inline AuditReport sample_ratio_audit(const KrausChannel& ch, const ContractionEstimate& estimate, int trials,
                                      std::uint64_t seed, const Tolerances& tol = {}, int max_rounds = 8) {
  if (trials < 1) throw InvalidInput("sample_ratio_audit: trials must be >= 1");
  AuditReport rep;
  rep.trials = trials;
  rep.initial_c = estimate.c_lower;
  rep.refined = estimate;

  const auto basis = hermitian_operator_basis(ch.dim());
  Rng rng(seed);
  std::vector<ComplexMatrix> violator_ops;
  std::vector<double> violator_ratios;
  if (basis.size() > 1) {
    for (int t = 0; t < trials; ++t) {
      ComplexMatrix a = ComplexMatrix::Zero(ch.dim(), ch.dim());
      for (std::size_t i = 1; i < basis.size(); ++i) a += standard_normal(rng) * basis[i];
      const double ratio = hermitian_trace_norm(apply_schrodinger(ch, a)) / hermitian_trace_norm(a);
      rep.max_ratio = std::max(rep.max_ratio, ratio);
      if (ratio > estimate.c_lower + tol.audit) {
        rep.violators.push_back({t, ratio});
        violator_ops.push_back(std::move(a));
        violator_ratios.push_back(ratio);
      }
    }
  }

  auto remaining = [&] {
    int count = 0;
    for (double r : violator_ratios) count += r > rep.refined.c_lower + tol.audit ? 1 : 0;
    return count;
  };
  rep.remaining_violators = remaining();
  Rng polish_rng(derive_seed(seed, 0xA0D1ULL));
  while (rep.remaining_violators > 0 && rep.refinement_rounds < max_rounds) {
    ++rep.refinement_rounds;
    std::vector<std::size_t> order;
    for (std::size_t i = 0; i < violator_ops.size(); ++i) {
      if (violator_ratios[i] > rep.refined.c_lower + tol.audit) order.push_back(i);
    }
    std::sort(order.begin(), order.end(),
              [&](std::size_t l, std::size_t r) { return violator_ratios[l] > violator_ratios[r]; });
    if (order.size() > 8) order.resize(8);
    for (std::size_t idx : order) {
      const HermitianEigen eig = hermitian_eigendecomposition(violator_ops[idx], tol);
      detail::Pair seed_pair;
      for (Index i = 0; i < eig.values.size(); ++i) {
        if (eig.values(i) <= 0.0) continue;
        for (Index j = 0; j < eig.values.size(); ++j) {
          if (eig.values(j) >= 0.0) continue;
          const ComplexVector psi = eig.vectors.col(i);
          const ComplexVector phi = eig.vectors.col(j);
          const double v = detail::pair_value(ch, psi, phi);
          if (v > seed_pair.value) seed_pair = {psi, phi, v};
        }
      }
      if (seed_pair.value < 0.0) continue;
      bool converged = false;
      const detail::Pair best = detail::local_maximize(ch, std::move(seed_pair), polish_rng, converged);
      if (best.value > rep.refined.c_lower) {
        rep.refined.c_lower = best.value;
        rep.refined.psi = best.psi;
        rep.refined.phi = best.phi;
        rep.refined.method = ContractionMethod::pair_optimization;
        rep.refined.converged = converged;
      }
    }
    rep.remaining_violators = remaining();
  }
  rep.conclusive = rep.remaining_violators == 0;
  return rep;
}

}  // namespace qchan
