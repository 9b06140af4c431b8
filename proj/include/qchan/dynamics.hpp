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

// Orbits sigma_n = That^n(sigma_0) of a bistochastic channel and the
// entropy-production and relaxation inequalities checked along them.
//
// Every BoundCheckResult carries a margin oriented so that margin >= 0 means
// the inequality holds: lhs - rhs for the entropy-gain bounds (gain >= rhs)
// and rhs - lhs for the envelope bounds (distance <= rhs).

#include <cmath>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "qchan/channel.hpp"
#include "qchan/qubit.hpp"

namespace qchan {

struct OrbitStep {
  int n = 0;
  DensityMatrix state;
  double trace_dist = 0.0;   // ||sigma_n - I/N||_1
  double hs_dist_sq = 0.0;   // ||sigma_n - I/N||_2^2
  double entropy = 0.0;      // S(sigma_n)
  double delta_s = 0.0;      // S(sigma_{n+1}) - S(sigma_n)
  std::optional<BlochVector> bloch;
};

struct OrbitLog {
  Index dim = 0;
  std::vector<OrbitStep> steps;  // n = 0 .. n_max
  double hermiticity_drift = 0.0;

  int n_max() const { return static_cast<int>(steps.size()) - 1; }
};

/// Largest accumulated ||sigma - sigma^*||_HS tolerated along an orbit.
inline constexpr double kMaxOrbitDrift = 1e-6;

/// Iterates That from sigma0 for n_max steps, re-symmetrizing each state.
/// Throws NumericalFailure naming the step if a state leaves the density
/// matrices or the accumulated Hermiticity drift exceeds kMaxOrbitDrift.
inline OrbitLog iterate_orbit(const KrausChannel& ch, const DensityMatrix& sigma0, int n_max,
                              const Tolerances& tol = {}) {
  require_bistochastic(ch, "iterate_orbit", tol);
  if (n_max < 1) throw InvalidInput("iterate_orbit: n_max must be >= 1");
  if (sigma0.dim() != ch.dim()) throw InvalidInput("iterate_orbit: state dimension does not match channel");

  const Index n = ch.dim();
  const ComplexMatrix mixed = ComplexMatrix::Identity(n, n) / static_cast<double>(n);
  OrbitLog log;
  log.dim = n;

  std::vector<DensityMatrix> states{sigma0};
  states.reserve(static_cast<std::size_t>(n_max) + 2);
  for (int step = 1; step <= n_max + 1; ++step) {
    const ComplexMatrix next = apply_schrodinger(ch, states.back().matrix());
    log.hermiticity_drift += hermiticity_residual(next);
    if (log.hermiticity_drift > kMaxOrbitDrift) {
      std::ostringstream os;
      os << "iterate_orbit: Hermiticity drift " << log.hermiticity_drift << " at step " << step;
      throw NumericalFailure(os.str());
    }
    try {
      states.push_back(DensityMatrix::validated(next, tol));
    } catch (const InvalidInput& e) {
      std::ostringstream os;
      os << "iterate_orbit: state left the density matrices at step " << step << ": " << e.what();
      throw NumericalFailure(os.str());
    }
  }

  std::vector<double> entropies;
  entropies.reserve(states.size());
  for (const auto& s : states) entropies.push_back(von_neumann_entropy(s, tol));

  for (int k = 0; k <= n_max; ++k) {
    const auto& s = states[static_cast<std::size_t>(k)];
    const ComplexMatrix diff = s.matrix() - mixed;
    OrbitStep row{k, s};
    row.trace_dist = hermitian_trace_norm(diff);
    row.hs_dist_sq = diff.squaredNorm();
    row.entropy = entropies[static_cast<std::size_t>(k)];
    row.delta_s = entropies[static_cast<std::size_t>(k) + 1] - row.entropy;
    if (n == 2) row.bloch = to_bloch(s);
    log.steps.push_back(std::move(row));
  }
  return log;
}

enum class BoundId { streater_eq1, main_eq2, sharp_eq5, envelope_cn, envelope_pure, kappa_sqrt_c };

inline const char* to_string(BoundId id) {
  switch (id) {
    case BoundId::streater_eq1: return "streater_eq1";
    case BoundId::main_eq2: return "main_eq2";
    case BoundId::sharp_eq5: return "sharp_eq5";
    case BoundId::envelope_cn: return "envelope_Cn";
    case BoundId::envelope_pure: return "envelope_pure";
    case BoundId::kappa_sqrt_c: return "kappa_sqrt_C";
  }
  return "unknown";
}

struct BoundCheckResult {
  BoundId bound_id = BoundId::streater_eq1;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  bool satisfied = false;
  bool asserted = true;        // false: informational (e.g. estimated C)
  std::optional<int> step;     // orbit step for envelope checks
};

/// S(That(sigma)) - S(sigma).
inline double entropy_gain(const KrausChannel& ch, const DensityMatrix& sigma, const Tolerances& tol = {}) {
  const DensityMatrix image = DensityMatrix::validated(apply_schrodinger(ch, sigma.matrix()), tol);
  return von_neumann_entropy(image, tol) - von_neumann_entropy(sigma, tol);
}

/// ||sigma - I/N||_2^2.
inline double hs_distance_sq_to_mixed(const DensityMatrix& sigma) {
  const Index n = sigma.dim();
  return (sigma.matrix() - ComplexMatrix::Identity(n, n) / static_cast<double>(n)).squaredNorm();
}

namespace detail {

inline BoundCheckResult entropy_bound(BoundId id, const KrausChannel& ch, const DensityMatrix& sigma,
                                      double coefficient, const Tolerances& tol) {
  if (sigma.dim() != ch.dim()) throw InvalidInput("bound check: state dimension does not match channel");
  BoundCheckResult r;
  r.bound_id = id;
  r.lhs = entropy_gain(ch, sigma, tol);
  r.rhs = coefficient / 2.0 * hs_distance_sq_to_mixed(sigma);
  r.margin = r.lhs - r.rhs;
  r.satisfied = r.margin >= -tol.bound;
  return r;
}

inline void require_rate(double c, const char* what) {
  if (!(c >= 0.0 && c < 1.0)) {
    std::ostringstream os;
    os << what << ": contraction rate " << c << " outside [0, 1)";
    throw InvalidInput(os.str());
  }
}

}  // namespace detail

/// S(That sigma) - S(sigma) >= gamma/2 ||sigma - I/N||_2^2, gamma the
/// spectral gap of an ergodic bistochastic channel.
inline BoundCheckResult check_streater_bound(const KrausChannel& ch, const DensityMatrix& sigma, double gamma,
                                             const Tolerances& tol = {}) {
  require_bistochastic(ch, "check_streater_bound", tol);
  if (!(gamma >= 0.0 && gamma <= 1.0)) throw InvalidInput("check_streater_bound: gamma outside [0, 1]");
  return detail::entropy_bound(BoundId::streater_eq1, ch, sigma, gamma, tol);
}

/// S(That sigma) - S(sigma) >= (1 - C)/2 ||sigma - I/N||_2^2.
inline BoundCheckResult check_main_bound(const KrausChannel& ch, const DensityMatrix& sigma, double c,
                                         const Tolerances& tol = {}) {
  require_bistochastic(ch, "check_main_bound", tol);
  detail::require_rate(c, "check_main_bound");
  return detail::entropy_bound(BoundId::main_eq2, ch, sigma, 1.0 - c, tol);
}

enum class SharpBoundClass { qubit_bistochastic, self_adjoint, qubit_product };

/// Class under which the (1 - C^2)/2 bound is claimed, if any: bistochastic
/// qubit channels and channels with a symmetric superoperator (T = That).
/// Tensor products of qubit channels go through check_sharp_bound_product.
inline std::optional<SharpBoundClass> sharp_bound_class(const KrausChannel& ch, const Tolerances& tol = {}) {
  if (!is_bistochastic(ch, tol)) return std::nullopt;
  if (ch.dim() == 2) return SharpBoundClass::qubit_bistochastic;
  const RealMatrix s = superoperator_schrodinger(ch, tol).matrix;
  if ((s - s.transpose()).cwiseAbs().maxCoeff() <= tol.fix) return SharpBoundClass::self_adjoint;
  return std::nullopt;
}

/// S(That sigma) - S(sigma) >= (1 - C^2)/2 ||sigma - I/N||_2^2. Refuses
/// channels outside sharp_bound_class with OutsideBoundClass.
inline BoundCheckResult check_sharp_bound(const KrausChannel& ch, const DensityMatrix& sigma, double c,
                                          const Tolerances& tol = {}) {
  detail::require_rate(c, "check_sharp_bound");
  if (!sharp_bound_class(ch, tol)) {
    throw OutsideBoundClass(
        "check_sharp_bound: channel is neither a bistochastic qubit channel nor self-adjoint");
  }
  return detail::entropy_bound(BoundId::sharp_eq5, ch, sigma, 1.0 - c * c, tol);
}

/// Sharp bound for the tensor product of bistochastic qubit channels; c is
/// the rate supplied for the product.
inline BoundCheckResult check_sharp_bound_product(std::span<const KrausChannel> qubit_factors,
                                                  const DensityMatrix& sigma, double c, const Tolerances& tol = {}) {
  detail::require_rate(c, "check_sharp_bound_product");
  if (qubit_factors.empty()) throw InvalidInput("check_sharp_bound_product: no factors");
  for (const auto& f : qubit_factors) {
    if (f.dim() != 2 || !is_bistochastic(f, tol)) {
      throw OutsideBoundClass("check_sharp_bound_product: every factor must be a bistochastic qubit channel");
    }
  }
  KrausChannel product = qubit_factors.front();
  for (std::size_t i = 1; i < qubit_factors.size(); ++i) product = tensor_product(product, qubit_factors[i], tol);
  return detail::entropy_bound(BoundId::sharp_eq5, product, sigma, 1.0 - c * c, tol);
}

/// Per step n: ||sigma_n - I/N||_1 <= C^n ||sigma_0 - I/N||_1, and for
/// n >= 1 also < 2 C^{n/2} (N-1)/N.
inline std::vector<BoundCheckResult> check_convergence_envelope(const OrbitLog& log, double c,
                                                                const Tolerances& tol = {}) {
  detail::require_rate(c, "check_convergence_envelope");
  if (log.steps.empty()) throw InvalidInput("check_convergence_envelope: empty orbit");
  const double n = static_cast<double>(log.dim);
  const double d0 = log.steps.front().trace_dist;
  std::vector<BoundCheckResult> out;
  for (const auto& s : log.steps) {
    BoundCheckResult geo;
    geo.bound_id = BoundId::envelope_cn;
    geo.step = s.n;
    geo.lhs = s.trace_dist;
    geo.rhs = std::pow(c, s.n) * d0;
    geo.margin = geo.rhs - geo.lhs;
    geo.satisfied = geo.margin >= -tol.bound;
    out.push_back(geo);
    if (s.n >= 1) {
      BoundCheckResult pure;
      pure.bound_id = BoundId::envelope_pure;
      pure.step = s.n;
      pure.lhs = s.trace_dist;
      pure.rhs = 2.0 * std::pow(c, s.n / 2.0) * (n - 1.0) / n;
      pure.margin = pure.rhs - pure.lhs;
      pure.satisfied = pure.margin > -tol.bound;
      out.push_back(pure);
    }
  }
  return out;
}

/// kappa <= sqrt(C) within tol.eig.
inline BoundCheckResult check_kappa_bound(double kappa_value, double c, const Tolerances& tol = {}) {
  detail::require_rate(c, "check_kappa_bound");
  BoundCheckResult r;
  r.bound_id = BoundId::kappa_sqrt_c;
  r.lhs = kappa_value;
  r.rhs = std::sqrt(c);
  r.margin = r.rhs - r.lhs;
  r.satisfied = r.margin >= -tol.eig;
  return r;
}

/// ||sigma - I/N||_1 for any pure sigma: 2(N-1)/N.
inline double pure_state_distance(Index n) {
  if (n < 2) throw InvalidInput("pure_state_distance: N must be >= 2");
  return 2.0 * static_cast<double>(n - 1) / static_cast<double>(n);
}

}  // namespace qchan
