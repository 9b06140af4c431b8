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


#include <catch2/catch_amalgamated.hpp>

#include "qchan/qchan.hpp"
#include "test_support.hpp"

using namespace qchan;
using Catch::Approx;

TEST_CASE("Bloch vectors", "[qubit]") {
  ComplexMatrix p0 = ComplexMatrix::Zero(2, 2);
  p0(0, 0) = 1.0;
  const BlochVector r0 = to_bloch(DensityMatrix::validated(p0));
  CHECK(r0.r1 == Approx(0.0).margin(1e-15));
  CHECK(r0.r3 == Approx(1.0));
  const BlochVector mm = to_bloch(DensityMatrix::maximally_mixed(2));
  CHECK(mm.norm() == Approx(0.0).margin(1e-15));
  const DensityMatrix plus = from_bloch({1.0, 0.0, 0.0});
  CHECK(plus.matrix()(0, 1).real() == Approx(0.5));
  CHECK_THROWS_AS(from_bloch({0.8, 0.8, 0.0}), InvalidInput);
  CHECK_THROWS_AS(to_bloch(DensityMatrix::maximally_mixed(3)), InvalidInput);
  oracle::Gen g(31);
  for (int t = 0; t < 50; ++t) {
    const DensityMatrix rho = DensityMatrix::validated(g.any_state(2));
    const BlochVector r = to_bloch(rho);
    CHECK((from_bloch(r).matrix() - rho.matrix()).norm() < 1e-12);
    CHECK(r.norm() <= 1.0 + 1e-12);
  }
}

TEST_CASE("King-Ruskai block of standard channels", "[qubit]") {
  const KingRuskaiForm dep = king_ruskai_form(make_depolarizing(2, 0.5));
  CHECK((dep.m - 0.5 * Eigen::Matrix3d::Identity()).norm() < 1e-12);
  CHECK(dep.c_exact == Approx(0.5));
  CHECK(qubit_gap_exact(dep) == Approx(0.75));
  const auto s = oracle::paulis();
  const KingRuskaiForm z = king_ruskai_form(unitary_channel(s[2]));
  CHECK((z.m - Eigen::Vector3d(-1, -1, 1).asDiagonal().toDenseMatrix()).norm() < 1e-12);
  CHECK(z.c_exact == Approx(1.0));
  const KrausChannel dephase = mixture({{0.5, identity_channel(2)}, {0.5, unitary_channel(s[2])}});
  const KingRuskaiForm d = king_ruskai_form(dephase);
  CHECK((d.m - Eigen::Vector3d(0, 0, 1).asDiagonal().toDenseMatrix()).norm() < 1e-12);
  CHECK(d.c_exact == Approx(1.0));
  CHECK(qubit_gap_exact(king_ruskai_form(identity_channel(2))) == Approx(0.0).margin(1e-12));
  CHECK(qubit_gap_exact(king_ruskai_form(make_depolarizing(2, 1.0))) == Approx(1.0).margin(1e-12));
  CHECK_THROWS_AS(king_ruskai_form(make_amplitude_damping(0.3)), InvalidInput);
  CHECK_THROWS_AS(king_ruskai_form(make_depolarizing(3, 0.3)), InvalidInput);
}

TEST_CASE("qubit block against the Pauli oracle", "[qubit][property]") {
  oracle::Gen g(32);
  for (int t = 0; t < 100; ++t) {
    const auto ops = g.unitary_mixture(2, g.uniform_int(1, 4));
    const KrausChannel ch(ops);
    const KingRuskaiForm f = king_ruskai_form(ch);
    const Eigen::Matrix3d m = oracle::pauli_block(ops);
    CHECK((f.m - m).norm() < 1e-12);
    CHECK(f.c_exact == Approx(oracle::operator_norm(m)).margin(1e-9));
    CHECK(f.xi_abs(0) >= f.xi_abs(1));
    CHECK(f.xi_abs(1) >= f.xi_abs(2));
    // Bloch vectors shrink under M.
    const DensityMatrix rho = DensityMatrix::validated(g.any_state(2));
    const BlochVector r = to_bloch(rho);
    const BlochVector out = to_bloch(DensityMatrix::validated(apply_schrodinger(ch, rho.matrix())));
    CHECK(out.norm() <= r.norm() * f.c_exact + 1e-12);
    const Eigen::Vector3d mr = m * Eigen::Vector3d(r.r1, r.r2, r.r3);
    CHECK((mr - Eigen::Vector3d(out.r1, out.r2, out.r3)).norm() < 1e-12);
  }
}

TEST_CASE("qubit gap identity", "[qubit][property]") {
  oracle::Gen g(33);
  for (int t = 0; t < 100; ++t) {
    const KrausChannel ch(g.unitary_mixture(2, g.uniform_int(2, 4)));
    const SpectralReport r = analyze_spectrum(ch);
    if (!r.is_ergodic) continue;
    CHECK(r.gap_gamma == Approx(qubit_gap_exact(king_ruskai_form(ch))).margin(1e-8));
  }
}
