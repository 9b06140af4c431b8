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

TEST_CASE("trace norm of simple matrices", "[linalg]") {
  ComplexMatrix d(2, 2);
  d << 1.0, 0.0, 0.0, -1.0;
  CHECK(trace_norm(d) == Approx(2.0).margin(1e-14));
  CHECK(trace_norm(ComplexMatrix::Zero(3, 3)) == 0.0);
  RealMatrix r(2, 2);
  r << 3.0, 0.0, 0.0, -4.0;
  const RealVector sv = svd_singular_values(r);
  CHECK(sv(0) == Approx(4.0));
  CHECK(sv(1) == Approx(3.0));
}

TEST_CASE("trace norm of pure state minus maximally mixed", "[linalg]") {
  oracle::Gen g(1);
  for (Index n = 2; n <= 6; ++n) {
    const ComplexVector psi = g.unit_vector(n);
    const ComplexMatrix a = psi * psi.adjoint() - ComplexMatrix::Identity(n, n) / double(n);
    CHECK(trace_norm(a) == Approx(2.0 * double(n - 1) / double(n)).margin(1e-12));
    CHECK(hermitian_trace_norm(a) == Approx(oracle::trace_norm(a)).margin(1e-12));
  }
}

TEST_CASE("Hilbert-Schmidt norm and inner product", "[linalg]") {
  const auto s = oracle::paulis();
  CHECK(hs_norm(ComplexMatrix::Identity(3, 3)) == Approx(std::sqrt(3.0)));
  CHECK(hs_norm(s[0]) == Approx(std::sqrt(2.0)));
  ComplexMatrix a(2, 2);
  a << 0.5, 0.0, 0.0, -0.5;
  CHECK(hs_norm(a) == Approx(1.0 / std::sqrt(2.0)));
  CHECK(std::abs(hs_inner(ComplexMatrix::Identity(2, 2), ComplexMatrix::Identity(2, 2)) - Complex(2.0)) < 1e-15);
  CHECK(std::abs(hs_inner(s[0], s[1])) < 1e-15);
  ComplexMatrix p0 = ComplexMatrix::Zero(2, 2);
  p0(0, 0) = 1.0;
  CHECK(std::abs(hs_inner(s[2], p0) - Complex(1.0)) < 1e-15);
  CHECK_THROWS_AS(hs_inner(ComplexMatrix::Identity(2, 2), ComplexMatrix::Identity(3, 3)), InvalidInput);
}

TEST_CASE("von Neumann entropy", "[linalg]") {
  for (Index n = 2; n <= 5; ++n) {
    CHECK(von_neumann_entropy(DensityMatrix::maximally_mixed(n)) == Approx(std::log(double(n))).margin(1e-12));
  }
  oracle::Gen g(2);
  CHECK(von_neumann_entropy(DensityMatrix::pure(g.unit_vector(4))) == Approx(0.0).margin(1e-12));
  ComplexMatrix d = ComplexMatrix::Zero(2, 2);
  d(0, 0) = 0.75;
  d(1, 1) = 0.25;
  const double expected = -0.75 * std::log(0.75) - 0.25 * std::log(0.25);
  CHECK(von_neumann_entropy(d) == Approx(expected).margin(1e-14));
  CHECK(von_neumann_entropy(d) == Approx(0.562335).margin(1e-6));
  ComplexMatrix bad = ComplexMatrix::Zero(2, 2);
  bad(0, 0) = 1.5;
  bad(1, 1) = -0.5;
  CHECK_THROWS_AS(von_neumann_entropy(bad), InvalidInput);
}

TEST_CASE("density matrix validation", "[linalg]") {
  ComplexMatrix nonherm(2, 2);
  nonherm << 0.5, 0.1, 0.0, 0.5;
  CHECK_THROWS_AS(DensityMatrix::validated(nonherm), InvalidInput);
  CHECK_THROWS_AS(DensityMatrix::validated(ComplexMatrix::Identity(2, 2)), InvalidInput);
  ComplexMatrix neg = ComplexMatrix::Zero(2, 2);
  neg(0, 0) = 1.1;
  neg(1, 1) = -0.1;
  CHECK_THROWS_AS(DensityMatrix::validated(neg), InvalidInput);
  CHECK_THROWS_AS(DensityMatrix::validated(ComplexMatrix::Zero(2, 3)), InvalidInput);
  ComplexMatrix tiny = ComplexMatrix::Zero(2, 2);
  tiny(0, 0) = 1.0 + 1e-12;
  tiny(1, 1) = -1e-12;
  const DensityMatrix ok = DensityMatrix::validated(tiny);
  CHECK(von_neumann_entropy(ok) == Approx(0.0).margin(1e-10));
}

TEST_CASE("Hermitian eigendecomposition", "[linalg]") {
  const auto s = oracle::paulis();
  const HermitianEigen e = hermitian_eigendecomposition(s[2]);
  CHECK(e.values(0) == Approx(-1.0));
  CHECK(e.values(1) == Approx(1.0));
  const HermitianEigen id = hermitian_eigendecomposition(ComplexMatrix::Identity(2, 2));
  CHECK(id.values(0) == Approx(1.0));
  CHECK(id.values(1) == Approx(1.0));
  const HermitianEigen x = hermitian_eigendecomposition(s[0]);
  const ComplexMatrix recon = x.vectors * x.values.cast<Complex>().asDiagonal() * x.vectors.adjoint();
  CHECK((recon - s[0]).norm() < 1e-12);
  ComplexMatrix nonherm(2, 2);
  nonherm << 0.0, 1.0, 0.0, 0.0;
  CHECK_THROWS_AS(hermitian_eigendecomposition(nonherm), InvalidInput);
  ComplexMatrix slightly = s[0];
  slightly(0, 1) += 1e-12;
  const HermitianEigen sl = hermitian_eigendecomposition(slightly);
  CHECK(sl.symmetrization_residual > 0.0);
  CHECK(sl.symmetrization_residual < 1e-11);
}

TEST_CASE("singular values and non-square input", "[linalg]") {
  oracle::Gen g(3);
  const ComplexMatrix u = g.unitary(4);
  const RealVector sv = svd_singular_values(u);
  for (Index i = 0; i < sv.size(); ++i) CHECK(sv(i) == Approx(1.0).margin(1e-12));
  RealMatrix m = RealMatrix::Zero(3, 3);
  m.diagonal() << 0.5, 0.8, 0.5;
  const RealVector d = svd_singular_values(m);
  CHECK(d(0) == Approx(0.8));
  CHECK(d(2) == Approx(0.5));
  CHECK_THROWS_AS(hermitian_eigendecomposition(ComplexMatrix::Zero(2, 3)), InvalidInput);
}

TEST_CASE("norm properties on random matrices", "[linalg][property]") {
  oracle::Gen g(4);
  for (int t = 0; t < 200; ++t) {
    const Index n = g.uniform_int(1, 6);
    const ComplexMatrix a = g.gaussian(n, n);
    const ComplexMatrix u = g.unitary(n);
    const ComplexMatrix v = g.unitary(n);
    const double tn = trace_norm(a);
    CHECK(tn == Approx(oracle::trace_norm(a)).margin(1e-9));
    CHECK(tn >= hs_norm(a) - 1e-12);
    CHECK(hs_norm(a) == Approx(oracle::hs_norm(a)).margin(1e-12));
    CHECK(trace_norm(ComplexMatrix(u * a * v)) == Approx(tn).margin(1e-9));
    CHECK(hs_norm(ComplexMatrix(u * a * v)) == Approx(hs_norm(a)).margin(1e-9));
    CHECK(hs_inner(a, a).real() == Approx(hs_norm(a) * hs_norm(a)).margin(1e-9));
    const ComplexMatrix rho = g.any_state(n);
    const double s = von_neumann_entropy(rho);
    CHECK(s == Approx(oracle::entropy(rho)).margin(1e-10));
    CHECK(von_neumann_entropy(ComplexMatrix(u * rho * u.adjoint())) == Approx(s).margin(1e-9));
    CHECK(s >= -1e-12);
    CHECK(s <= std::log(double(n)) + 1e-12);
  }
}

TEST_CASE("tolerances validation", "[linalg]") {
  Tolerances t;
  CHECK_NOTHROW(t.validate());
  t.eig = -1.0;
  CHECK_THROWS_AS(t.validate(), InvalidInput);
}
