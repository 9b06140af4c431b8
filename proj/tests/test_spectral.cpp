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

TEST_CASE("commutant dimension", "[spectral]") {
  CHECK(commutant_dimension(identity_channel(2)) == 4);
  CHECK(commutant_dimension(identity_channel(3)) == 9);
  CHECK(commutant_dimension(make_depolarizing(2, 0.5)) == 1);
  CHECK(commutant_dimension(make_depolarizing(3, 0.2)) == 1);
  ComplexMatrix phase = ComplexMatrix::Identity(2, 2);
  phase(1, 1) = std::polar(1.0, 0.7);
  CHECK(commutant_dimension(unitary_channel(phase)) == 2);
  CHECK_THROWS_AS(commutant_dimension(make_amplitude_damping(0.3)), InvalidInput);
}

TEST_CASE("ergodicity verdicts", "[spectral]") {
  CHECK_FALSE(is_ergodic(identity_channel(2)));
  CHECK(is_ergodic(make_depolarizing(2, 0.3)));
  CHECK_FALSE(is_ergodic(unitary_channel(oracle::paulis()[2])));
  CHECK(fixed_space_dimension(identity_channel(3)) == 9);
  CHECK(fixed_space_dimension(make_depolarizing(3, 0.3)) == 1);
}

TEST_CASE("spectral gap of depolarizing channels", "[spectral]") {
  for (double p : {0.1, 0.3, 0.5, 0.9}) {
    const SpectralReport r = spectral_gap(make_depolarizing(2, p));
    CHECK(r.gap_gamma == Approx(1.0 - (1.0 - p) * (1.0 - p)).margin(1e-10));
    CHECK(r.kappa == Approx(1.0 - p).margin(1e-10));
    CHECK(r.is_ergodic);
    CHECK(r.commutant_dim == 1);
  }
  const SpectralReport r3 = spectral_gap(make_depolarizing(3, 0.4));
  CHECK(r3.gap_gamma == Approx(0.64).margin(1e-10));
  CHECK(r3.eigenvalues_tthat.size() == 8);
  const SpectralReport full = spectral_gap(make_depolarizing(3, 1.0));
  CHECK(full.gap_gamma == Approx(1.0).margin(1e-12));
  CHECK(full.kappa == Approx(0.0).margin(1e-12));
}

TEST_CASE("spectral gap of a near-identity mixture", "[spectral]") {
  const double eps = 0.01;
  const KrausChannel ch = mixture({{1.0 - eps, identity_channel(2)}, {eps, make_depolarizing(2, 1.0)}});
  CHECK(spectral_gap(ch).gap_gamma == Approx(1.0 - (1.0 - eps) * (1.0 - eps)).margin(1e-10));
  CHECK(spectral_gap(ch).gap_gamma == Approx(0.0199).margin(1e-10));
}

TEST_CASE("kappa", "[spectral]") {
  CHECK(kappa(make_depolarizing(2, 0.5)) == Approx(0.5).margin(1e-12));
  const auto s = oracle::paulis();
  const KrausChannel flip = compose(unitary_channel(s[0]), make_depolarizing(2, 0.2));
  CHECK(kappa(flip) == Approx(0.8).margin(1e-10));
  CHECK_THROWS_AS(kappa(identity_channel(2)), NotErgodic);
}

TEST_CASE("non-ergodic channels", "[spectral]") {
  CHECK_THROWS_AS(spectral_gap(identity_channel(2)), NotErgodic);
  const SpectralReport r = analyze_spectrum(identity_channel(2));
  CHECK_FALSE(r.is_ergodic);
  CHECK(r.commutant_dim == 4);
  CHECK_THROWS_AS(spectral_gap(make_amplitude_damping(0.2)), InvalidInput);
}

TEST_CASE("spectral quantities against oracles", "[spectral][property]") {
  oracle::Gen g(21);
  int ergodic = 0, non_ergodic = 0;
  for (int t = 0; t < 120; ++t) {
    const Index n = g.uniform_int(2, 3);
    const int k = g.uniform_int(1, 4);
    const auto ops = g.unitary_mixture(n, k);
    const KrausChannel ch(ops);
    const SpectralReport r = analyze_spectrum(ch);
    // A single unitary commutes with its own spectral projections.
    if (k == 1) CHECK_FALSE(r.is_ergodic);
    if (!r.is_ergodic) {
      ++non_ergodic;
      CHECK(r.fixed_space_dim >= 2);
      continue;
    }
    ++ergodic;
    CHECK(r.one_minus_gamma == Approx(oracle::traceless_gain_sq(ops)).margin(1e-9));
    CHECK(r.kappa == Approx(oracle::subleading_modulus(ops)).margin(1e-8));
    CHECK(r.asymmetry_residual < 1e-10);
    for (double x : r.eigenvalues_tthat) {
      CHECK(x >= 0.0);
      CHECK(x <= 1.0);
    }
    // kappa^2 <= 1 - gamma: an eigenvector of That bounds the HS gain.
    CHECK(r.kappa * r.kappa <= r.one_minus_gamma + 1e-9);
  }
  CHECK(ergodic > 50);
  CHECK(non_ergodic > 10);
}
