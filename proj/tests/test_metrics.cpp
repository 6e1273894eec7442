// Copyright 2026 The corrlab Authors.
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

#include <cmath>

#include "corrlab/entropy.hpp"
#include "corrlab/metrics.hpp"
#include "doctest.h"
#include "test_util.hpp"

using namespace corrlab;
using testutil::random_density;

TEST_CASE("fidelity closed forms") {
  ComplexMatrix p0 = ComplexMatrix::Zero(2, 2);
  p0(0, 0) = 1.0;
  ComplexMatrix p1 = ComplexMatrix::Zero(2, 2);
  p1(1, 1) = 1.0;
  CHECK(fidelity(p0, p0) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(fidelity(p0, p1) == doctest::Approx(0.0).epsilon(1e-10));

  // Commuting states: F = sum sqrt(p_i q_i).
  ComplexMatrix a = ComplexMatrix::Zero(3, 3);
  ComplexMatrix b = ComplexMatrix::Zero(3, 3);
  double p[3] = {0.5, 0.3, 0.2};
  double q[3] = {0.1, 0.6, 0.3};
  double expect = 0.0;
  for (int i = 0; i < 3; ++i) {
    a(i, i) = p[i];
    b(i, i) = q[i];
    expect += std::sqrt(p[i] * q[i]);
  }
  CHECK(fidelity(a, b) == doctest::Approx(expect).epsilon(1e-10));

  // Pure states: F = |<psi|phi>|.
  RngStream rng(42, 9);
  ComplexVector psi = haar_state(5, rng);
  ComplexVector phi = haar_state(5, rng);
  double overlap = std::abs((psi.adjoint() * phi)(0));
  CHECK(fidelity(ComplexMatrix(psi * psi.adjoint()),
                 ComplexMatrix(phi * phi.adjoint())) ==
        doctest::Approx(overlap).epsilon(1e-9));
}

TEST_CASE("fidelity equals maximal purification overlap") {
  // Independent oracle: F = max_U |tr(U X)| = ||X||_1 with
  // X_{kj} = sqrt(l_k m_j) <v_k|w_j> from the eigendecompositions.
  RngStream rng(7, 11);
  for (int t = 0; t < 50; ++t) {
    RngStream sub = rng.substream(static_cast<std::uint64_t>(t));
    int d = 2 + static_cast<int>(sub.uniform() * 5);
    ComplexMatrix rho = random_density(d, sub);
    ComplexMatrix sig = random_density(d, sub);
    HermitianEig er = hermitian_eig(rho);
    HermitianEig es = hermitian_eig(sig);
    ComplexMatrix x(d, d);
    for (int k = 0; k < d; ++k)
      for (int j = 0; j < d; ++j)
        x(k, j) = std::sqrt(std::max(0.0, er.values(k))) *
                  std::sqrt(std::max(0.0, es.values(j))) *
                  (er.vectors.col(k).adjoint() * es.vectors.col(j))(0);
    CHECK(std::abs(trace_norm(x) - fidelity(rho, sig)) <= 1e-8);
  }
}

TEST_CASE("generalized fidelity and subnormalized inputs") {
  RngStream rng(3, 5);
  ComplexMatrix rho = random_density(4, rng);
  ComplexMatrix sig = random_density(4, rng);
  // One normalized argument: reduces to plain fidelity.
  CHECK(generalized_fidelity(rho, ComplexMatrix(0.5 * sig)) ==
        doctest::Approx(fidelity(rho, ComplexMatrix(0.5 * sig)))
            .epsilon(1e-7));
  // Both subnormalized: additive missing-trace term.
  double f = fidelity(ComplexMatrix(0.8 * rho), ComplexMatrix(0.5 * sig));
  CHECK(generalized_fidelity(ComplexMatrix(0.8 * rho),
                             ComplexMatrix(0.5 * sig)) ==
        doctest::Approx(f + std::sqrt(0.2 * 0.5)).epsilon(1e-10));
  CHECK_THROWS(generalized_fidelity(ComplexMatrix(1.5 * rho), sig));
}

TEST_CASE("purified distance basics") {
  RngStream rng(8, 2);
  ComplexMatrix rho = random_density(5, rng);
  CHECK(purified_distance(rho, rho) == doctest::Approx(0.0).epsilon(1e-8));
  ComplexMatrix p0 = ComplexMatrix::Zero(2, 2);
  p0(0, 0) = 1.0;
  ComplexMatrix p1 = ComplexMatrix::Zero(2, 2);
  p1(1, 1) = 1.0;
  CHECK(purified_distance(p0, p1) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("trace-distance sandwich D1 <= D <= sqrt(2 D1)") {
  RngStream base(1001, 1);
  for (int t = 0; t < 1000; ++t) {
    RngStream rng = base.substream(static_cast<std::uint64_t>(t));
    int d = 2 + static_cast<int>(rng.uniform() * 7);
    ComplexMatrix rho = random_density(d, rng);
    ComplexMatrix sig = random_density(d, rng);
    double d1 = d1_distance(rho, sig);
    double dp = purified_distance(rho, sig);
    REQUIRE(d1 <= dp + 1e-9);
    REQUIRE(dp <= std::sqrt(2.0 * d1) + 1e-9);
  }
}

TEST_CASE("D1 formula matches the variational route") {
  RngStream base(77, 3);
  for (int t = 0; t < 200; ++t) {
    RngStream rng = base.substream(static_cast<std::uint64_t>(t));
    int d = 2 + static_cast<int>(rng.uniform() * 6);
    ComplexMatrix rho = random_density(d, rng);
    ComplexMatrix sig = random_density(d, rng);
    if (t % 3 == 0) sig *= 0.6 + 0.4 * rng.uniform();  // subnormalized
    REQUIRE(std::abs(d1_distance(rho, sig) - d1_variational(rho, sig)) <=
            1e-9);
  }
}

TEST_CASE("metrics are monotone under partial trace") {
  RngStream base(55, 4);
  TensorSpace sp({3, 4});
  for (int t = 0; t < 100; ++t) {
    RngStream rng = base.substream(static_cast<std::uint64_t>(t));
    ComplexMatrix rho = random_density(12, rng);
    ComplexMatrix sig = random_density(12, rng);
    ComplexMatrix ra = partial_trace(rho, sp, {0});
    ComplexMatrix sa = partial_trace(sig, sp, {0});
    REQUIRE(d1_distance(ra, sa) <= d1_distance(rho, sig) + 1e-9);
    REQUIRE(fidelity(ra, sa) >= fidelity(rho, sig) - 1e-9);
    REQUIRE(purified_distance(ra, sa) <= purified_distance(rho, sig) + 1e-9);
  }
}
