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
#include <sstream>
#include <vector>

#include "corrlab/correlations.hpp"
#include "corrlab/entropy.hpp"
#include "corrlab/states.hpp"
#include "doctest.h"
#include "test_util.hpp"

using namespace corrlab;

namespace {

// Index-loop reduced density oracle: rho(a, b) = sum_env psi(a, env)
// psi*(b, env), addressed through explicit multi-indices.
ComplexMatrix reduced_oracle(const ChainState& st,
                             const std::vector<int>& region_sites) {
  TensorSpace sp = st.space();
  int n = st.sites();
  int d = st.site_dim();
  int dk = 1;
  for (std::size_t i = 0; i < region_sites.size(); ++i) dk *= d;
  ComplexMatrix rho = ComplexMatrix::Zero(dk, dk);
  std::vector<int> multi_a(static_cast<std::size_t>(n));
  std::vector<int> multi_b(static_cast<std::size_t>(n));
  std::vector<int> ra(region_sites.size()), rb(region_sites.size());
  for (int fa = 0; fa < sp.total_dim(); ++fa) {
    sp.unflatten(fa, multi_a);
    for (int fb = 0; fb < sp.total_dim(); ++fb) {
      sp.unflatten(fb, multi_b);
      bool env_match = true;
      for (int s = 0; s < n; ++s) {
        bool in_region = false;
        for (int r : region_sites) in_region |= (r == s);
        if (!in_region && multi_a[static_cast<std::size_t>(s)] !=
                              multi_b[static_cast<std::size_t>(s)]) {
          env_match = false;
          break;
        }
      }
      if (!env_match) continue;
      int ia = 0, ib = 0;
      for (std::size_t k = 0; k < region_sites.size(); ++k) {
        ia = ia * d + multi_a[static_cast<std::size_t>(region_sites[k])];
        ib = ib * d + multi_b[static_cast<std::size_t>(region_sites[k])];
      }
      rho(ia, ib) += st.amplitudes()(fa) * std::conj(st.amplitudes()(fb));
    }
  }
  return rho;
}

// Brute-force MPS contraction: product of site matrices per index
// string, closed by trace or taken as scalar chain.
ComplexVector mps_brute_force(const MatrixProductState& mps) {
  int n = mps.sites();
  int d = mps.phys_dim();
  int total = 1;
  for (int i = 0; i < n; ++i) total *= d;
  ComplexVector out(total);
  std::vector<int> idx(static_cast<std::size_t>(n));
  for (int f = 0; f < total; ++f) {
    int rem = f;
    for (int s = n - 1; s >= 0; --s) {
      idx[static_cast<std::size_t>(s)] = rem % d;
      rem /= d;
    }
    ComplexMatrix prod =
        mps.site_tensors[0][static_cast<std::size_t>(idx[0])];
    for (int s = 1; s < n; ++s)
      prod = prod *
             mps.site_tensors[static_cast<std::size_t>(s)]
                             [static_cast<std::size_t>(idx[static_cast<std::size_t>(s)])];
    out(f) = (mps.boundary == MatrixProductState::Boundary::trace_closure)
                 ? prod.trace()
                 : prod(0, 0);
  }
  return out;
}

double tfim_free_fermion_energy(int n, double h) {
  double e = 0.0;
  const double pi = 3.14159265358979323846;
  for (int m = 0; m < n; ++m) {
    double k = (2.0 * m + 1.0) * pi / n;
    e -= std::sqrt(1.0 + h * h - 2.0 * h * std::cos(k));
  }
  return e;
}

}  // namespace

TEST_CASE("region sites and separation semantics") {
  Region wrap{6, 4};
  std::vector<int> s = wrap.sites(8, Topology::ring);
  REQUIRE(s == std::vector<int>({6, 7, 0, 1}));
  CHECK_THROWS(wrap.sites(8, Topology::line));

  Region x{0, 2}, y{5, 2};
  CHECK(separation(x, y, 10, Topology::ring) == 3);
  CHECK(separation(x, y, 10, Topology::line) == 3);
  Region z{3, 2};
  CHECK(separation(x, z, 10, Topology::ring) == 1);
  CHECK(regions_disjoint(x, z, 10, Topology::ring));
  Region o{1, 2};
  CHECK(!regions_disjoint(x, o, 10, Topology::ring));
  // Adjacent regions have separation 0.
  Region adj{2, 2};
  CHECK(separation(x, adj, 10, Topology::ring) == 0);
}

TEST_CASE("chain state validation") {
  ComplexVector v = ComplexVector::Zero(4);
  v(0) = 0.5;  // not normalized
  CHECK_THROWS(ChainState(v, 2, 2, Topology::ring));
  v(0) = 1.0;
  CHECK_NOTHROW(ChainState(v, 2, 2, Topology::ring));
  CHECK_THROWS(ChainState(v, 1, 4, Topology::ring));  // n >= 2
}

TEST_CASE("reduced densities match the index-loop oracle") {
  RngStream rng(61, 1);
  ChainState st(haar_state(64, rng), 6, 2, Topology::ring);

  for (const Region& r : {Region{2, 3}, Region{4, 4}, Region{0, 1}}) {
    DensityOperator rho = reduced_density(st, r);
    ComplexMatrix oracle = reduced_oracle(st, r.sites(6, Topology::ring));
    REQUIRE((rho.mat - oracle).norm() <= 1e-10);
    REQUIRE(rho.trace() == doctest::Approx(1.0).epsilon(1e-10));
  }

  Region x{0, 2}, y{3, 2};
  DensityOperator pair = reduced_density_pair(st, x, y);
  ComplexMatrix oracle = reduced_oracle(st, {0, 1, 3, 4});
  REQUIRE((pair.mat - oracle).norm() <= 1e-10);
  CHECK_THROWS(reduced_density_pair(st, x, Region{1, 2}));
}

TEST_CASE("MPS dense coefficients match brute-force contraction") {
  MatrixProductState aklt = aklt_mps();
  aklt.site_tensors.resize(6, aklt.site_tensors[0]);
  ComplexVector dense = aklt.dense_coefficients();
  ComplexVector brute = mps_brute_force(aklt);
  REQUIRE((dense - brute).norm() <= 1e-10 * brute.norm());
}

TEST_CASE("expander state construction") {
  RngStream rng(71, 2);
  auto [mps, ch] = expander_state(2, 2, 6, rng);
  REQUIRE(ch.trace_preserving());
  REQUIRE(ch.unital());
  ComplexVector dense = mps.dense_coefficients();
  REQUIRE(dense.norm() > 0.0);
  ComplexVector brute = mps_brute_force(mps);
  REQUIRE((dense - brute).norm() <= 1e-10 * brute.norm());
  double norm = 0.0;
  ChainState st = mps.to_chain_state(Topology::ring, &norm);
  REQUIRE(st.amplitudes().norm() == doctest::Approx(1.0).epsilon(1e-10));
  REQUIRE(norm == doctest::Approx(dense.norm()).epsilon(1e-10));

  TransferSpectrum ts = transfer_operator(ch);
  REQUIRE(ts.gap_ok);
  REQUIRE(ts.eigenvalue_moduli.front() == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("unitary channel purity is one at every block length") {
  RngStream rng(72, 3);
  QuantumChannel ch;
  ch.kraus.push_back(haar_unitary(3, rng));
  REQUIRE(ch.trace_preserving());
  REQUIRE(ch.unital());
  for (int l = 1; l <= 3; ++l)
    CHECK(expander_purity(ch, l) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("expander purity: channel formula equals dense mode") {
  RngStream base(73, 4);
  for (int d : {2, 3})
    for (int D : {2, 3, 4}) {
      RngStream rng = base.substream(
          static_cast<std::uint64_t>(d * 100 + D));
      auto [mps, ch] = expander_state(d, D, 4, rng);
      for (int l = 1; l <= 3; ++l) {
        double formula = expander_purity(ch, l);
        double dense = expander_purity_dense(ch, l);
        REQUIRE(std::abs(formula - dense) <= 1e-10);
      }
    }
  // Non-unital channel rejected.
  QuantumChannel bad;
  bad.kraus.push_back(ComplexMatrix::Zero(2, 2));
  bad.kraus[0](0, 0) = 1.0;
  bad.kraus.push_back(ComplexMatrix::Zero(2, 2));
  bad.kraus[1](0, 1) = 1.0;
  CHECK_THROWS(expander_purity(bad, 1));
}

TEST_CASE("mean expander purity stays near the maximally mixed value") {
  const int d = 2, D = 4, l = 3;
  RngStream base(74, 5);
  double mean = 0.0;
  const int samples = 100;
  for (int s = 0; s < samples; ++s) {
    RngStream rng = base.substream(static_cast<std::uint64_t>(s));
    auto [mps, ch] = expander_state(d, D, 4, rng);
    mean += expander_purity(ch, l);
  }
  mean /= samples;
  double base_purity = 1.0 / (D * D);
  REQUIRE(mean >= 1.0 / std::pow(double(d), l) - 1e-12);
  // Excess over 1/D^2 bounded by k * l / d^l with a fixed constant.
  REQUIRE(mean <= base_purity + 2.0 * l / std::pow(double(d), l));
}

TEST_CASE("TFIM groundstate oracles") {
  // Deep paramagnetic limit: product of |+> states, no entanglement.
  ChainState deep = tfim_groundstate(8, 1e6);
  DensityOperator blk = reduced_density(deep, Region{0, 2});
  CHECK(von_neumann(blk) <= 1e-6);

  // n = 2 analytic: E = -2 sqrt(1 + h^2) (both ring bonds act).
  for (double h : {1.0, 2.0}) {
    auto [st, e] = tfim_groundstate_energy(2, h);
    CHECK(e == doctest::Approx(-2.0 * std::sqrt(1.0 + h * h)).epsilon(1e-9));
  }

  // Free-fermion closed form checks the dense branch (n = 10) and the
  // Lanczos branch (n = 12) independently.
  {
    auto [st, e] = tfim_groundstate_energy(10, 2.0);
    CHECK(e == doctest::Approx(tfim_free_fermion_energy(10, 2.0))
                   .epsilon(1e-10));
  }
  {
    auto [st, e] = tfim_groundstate_energy(12, 2.0);
    CHECK(std::abs(e - tfim_free_fermion_energy(12, 2.0)) <= 1e-8);
  }
  CHECK_THROWS(tfim_groundstate(15, 2.0));
  CHECK_THROWS(tfim_groundstate(8, -1.0));
}

TEST_CASE("AKLT tensors") {
  MatrixProductState aklt = aklt_mps();
  REQUIRE(aklt.phys_dim() == 3);
  REQUIRE(aklt.bond_dim() == 2);
  QuantumChannel ch;
  ch.kraus = aklt.site_tensors[0];
  REQUIRE(ch.unital(1e-10));
  TransferSpectrum ts = transfer_operator(ch);
  REQUIRE(ts.gap_ok);
  REQUIRE(ts.eigenvalue_moduli.size() == 4);
  CHECK(ts.eigenvalue_moduli[0] == doctest::Approx(1.0).epsilon(1e-8));
  for (int i = 1; i < 4; ++i)
    CHECK(ts.eigenvalue_moduli[static_cast<std::size_t>(i)] ==
          doctest::Approx(1.0 / 3.0).epsilon(1e-8));
  CHECK(ts.eta == doctest::Approx(1.0 / 3.0).epsilon(1e-8));
}

TEST_CASE("MPS truncation") {
  TruncationResult prod = mps_truncate(product_state(6), 1.0 - 1e-3);
  CHECK(prod.achieved_bond_dim == 1);
  CHECK(prod.overlap >= 1.0 - 1e-3);

  // 2-qubit maximally entangled: Schmidt rank 2 at zero tolerance.
  ComplexVector bell = ComplexVector::Zero(4);
  bell(0) = bell(3) = 1.0 / std::sqrt(2.0);
  TruncationResult tr = mps_truncate(ChainState(bell, 2, 2, Topology::ring),
                                     1.0);
  CHECK(tr.achieved_bond_dim == 2);
  CHECK(tr.overlap >= 1.0 - 1e-10);

  // Gapped TFIM groundstate compresses well; frozen regression value.
  TruncationResult tf =
      mps_truncate(tfim_groundstate(12, 2.0), 1.0 - 1e-3);
  CHECK(tf.achieved_bond_dim <= 8);
  CHECK(tf.overlap >= 1.0 - 1e-3);
}

TEST_CASE("GHZ fixture") {
  ChainState ghz = ghz_state(4);
  const ComplexVector& a = ghz.amplitudes();
  CHECK(std::abs(a(0) - 1.0 / std::sqrt(2.0)) <= 1e-12);
  CHECK(std::abs(a(15) - 1.0 / std::sqrt(2.0)) <= 1e-12);
  DensityOperator one = reduced_density(ghz, Region{2, 1});
  CHECK((one.mat - ComplexMatrix::Identity(2, 2) / 2.0).norm() <= 1e-12);
}

TEST_CASE("chainstate text format round trip") {
  RngStream rng(81, 6);
  ChainState st(haar_state(27, rng), 3, 3, Topology::line);
  std::stringstream ss;
  write_chainstate(ss, st);
  ChainState back = read_chainstate(ss);
  REQUIRE(back.sites() == 3);
  REQUIRE(back.site_dim() == 3);
  REQUIRE(back.topology() == Topology::line);
  REQUIRE((back.amplitudes() - st.amplitudes()).norm() <= 1e-12);

  std::stringstream bad("chainstate n=2 d=2 topology=torus\n0 1 0\n");
  CHECK_THROWS(read_chainstate(bad));
}
