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

#include "corrlab/protocols.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

#include "corrlab/metrics.hpp"

namespace corrlab {

namespace {

// Spectrum of the reduced state over an arbitrary site subset of a
// pure chain state, via the Gram matrix of the smaller side.
RealVector block_spectrum(const ChainState& state,
                          const std::vector<int>& sites) {
  const int n = state.sites();
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  std::vector<int> perm = sites;
  for (int s : sites) used[static_cast<std::size_t>(s)] = true;
  for (int s = 0; s < n; ++s)
    if (!used[static_cast<std::size_t>(s)]) perm.push_back(s);
  ComplexVector v = permute_factors(state.amplitudes(), state.space(), perm);
  int dk = 1;
  for (std::size_t i = 0; i < sites.size(); ++i) dk *= state.site_dim();
  int denv = static_cast<int>(v.size()) / dk;
  Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic,
                                 Eigen::RowMajor>>
      m(v.data(), dk, denv);
  ComplexMatrix gram =
      dk <= denv ? ComplexMatrix(m * m.adjoint()) : ComplexMatrix(m.adjoint() * m);
  return psd_spectrum(gram);
}

double spectrum_entropy(const RealVector& spec) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < spec.size(); ++i)
    if (spec(i) > 0.0) s -= spec(i) * std::log2(spec(i));
  return std::max(0.0, s);
}

}  // namespace

PovmFamily random_rank_povm(int dim_a, int rank_l, RngStream& rng) {
  if (rank_l < 1 || rank_l > dim_a)
    throw std::invalid_argument("random_rank_povm: 1 <= L <= |A| required");
  ComplexMatrix u = haar_unitary(dim_a, rng);
  PovmFamily fam;
  const int groups = dim_a / rank_l;
  for (int k = 0; k < groups; ++k) {
    ComplexMatrix b = u.middleCols(k * rank_l, rank_l);
    fam.elements.push_back(b * b.adjoint());
    fam.ranks.push_back(rank_l);
  }
  const int rest = dim_a - groups * rank_l;
  if (rest > 0) {
    ComplexMatrix b = u.middleCols(groups * rank_l, rest);
    fam.elements.push_back(b * b.adjoint());
    fam.ranks.push_back(rest);
  }
  ComplexMatrix sum = ComplexMatrix::Zero(dim_a, dim_a);
  for (const auto& p : fam.elements) sum += p;
  fam.completeness_residual =
      (sum - ComplexMatrix::Identity(dim_a, dim_a)).norm();
  return fam;
}

DecouplingReport haar_decoupling_experiment(int dim_a, int dim_b, int samples,
                                            RngStream& rng) {
  if (dim_a < dim_b)
    throw std::invalid_argument("haar_decoupling_experiment: |A| >= |B|");
  if (dim_a * dim_b > (1 << 14))
    throw std::invalid_argument("haar_decoupling_experiment: dimension budget");
  if (samples < 1)
    throw std::invalid_argument("haar_decoupling_experiment: samples >= 1");
  DecouplingReport rep;
  rep.bound = std::pow(2.0 * dim_b / dim_a, 0.25);
  ComplexMatrix tau = ComplexMatrix::Identity(dim_b, dim_b) / double(dim_b);
  double acc = 0.0;
  for (int k = 0; k < samples; ++k) {
    RngStream sub = rng.substream(static_cast<std::uint64_t>(k));
    ComplexVector psi = haar_state(dim_a * dim_b, sub);
    Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic,
                                   Eigen::RowMajor>>
        m(psi.data(), dim_a, dim_b);
    ComplexMatrix rho_b = m.adjoint() * m;
    rho_b = ((rho_b + rho_b.adjoint()) / 2.0).conjugate();
    double d = purified_distance(rho_b, tau);
    rep.distances.push_back(d);
    acc += d;
  }
  rep.mean_distance = acc / samples;
  rep.within_bound = rep.mean_distance <= rep.bound + 1e-9;
  return rep;
}

PovmDecouplingReport decoupling_merging_experiment(const ComplexVector& psi_abc,
                                                   int dim_a, int dim_b,
                                                   int dim_c, int rank_l,
                                                   int povm_samples,
                                                   RngStream& rng) {
  if (dim_a > 16 || dim_b > 4 || dim_c > 16)
    throw std::invalid_argument(
        "decoupling_merging_experiment: dims <= (16, 4, 16)");
  if (rank_l < 1 || rank_l > dim_a)
    throw std::invalid_argument("decoupling_merging_experiment: L <= |A|");
  const int dbc = dim_b * dim_c;
  if (psi_abc.size() != Eigen::Index(dim_a) * dbc)
    throw std::invalid_argument("decoupling_merging_experiment: shape");
  if (std::abs(psi_abc.norm() - 1.0) > 1e-8)
    throw std::invalid_argument(
        "decoupling_merging_experiment: state not normalized");

  TensorSpace sp_ab({dim_a, dim_b});
  Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic,
                                 Eigen::RowMajor>>
      full(psi_abc.data(), dim_a * dim_b, dim_c);
  ComplexMatrix rho_ab = full * full.adjoint();
  ComplexMatrix rho_b = partial_trace(rho_ab, sp_ab, {1});
  double purity = (rho_ab * rho_ab).trace().real();

  PovmDecouplingReport rep;
  rep.bound = 2.0 * std::sqrt(double(rank_l) * dim_b * purity) +
              2.0 * double(rank_l) / double(dim_a);
  rep.best_error = std::numeric_limits<double>::infinity();
  Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic,
                                 Eigen::RowMajor>>
      psi_a(psi_abc.data(), dim_a, dbc);
  for (int s = 0; s < povm_samples; ++s) {
    RngStream sub = rng.substream(static_cast<std::uint64_t>(s));
    PovmFamily fam = random_rank_povm(dim_a, rank_l, sub);
    double err = 0.0;
    for (std::size_t k = 0; k < fam.elements.size(); ++k) {
      int rk = fam.ranks[k];
      if (rk == 0) continue;
      ComplexMatrix post = fam.elements[k] * psi_a;  // dim_a x dbc
      double pk = post.squaredNorm();
      if (pk <= 1e-14) continue;
      // Reinterpret (a, bc) as (ab, c): same row-major flat layout.
      ComplexVector flat(Eigen::Index(dim_a) * dbc);
      for (int a = 0; a < dim_a; ++a)
        for (int bc = 0; bc < dbc; ++bc)
          flat(Eigen::Index(a) * dbc + bc) = post(a, bc);
      Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic,
                                     Eigen::RowMajor>>
          ab(flat.data(), dim_a * dim_b, dim_c);
      ComplexMatrix rho_k = (ab * ab.adjoint()) / pk;
      ComplexMatrix target = kron(fam.elements[k] / double(rk), rho_b);
      err += pk * trace_norm(rho_k - target);
    }
    rep.errors.push_back(err);
    rep.best_error = std::min(rep.best_error, err);
  }
  rep.within_bound = rep.best_error <= rep.bound + 1e-9;
  return rep;
}

MergingReport merging_rate_report(const ComplexVector& psi_abc, int dim_a,
                                  int dim_b, int dim_c, double eps) {
  if (eps <= 0.0 || eps >= 1.0)
    throw std::invalid_argument("merging_rate_report: eps in (0,1)");
  TensorSpace sp({dim_a, dim_b, dim_c});
  if (psi_abc.size() != sp.total_dim())
    throw std::invalid_argument("merging_rate_report: shape mismatch");
  DensityOperator full = DensityOperator::pure(psi_abc, sp);
  DensityOperator rho_a = partial_trace(full, {0});
  DensityOperator rho_ab = partial_trace(full, {0, 1});

  MergingReport rep;
  rep.epsilon = eps;
  rep.error_bound = 13.0 * std::sqrt(eps);
  rep.hmax_a = hmax_smooth(rho_a.mat, eps);
  rep.hmin_ab_bits = hmin_conditional(rho_ab.mat, dim_a, dim_b).hmin_bits();
  rep.hmax_ac = hmax_conditional(psi_abc, dim_a, dim_b, dim_c);

  const double offset = -4.0 * std::log2(eps) + 2.0 * std::log2(13.0);
  rep.log_n_bound = rep.hmax_a.value_upper - rep.hmin_ab_bits + offset;
  rep.log_l_bound_plus = rep.hmax_ac.value_upper + offset;
  rep.log_l_bound_minus = -rep.hmax_ac.value_lower + offset;
  return rep;
}

double cor_lower_from_measurement(const ComplexMatrix& rho_ac, int dim_a,
                                  int dim_c, const ComplexMatrix& m) {
  TensorSpace sp({dim_a, dim_c});
  if (rho_ac.rows() != sp.total_dim() || m.rows() != dim_a)
    throw std::invalid_argument("cor_lower_from_measurement: shape mismatch");
  if ((m - m.adjoint()).norm() > 1e-8 * std::max(1.0, m.norm()))
    throw std::invalid_argument("cor_lower_from_measurement: M not Hermitian");
  HermitianEig eig = hermitian_eig((m + m.adjoint()) / 2.0);
  if (eig.values.minCoeff() < -1e-9 || eig.values.maxCoeff() > 1.0 + 1e-9)
    throw std::invalid_argument("cor_lower_from_measurement: need 0 <= M <= I");

  ComplexMatrix rho_a = partial_trace(rho_ac, sp, {0});
  ComplexMatrix rho_c = partial_trace(rho_ac, sp, {1});
  double p = (m * rho_a).trace().real();
  if (p <= 1e-12) return 0.0;
  ComplexMatrix selected = kron(m, ComplexMatrix::Identity(dim_c, dim_c)) *
                           rho_ac;
  ComplexMatrix rho_c_post = partial_trace(selected, sp, {1}) / p;
  rho_c_post = (rho_c_post + rho_c_post.adjoint()) / 2.0;
  double d = purified_distance(rho_c_post, rho_c);
  return 0.5 * p * d * d;
}

EntropyBoostCheck lemma1_part3_check(const ComplexVector& psi_abc, int dim_a,
                                     int dim_b, int dim_c, double delta) {
  if (delta <= 0.0 || delta >= 0.5)
    throw std::invalid_argument("lemma1_part3_check: delta in (0, 1/2)");
  TensorSpace sp({dim_a, dim_b, dim_c});
  DensityOperator full = DensityOperator::pure(psi_abc, sp);
  DensityOperator rho_ac = partial_trace(full, {0, 2});
  DensityOperator rho_a = partial_trace(full, {0});

  EntropyBoostCheck chk;
  CorrelationEstimate est = correlation_estimate(rho_ac.mat, dim_a, dim_c);
  chk.cor_lower = est.lower;
  if (est.lower < 1e-9) {
    chk.detail = "skipped: correlation too small for a meaningful gamma";
    return chk;
  }
  chk.gamma = std::sqrt(est.lower / (0.5 - delta));
  if (chk.gamma <= 0.0 || 2.0 * chk.gamma >= 1.0) {
    std::ostringstream os;
    os << "skipped: gamma = " << chk.gamma << " outside (0, 1/2)";
    chk.detail = os.str();
    return chk;
  }
  chk.applicable = true;
  chk.lhs = hmax_smooth(rho_a.mat, 2.0 * chk.gamma).value_lower;
  chk.rhs = hmax_smooth(rho_a.mat, delta).value_upper +
            2.0 * std::log2(double(dim_b)) +
            std::log2(2.0 / (chk.gamma * chk.gamma));
  chk.pass = chk.lhs <= chk.rhs + 1e-9;
  return chk;
}

RandomMeasurementDemo lemma1_random_measurement_demo(
    const ComplexVector& psi_abc, int dim_a, int dim_b, int dim_c,
    int projector_rank, int samples, RngStream& rng, double delta, double nu) {
  if (projector_rank < 1 || projector_rank > dim_a)
    throw std::invalid_argument("lemma1_random_measurement_demo: rank range");
  TensorSpace sp({dim_a, dim_b, dim_c});
  DensityOperator full = DensityOperator::pure(psi_abc, sp);
  DensityOperator rho_ac = partial_trace(full, {0, 2});
  TensorSpace sp_ac({dim_a, dim_c});
  ComplexMatrix rho_a = partial_trace(rho_ac.mat, sp_ac, {0});
  ComplexMatrix rho_c = partial_trace(rho_ac.mat, sp_ac, {1});

  RandomMeasurementDemo demo;
  demo.delta = delta;
  demo.nu = nu;
  demo.q_rank = projector_rank;
  demo.p_rank = numerical_rank(rho_a);
  double p_sz = double(demo.p_rank);
  double ratio = double(projector_rank) / p_sz;
  double num = delta * ratio + 8.0 / std::sqrt(p_sz);
  double den = (1.0 - 2.0 * nu) * ratio - 8.0 / std::sqrt(p_sz);
  demo.alpha = den > 0.0 ? num / den
                         : std::numeric_limits<double>::infinity();
  double thresh = std::isfinite(demo.alpha)
                      ? std::min(1.0, std::sqrt(std::max(0.0, demo.alpha)))
                      : 1.0;

  int within = 0;
  for (int k = 0; k < samples; ++k) {
    RngStream sub = rng.substream(static_cast<std::uint64_t>(k));
    ComplexMatrix v = haar_isometry(dim_a, projector_rank, sub);
    ComplexMatrix q = v * v.adjoint();
    demo.cor_lower_values.push_back(
        cor_lower_from_measurement(rho_ac.mat, dim_a, dim_c, q));
    double p = (q * rho_a).trace().real();
    if (p > 1e-12) {
      ComplexMatrix sel =
          kron(q, ComplexMatrix::Identity(dim_c, dim_c)) * rho_ac.mat;
      ComplexMatrix post = partial_trace(sel, sp_ac, {1}) / p;
      post = (post + post.adjoint()) / 2.0;
      if (purified_distance(post, rho_c) <= thresh + 1e-12) ++within;
    }
  }
  demo.fraction_within_alpha = samples > 0 ? double(within) / samples : 0.0;
  return demo;
}

SaturationResult saturation_scan(const ChainState& state, int s, double eps,
                                 int l0, SaturationGeometry geometry) {
  if (eps <= 0.0) throw std::invalid_argument("saturation_scan: eps > 0");
  const int n = state.sites();
  const Topology topo = state.topology();
  auto wrap = [&](int x) { return ((x % n) + n) % n; };

  SaturationResult best;
  bool have_best = false;
  double best_excess = std::numeric_limits<double>::infinity();

  int l = std::max(1, l0);
  if (geometry == SaturationGeometry::appendix_b && l % 2 != 0) ++l;
  const int step = geometry == SaturationGeometry::appendix_b ? 2 : 1;
  for (;; l += step) {
    int border = geometry == SaturationGeometry::appendix_b ? l / 2 : l;
    int center_len = geometry == SaturationGeometry::appendix_b ? l : 2 * l;
    int total = 2 * border + center_len;
    if (total > n) break;

    // Center starts ordered by ring/line distance of the block middle
    // from s, closest first, ties by smaller start.
    std::vector<std::pair<int, int>> order;
    for (int c = 0; c < n; ++c) {
      if (topo == Topology::line && (c - border < 0 || c + center_len + border > n))
        continue;
      int mid = wrap(c + center_len / 2);
      int dist = std::abs(mid - s);
      if (topo == Topology::ring) dist = std::min(dist, n - dist);
      order.emplace_back(dist, c);
    }
    std::sort(order.begin(), order.end());

    for (const auto& [dist, c] : order) {
      (void)dist;
      Region xc{c, center_len};
      Region xl{topo == Topology::ring ? wrap(c - border) : c - border, border};
      Region xr{wrap(c + center_len), border};
      std::vector<int> c_sites = xc.sites(n, topo);
      std::vector<int> lr_sites = xl.sites(n, topo);
      std::vector<int> r_sites = xr.sites(n, topo);
      lr_sites.insert(lr_sites.end(), r_sites.begin(), r_sites.end());
      std::vector<int> all_sites = c_sites;
      all_sites.insert(all_sites.end(), lr_sites.begin(), lr_sites.end());

      double info = spectrum_entropy(block_spectrum(state, c_sites)) +
                    spectrum_entropy(block_spectrum(state, lr_sites)) -
                    spectrum_entropy(block_spectrum(state, all_sites));
      double threshold = eps * l;
      SaturationResult res;
      res.x_left = xl;
      res.x_center = xc;
      res.x_right = xr;
      res.l = l;
      res.mutual_info = info;
      res.threshold = threshold;
      res.met = info <= threshold + 1e-9;
      if (res.met) return res;
      if (!have_best || info - threshold < best_excess) {
        best_excess = info - threshold;
        best = res;
        have_best = true;
      }
    }
  }
  if (!have_best)
    throw std::invalid_argument("saturation_scan: no geometry fits the chain");
  return best;
}

namespace {

TheoremTable harness_common(
    int n, double xi, int l_count, double saturation_tol, double normalization,
    const std::function<RealVector(int start, int len)>& spectrum_of,
    bool ring) {
  TheoremTable table;
  table.xi = xi;
  table.normalization = normalization;
  const int l_start = static_cast<int>(std::ceil(8.0 * xi));
  const int max_len = std::max(1, n / 2);

  std::vector<double> upper_by_len(static_cast<std::size_t>(max_len) + 1, 0.0);
  for (int li = 0; li < l_count; ++li) {
    int l = l_start + li;
    double eps = std::exp2(-double(l) / (8.0 * xi));
    for (int len = 1; len <= max_len; ++len) {
      int start_max = ring ? n : n - len + 1;
      for (int start = 0; start < start_max; ++start) {
        EntropyReport rep = hmax_smooth(spectrum_of(start, len), eps);
        TheoremRow row;
        row.block_start = start;
        row.block_len = len;
        row.l = l;
        row.eps = eps;
        row.hmax_lower = rep.value_lower;
        row.hmax_upper = rep.value_upper;
        table.rows.push_back(row);
        if (li == 0)
          upper_by_len[static_cast<std::size_t>(len)] =
              std::max(upper_by_len[static_cast<std::size_t>(len)],
                       rep.value_upper);
      }
    }
  }
  int half = std::max(1, max_len / 2);
  table.saturation_gap =
      (upper_by_len[static_cast<std::size_t>(max_len)] -
       upper_by_len[static_cast<std::size_t>(half)]) /
      normalization;
  table.saturated = table.saturation_gap <= saturation_tol + 1e-12;
  table.upper_by_len = std::move(upper_by_len);
  return table;
}

}  // namespace

TheoremTable theorem_harness(const ChainState& state,
                             const DecayCertificate& certificate,
                             int l_count, double saturation_tol) {
  if (certificate.verdict != DecayCertificate::Verdict::certified)
    throw std::invalid_argument("theorem_harness: certificate not certified");
  const int n = state.sites();
  const Topology topo = state.topology();
  auto spectrum_of = [&](int start, int len) {
    Region r{start, len};
    return block_spectrum(state, r.sites(n, topo));
  };
  return harness_common(n, certificate.xi, l_count, saturation_tol, 1.0,
                        spectrum_of, topo == Topology::ring);
}

TheoremTable theorem_harness(const DensityOperator& rho,
                             const DecayCertificate& certificate,
                             int l_count, double saturation_tol) {
  if (certificate.verdict != DecayCertificate::Verdict::certified)
    throw std::invalid_argument("theorem_harness: certificate not certified");
  const int n = rho.space.factors();
  if (n < 2) throw std::invalid_argument("theorem_harness: need >= 2 factors");
  double hmax_rho = std::log2(double(std::max(1, numerical_rank(rho.mat))));
  double norm = std::max(1.0, hmax_rho);
  auto spectrum_of = [&](int start, int len) {
    // Wrapping regions reduce to a sorted keep set; factor order does
    // not affect the spectrum.
    std::vector<int> keep;
    for (int k = 0; k < len; ++k) keep.push_back((start + k) % n);
    std::sort(keep.begin(), keep.end());
    return psd_spectrum(partial_trace(rho.mat, rho.space, keep));
  };
  return harness_common(n, certificate.xi, l_count, saturation_tol, norm,
                        spectrum_of, /*ring=*/true);
}

}  // namespace corrlab
