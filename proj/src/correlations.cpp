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

#include "corrlab/correlations.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>

namespace corrlab {

namespace {

// T_N(y, x) = tr(delta_block(y, x) N) so that tr((M (x) N) delta) = tr(M T_N).
ComplexMatrix contract_right(const ComplexMatrix& delta, int dx, int dy,
                             const ComplexMatrix& n) {
  ComplexMatrix t(dx, dx);
  for (int y = 0; y < dx; ++y)
    for (int x = 0; x < dx; ++x)
      t(y, x) =
          delta.block(y * dy, x * dy, dy, dy).transpose().cwiseProduct(n).sum();
  return t;
}

// S_M = sum_{x,y} M(x, y) delta_block(y, x) so that the value is tr(N S_M).
ComplexMatrix contract_left(const ComplexMatrix& delta, int dx, int dy,
                            const ComplexMatrix& m) {
  ComplexMatrix s = ComplexMatrix::Zero(dy, dy);
  for (int x = 0; x < dx; ++x)
    for (int y = 0; y < dx; ++y)
      s += m(x, y) * delta.block(y * dy, x * dy, dy, dy);
  return s;
}

// Argmax of |tr(M T)| over ||M||_op <= 1, together with the value ||T||_1.
std::pair<ComplexMatrix, double> polar_witness(const ComplexMatrix& t) {
  Eigen::BDCSVD<ComplexMatrix> svd(t,
                                   Eigen::ComputeFullU | Eigen::ComputeFullV);
  ComplexMatrix m = svd.matrixV() * svd.matrixU().adjoint();
  return {std::move(m), svd.singularValues().sum()};
}

}  // namespace

double CorrelationEstimate::evaluate(const ComplexMatrix& delta) const {
  int dx = static_cast<int>(witness_m.rows());
  int dy = static_cast<int>(witness_n.rows());
  ComplexMatrix t = contract_right(delta, dx, dy, witness_n);
  return std::abs((witness_m * t).trace());
}

ComplexMatrix pair_difference(const ComplexMatrix& rho_xy, int dx, int dy) {
  TensorSpace sp({dx, dy});
  if (rho_xy.rows() != sp.total_dim() || rho_xy.cols() != sp.total_dim())
    throw std::invalid_argument("pair_difference: shape mismatch");
  ComplexMatrix rho_x = partial_trace(rho_xy, sp, {0});
  ComplexMatrix rho_y = partial_trace(rho_xy, sp, {1});
  return rho_xy - kron(rho_x, rho_y);
}

std::vector<ProductWitness> datahiding_witness(const ComplexMatrix& delta,
                                               int dx, int dy) {
  if (delta.rows() != Eigen::Index(dx) * dy)
    throw std::invalid_argument("datahiding_witness: shape mismatch");
  if ((delta - delta.adjoint()).norm() > 1e-8 * std::max(1.0, delta.norm()))
    throw std::invalid_argument("datahiding_witness: delta not Hermitian");

  HermitianEig eig = hermitian_eig((delta + delta.adjoint()) / 2.0);
  RealVector signs(eig.values.size());
  for (Eigen::Index i = 0; i < eig.values.size(); ++i)
    signs(i) = eig.values(i) >= 0.0 ? 1.0 : -1.0;
  ComplexMatrix sign =
      eig.vectors * signs.asDiagonal() * eig.vectors.adjoint();

  std::vector<ProductWitness> out;
  const bool x_small = dx <= dy;
  const int d_min = x_small ? dx : dy;
  out.reserve(static_cast<std::size_t>(d_min) * d_min);
  for (int a = 0; a < d_min; ++a)
    for (int b = 0; b < d_min; ++b) {
      ProductWitness w;
      if (x_small) {
        w.x = ComplexMatrix::Zero(dx, dx);
        w.x(a, b) = 1.0;
        w.y = sign.block(a * dy, b * dy, dy, dy);
      } else {
        w.y = ComplexMatrix::Zero(dy, dy);
        w.y(a, b) = 1.0;
        w.x = ComplexMatrix(dx, dx);
        for (int p = 0; p < dx; ++p)
          for (int q = 0; q < dx; ++q)
            w.x(p, q) = sign(p * dy + a, q * dy + b);
      }
      ComplexMatrix t = contract_right(delta, dx, dy, w.y);
      w.value = std::abs((w.x * t).trace());
      out.push_back(std::move(w));
    }
  return out;
}

CorrelationEstimate correlation_estimate(const ComplexMatrix& rho_xy, int dx,
                                         int dy, int restarts, double tol,
                                         std::uint64_t seed) {
  if (dx < 1 || dy < 1 || dx > 1024 || dy > 1024)
    throw std::invalid_argument("correlation_estimate: side dims out of range");
  if (std::abs(rho_xy.trace().real() - 1.0) > 1e-8)
    throw std::invalid_argument("correlation_estimate: state not normalized");
  ComplexMatrix delta = pair_difference(rho_xy, dx, dy);

  CorrelationEstimate est;
  est.restarts = restarts;
  est.upper = trace_norm(delta);
  est.witness_m = ComplexMatrix::Identity(dx, dx);
  est.witness_n = ComplexMatrix::Identity(dy, dy);
  est.lower = est.evaluate(delta);

  std::vector<ProductWitness> hiding = datahiding_witness(delta, dx, dy);
  const ProductWitness* best_hiding = nullptr;
  for (const auto& w : hiding)
    if (!best_hiding || w.value > best_hiding->value) best_hiding = &w;
  if (best_hiding && best_hiding->value > est.lower) {
    est.lower = best_hiding->value;
    est.witness_m = best_hiding->x;
    est.witness_n = best_hiding->y;
  }

  RngStream base(seed, 0x777);
  bool all_converged = true;
  for (int r = 0; r < restarts; ++r) {
    ComplexMatrix n;
    if (r == 0) {
      n = ComplexMatrix::Identity(dy, dy);
    } else if (r == 1 && best_hiding) {
      n = best_hiding->y;
      double on = operator_norm(n);
      if (on > 1e-12) n /= on;
      else n = ComplexMatrix::Identity(dy, dy);
    } else {
      RngStream rng = base.substream(static_cast<std::uint64_t>(r));
      n = haar_unitary(dy, rng);
    }
    ComplexMatrix m = ComplexMatrix::Identity(dx, dx);
    double prev = -1.0;
    bool converged = false;
    for (int it = 0; it < 500; ++it) {
      auto [m_new, v1] = polar_witness(contract_right(delta, dx, dy, n));
      m = std::move(m_new);
      auto [n_new, v2] = polar_witness(contract_left(delta, dx, dy, m));
      n = std::move(n_new);
      if (v2 < prev - 1e-9)
        throw std::logic_error("correlation_estimate: value decreased");
      if (prev >= 0.0 && v2 - prev < tol) {
        converged = true;
        prev = v2;
        break;
      }
      prev = v2;
    }
    if (!converged) all_converged = false;
    // Re-evaluation of the explicit witnesses is the source of truth.
    CorrelationEstimate cand;
    cand.witness_m = m;
    cand.witness_n = n;
    double val = cand.evaluate(delta);
    if (val > est.lower) {
      est.lower = val;
      est.witness_m = std::move(m);
      est.witness_n = std::move(n);
    }
  }
  est.converged = all_converged;
  return est;
}

TransferSpectrum transfer_operator(const QuantumChannel& ch) {
  const int d = ch.dim();
  if (d * d > 4096)
    throw std::invalid_argument("transfer_operator: D^2 > 4096");
  ComplexMatrix pi = ComplexMatrix::Zero(d * d, d * d);
  for (const auto& a : ch.kraus) pi += kron(a, a.conjugate());
  Eigen::ComplexEigenSolver<ComplexMatrix> es(pi, /*computeEigenvectors=*/false);
  TransferSpectrum out;
  out.eigenvalue_moduli.resize(static_cast<std::size_t>(d) * d);
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
    out.eigenvalue_moduli[static_cast<std::size_t>(i)] =
        std::abs(es.eigenvalues()(i));
  std::sort(out.eigenvalue_moduli.begin(), out.eigenvalue_moduli.end(),
            std::greater<double>());
  out.eta = out.eigenvalue_moduli.size() > 1 ? out.eigenvalue_moduli[1] : 0.0;
  out.gap_ok = std::abs(out.eigenvalue_moduli.front() - 1.0) <= 1e-9;
  return out;
}

double mps_correlation_bound(const QuantumChannel& ch, int separation) {
  if (!ch.unital(1e-9))
    throw std::invalid_argument("mps_correlation_bound: channel not unital");
  if (separation < 0)
    throw std::invalid_argument("mps_correlation_bound: negative separation");
  TransferSpectrum spec = transfer_operator(ch);
  return double(ch.dim()) * std::pow(spec.eta, double(separation));
}

namespace {

struct PairScanHooks {
  // Called with (x, y, l, delta, upper). Returns false to stop the scan.
  std::function<bool(const Region&, const Region&, int, const ComplexMatrix&,
                     double)>
      visit;
};

void scan_region_pairs(const ChainState& state, int region_cap, int l_min,
                       const PairScanHooks& hooks) {
  const int n = state.sites();
  const int d = state.site_dim();
  if (n * std::log2(double(d)) > 20.5)
    throw std::invalid_argument("region scan: state too large");
  double region_dim = std::pow(double(d), double(region_cap));
  if (region_cap < 1 || region_dim > 64.5)
    throw std::invalid_argument("region scan: region_cap dimension budget");
  Topology topo = state.topology();
  const int start_max = n;  // line starts clipped by length below

  for (int lx = 1; lx <= region_cap; ++lx)
    for (int ly = 1; ly <= region_cap; ++ly)
      for (int sx = 0; sx < start_max; ++sx) {
        if (topo == Topology::line && sx + lx > n) continue;
        for (int sy = sx + 1; sy < start_max; ++sy) {
          if (topo == Topology::line && sy + ly > n) continue;
          Region x{sx, lx}, y{sy, ly};
          if (!regions_disjoint(x, y, n, topo)) continue;
          int l = separation(x, y, n, topo);
          if (l < l_min) continue;
          DensityOperator rho = reduced_density_pair(state, x, y);
          int dim_x = 1, dim_y = 1;
          for (int k = 0; k < lx; ++k) dim_x *= d;
          for (int k = 0; k < ly; ++k) dim_y *= d;
          ComplexMatrix delta = pair_difference(rho.mat, dim_x, dim_y);
          double upper = trace_norm(delta);
          if (!hooks.visit(x, y, l, delta, upper)) return;
        }
      }
}

}  // namespace

DecayCertificate edc_certify(const ChainState& state, double xi, int l0,
                             int region_cap) {
  if (xi <= 0.0) throw std::invalid_argument("edc_certify: xi > 0 required");
  if (l0 < 0) throw std::invalid_argument("edc_certify: l0 >= 0 required");
  DecayCertificate cert;
  cert.xi = xi;
  cert.l0 = l0;
  cert.verdict = DecayCertificate::Verdict::certified;

  std::map<int, DecaySample> per_l;
  bool done = false;
  PairScanHooks hooks;
  hooks.visit = [&](const Region& x, const Region& y, int l,
                    const ComplexMatrix& delta, double upper) {
    double bound = std::exp2(-double(l) / xi);
    auto& sample = per_l[l];
    sample.separation = l;
    sample.bound = bound;
    sample.cor_upper = std::max(sample.cor_upper, upper);
    if (upper <= bound + 1e-9) return true;
    // Upper bound alone fails: decide strict vs indeterminate via the
    // witnessed lower bound.
    int dim_x = static_cast<int>(std::lround(
        std::pow(double(state.site_dim()), double(x.length))));
    int dim_y = static_cast<int>(delta.rows()) / dim_x;
    DensityOperator rho = reduced_density_pair(state, x, y);
    CorrelationEstimate est =
        correlation_estimate(rho.mat, dim_x, dim_y, 8, 1e-10);
    sample.cor_lower = std::max(sample.cor_lower, est.lower);
    if (est.lower > bound + 1e-9) {
      cert.verdict = DecayCertificate::Verdict::violated;
      cert.witness_x = x;
      cert.witness_y = y;
      cert.witness_value = est.lower;
      cert.witness_m = est.witness_m;
      cert.witness_n = est.witness_n;
      std::ostringstream os;
      os << "strict violation at X=[" << x.start << "," << x.length
         << ") Y=[" << y.start << "," << y.length << ") l=" << l
         << ": witness value " << est.lower << " > 2^(-l/xi) = " << bound;
      cert.detail = os.str();
      done = true;
      return false;
    }
    if (cert.verdict == DecayCertificate::Verdict::certified) {
      cert.verdict = DecayCertificate::Verdict::indeterminate;
      cert.witness_x = x;
      cert.witness_y = y;
      cert.witness_value = est.lower;
      std::ostringstream os;
      os << "indeterminate at X=[" << x.start << "," << x.length << ") Y=["
         << y.start << "," << y.length << ") l=" << l << ": upper bound "
         << upper << " exceeds 2^(-l/xi) = " << bound
         << " but best witness reaches only " << est.lower;
      cert.detail = os.str();
    }
    return true;
  };
  scan_region_pairs(state, region_cap, l0, hooks);
  (void)done;
  cert.samples.reserve(per_l.size());
  for (auto& kv : per_l) cert.samples.push_back(kv.second);
  return cert;
}

std::vector<DecaySample> correlation_scan(const ChainState& state,
                                          int region_cap, int restarts) {
  struct Worst {
    double upper = -1.0;
    Region x, y;
    int dim_x = 0, dim_y = 0;
  };
  std::map<int, Worst> worst;
  PairScanHooks hooks;
  hooks.visit = [&](const Region& x, const Region& y, int l,
                    const ComplexMatrix& delta, double upper) {
    auto& w = worst[l];
    if (upper > w.upper) {
      w.upper = upper;
      w.x = x;
      w.y = y;
      w.dim_x = static_cast<int>(std::lround(
          std::pow(double(state.site_dim()), double(x.length))));
      w.dim_y = static_cast<int>(delta.rows()) / w.dim_x;
    }
    return true;
  };
  scan_region_pairs(state, region_cap, 1, hooks);

  std::vector<DecaySample> out;
  out.reserve(worst.size());
  for (const auto& kv : worst) {
    const Worst& w = kv.second;
    DensityOperator rho = reduced_density_pair(state, w.x, w.y);
    CorrelationEstimate est =
        correlation_estimate(rho.mat, w.dim_x, w.dim_y, restarts, 1e-10);
    DecaySample s;
    s.separation = kv.first;
    s.cor_upper = w.upper;
    s.cor_lower = est.lower;
    s.bound = 0.0;
    out.push_back(s);
  }
  return out;
}

CorrelationFit correlation_length_fit(
    const std::vector<std::pair<int, double>>& samples) {
  std::vector<std::pair<int, double>> pts;
  for (const auto& s : samples)
    if (s.second > 0.0) pts.emplace_back(s.first, std::log2(s.second));
  std::sort(pts.begin(), pts.end());

  CorrelationFit fit;
  const int m = static_cast<int>(pts.size());
  for (int tail = 0; m - tail >= 3; ++tail) {
    double sl = 0.0, sy = 0.0, sll = 0.0, sly = 0.0;
    int k = m - tail;
    for (int i = tail; i < m; ++i) {
      sl += pts[static_cast<std::size_t>(i)].first;
      sy += pts[static_cast<std::size_t>(i)].second;
      sll += double(pts[static_cast<std::size_t>(i)].first) *
             pts[static_cast<std::size_t>(i)].first;
      sly += double(pts[static_cast<std::size_t>(i)].first) *
             pts[static_cast<std::size_t>(i)].second;
    }
    double denom = k * sll - sl * sl;
    if (std::abs(denom) < 1e-12) continue;
    double slope = (k * sly - sl * sy) / denom;
    double intercept = (sy - slope * sl) / k;
    double resid = 0.0;
    for (int i = tail; i < m; ++i)
      resid = std::max(resid,
                       std::abs(pts[static_cast<std::size_t>(i)].second -
                                (slope * pts[static_cast<std::size_t>(i)].first +
                                 intercept)));
    if (resid < 0.5 && slope < 0.0) {
      fit.ok = true;
      fit.slope = slope;
      fit.residual = resid;
      fit.xi = -1.0 / slope;
      fit.l0 = pts[static_cast<std::size_t>(tail)].first;
      return fit;
    }
  }
  return fit;  // non-decaying or non-log-linear data
}

CorrelationFit correlation_length_fit(const std::vector<DecaySample>& samples) {
  std::vector<std::pair<int, double>> pts;
  pts.reserve(samples.size());
  for (const auto& s : samples) pts.emplace_back(s.separation, s.cor_upper);
  return correlation_length_fit(pts);
}

}  // namespace corrlab
