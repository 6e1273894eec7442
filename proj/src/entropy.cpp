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

#include "corrlab/entropy.hpp"

#include <cmath>
#include <sstream>

#include "corrlab/metrics.hpp"

namespace corrlab {

double binary_entropy(double p) {
  if (p <= 0.0 || p >= 1.0) return 0.0;
  return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

double von_neumann(const ComplexMatrix& rho) {
  if (std::abs(rho.trace().real() - 1.0) > 1e-8)
    throw std::invalid_argument("von_neumann: state not normalized");
  RealVector spec = psd_spectrum(rho);
  double s = 0.0;
  for (Eigen::Index i = 0; i < spec.size(); ++i)
    if (spec(i) > 0.0) s -= spec(i) * std::log2(spec(i));
  return std::max(0.0, s);
}

double von_neumann(const DensityOperator& rho) { return von_neumann(rho.mat); }

EntropyReport hmax_smooth(const RealVector& spec, double eps) {
  if (eps < 0.0 || eps >= 1.0)
    throw std::invalid_argument("hmax_smooth: eps must be in [0, 1)");
  const double slack = 1e-12;
  auto smallest_rank_with_mass = [&](double mass) {
    double acc = 0.0;
    for (Eigen::Index r = 0; r < spec.size(); ++r) {
      acc += spec(r);
      if (acc >= mass - slack) return static_cast<int>(r) + 1;
    }
    return static_cast<int>(spec.size());
  };
  int r_upper = smallest_rank_with_mass(1.0 - eps * eps);
  int r_lower = smallest_rank_with_mass(1.0 - 2.0 * eps);
  EntropyReport rep;
  rep.epsilon = eps;
  rep.value_upper = std::log2(double(r_upper));
  rep.value_lower = std::log2(double(r_lower));
  std::ostringstream cu, cl;
  cu << "truncation rank " << r_upper << " (mass >= 1 - eps^2)";
  cl << "truncation rank " << r_lower << " (mass >= 1 - 2 eps)";
  rep.certificate_upper = cu.str();
  rep.certificate_lower = cl.str();
  return rep;
}

EntropyReport hmax_smooth(const ComplexMatrix& rho, double eps) {
  if (std::abs(rho.trace().real() - 1.0) > 1e-8)
    throw std::invalid_argument("hmax_smooth: state not normalized");
  return hmax_smooth(psd_spectrum(rho), eps);
}

SdpSolution hmin_conditional(const ComplexMatrix& rho_ab, int dim_a,
                             int dim_b) {
  return solve_hmin_sdp(rho_ab, dim_a, dim_b);
}

ComplexVector purify(const ComplexMatrix& rho) {
  HermitianEig eig = hermitian_eig(rho);
  const int d = static_cast<int>(rho.rows());
  ComplexVector psi = ComplexVector::Zero(d * d);
  for (int k = 0; k < d; ++k) {
    double lam = eig.values(k);
    if (lam <= 0.0) continue;
    double s = std::sqrt(lam);
    for (int i = 0; i < d; ++i)
      psi(i * d + k) += s * eig.vectors(i, k);
  }
  return psi;
}

EntropyReport hmax_conditional(const ComplexVector& psi_abc, int dim_a,
                               int dim_b, int dim_c) {
  TensorSpace sp({dim_a, dim_b, dim_c});
  if (psi_abc.size() != sp.total_dim())
    throw std::invalid_argument("hmax_conditional: dimension mismatch");
  DensityOperator full = DensityOperator::pure(psi_abc, sp);
  DensityOperator rho_ab = partial_trace(full, {0, 1});
  SdpSolution sdp = hmin_conditional(rho_ab.mat, dim_a, dim_b);
  EntropyReport rep;
  rep.epsilon = 0.0;
  rep.value_lower = rep.value_upper = -sdp.hmin_bits();
  std::ostringstream c;
  c << "duality -H_min(A|B); SDP gap " << sdp.gap;
  rep.certificate_lower = rep.certificate_upper = c.str();
  return rep;
}

double smax_relative(const ComplexMatrix& rho, const ComplexMatrix& sigma) {
  ComplexMatrix proj = support_projector(sigma);
  ComplexMatrix off = rho - proj * rho * proj;
  if (off.norm() > 1e-8 * std::max(1.0, rho.norm()))
    throw std::invalid_argument("smax_relative: supp(rho) outside supp(sigma)");
  ComplexMatrix si = psd_inv_sqrt(sigma);
  ComplexMatrix core = si * rho * si;
  HermitianEig eig = hermitian_eig((core + core.adjoint()) / 2.0);
  return std::log2(std::max(eig.values.maxCoeff(), 1e-300));
}

double relative_entropy(const ComplexMatrix& rho, const ComplexMatrix& sigma) {
  ComplexMatrix proj = support_projector(sigma);
  ComplexMatrix off = rho - proj * rho * proj;
  if (off.norm() > 1e-8 * std::max(1.0, rho.norm()))
    throw std::invalid_argument("relative_entropy: support violation");
  HermitianEig er = hermitian_eig(rho);
  HermitianEig es = hermitian_eig(sigma);
  double floor_r = kEigRelFloor * std::max(0.0, er.values.maxCoeff());
  double floor_s = kEigRelFloor * std::max(0.0, es.values.maxCoeff());
  double val = 0.0;
  // tr(rho log rho)
  for (Eigen::Index i = 0; i < er.values.size(); ++i)
    if (er.values(i) > floor_r) val += er.values(i) * std::log2(er.values(i));
  // - tr(rho log sigma)
  for (Eigen::Index j = 0; j < es.values.size(); ++j) {
    if (es.values(j) <= floor_s) continue;
    double w = (es.vectors.col(j).adjoint() * rho * es.vectors.col(j))(0)
                   .real();
    val -= w * std::log2(es.values(j));
  }
  return val;
}

SubstateResult substate_smoothing(const ComplexMatrix& rho,
                                  const ComplexMatrix& sigma, double eps) {
  if (eps <= 0.0 || eps >= 1.0)
    throw std::invalid_argument("substate_smoothing: eps in (0,1) required");
  ComplexMatrix proj = support_projector(sigma);
  ComplexMatrix off = rho - proj * rho * proj;
  if (off.norm() > 1e-8 * std::max(1.0, rho.norm()))
    throw std::invalid_argument("substate_smoothing: support violation");

  auto truncate = [&](double lambda) {
    // Subtract the positive part of (rho - 2^lambda sigma); the result
    // satisfies rho' <= 2^lambda sigma by construction. Clip numerical
    // negative dust back onto the cone and renormalize.
    ComplexMatrix delta = rho - std::exp2(lambda) * sigma;
    HermitianEig eig = hermitian_eig((delta + delta.adjoint()) / 2.0);
    ComplexMatrix pos = ComplexMatrix::Zero(rho.rows(), rho.cols());
    for (Eigen::Index i = 0; i < eig.values.size(); ++i)
      if (eig.values(i) > 0.0)
        pos += eig.values(i) * eig.vectors.col(i) *
               eig.vectors.col(i).adjoint();
    HermitianEig ce = hermitian_eig(
        ComplexMatrix(((rho - pos) + (rho - pos).adjoint()) / 2.0));
    ComplexMatrix cut = ComplexMatrix::Zero(rho.rows(), rho.cols());
    for (Eigen::Index i = 0; i < ce.values.size(); ++i)
      if (ce.values(i) > 0.0)
        cut += ce.values(i) * ce.vectors.col(i) * ce.vectors.col(i).adjoint();
    return cut;
  };
  // Feasibility requires both the smoothed state inside the epsilon
  // ball and kept mass >= 1 - eps, so the renormalization factor is at
  // most 1/(1 - eps) and the certificate holds by construction.
  const double tr_rho = rho.trace().real();
  auto renorm = [&](ComplexMatrix cut) {
    double t = cut.trace().real();
    if (t > 1e-14) cut *= tr_rho / t;
    return cut;
  };
  auto feasible = [&](double lambda) {
    ComplexMatrix cut = truncate(lambda);
    if (cut.trace().real() < (1.0 - eps) * tr_rho) return false;
    return purified_distance(rho, renorm(cut)) <= eps;
  };

  double hi = smax_relative(rho, sigma);
  if (!feasible(hi))
    throw std::runtime_error("substate_smoothing: bisection failure");
  // Below min(0, S_max) capping only shrinks uniformly, which the
  // renormalization undoes; nothing is gained, so floor the search.
  const double floor_l = std::min(0.0, hi);
  if (feasible(floor_l)) {
    hi = floor_l;
  } else {
    double lo = floor_l;
    for (int it = 0; it < 60; ++it) {
      double mid = 0.5 * (lo + hi);
      if (feasible(mid)) hi = mid;
      else lo = mid;
    }
  }
  SubstateResult out;
  out.lambda_bits = hi;
  out.smoothed = renorm(truncate(hi));
  out.distance = purified_distance(rho, out.smoothed);
  double bound = hi + std::log2(1.0 / (1.0 - eps));
  double achieved = smax_relative(out.smoothed, sigma);
  out.certificate_ok = achieved <= bound + 1e-7;
  return out;
}

double mutual_information(const ComplexMatrix& rho_ab, int dim_a, int dim_b) {
  TensorSpace sp({dim_a, dim_b});
  ComplexMatrix rho_a = partial_trace(rho_ab, sp, {0});
  ComplexMatrix rho_b = partial_trace(rho_ab, sp, {1});
  return von_neumann(rho_a) + von_neumann(rho_b) - von_neumann(rho_ab);
}

double imax_upper(const ComplexVector& psi_abc, int dim_a, int dim_b,
                  int dim_c, double eps) {
  TensorSpace sp({dim_a, dim_b, dim_c});
  DensityOperator full = DensityOperator::pure(psi_abc, sp);
  DensityOperator rho_a = partial_trace(full, {0});
  DensityOperator rho_ab = partial_trace(full, {0, 1});
  EntropyReport ha = hmax_smooth(rho_a.mat, eps);
  SdpSolution sdp = hmin_conditional(rho_ab.mat, dim_a, dim_b);
  return ha.value_upper - sdp.hmin_bits();
}

}  // namespace corrlab
