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

#include "corrlab/metrics.hpp"

#include <algorithm>
#include <cmath>

namespace corrlab {

namespace {
void check_pair(const ComplexMatrix& rho, const ComplexMatrix& sigma) {
  if (rho.rows() != sigma.rows() || rho.cols() != sigma.cols())
    throw std::invalid_argument("metrics: dimension mismatch");
}

double clamp01(double x) { return std::min(1.0, std::max(0.0, x)); }
}  // namespace

double fidelity(const ComplexMatrix& rho, const ComplexMatrix& sigma) {
  check_pair(rho, sigma);
  ComplexMatrix sr = psd_sqrt(rho);
  ComplexMatrix ss = psd_sqrt(sigma);
  return trace_norm(sr * ss);
}

double fidelity(const DensityOperator& rho, const DensityOperator& sigma) {
  return fidelity(rho.mat, sigma.mat);
}

double generalized_fidelity(const ComplexMatrix& rho,
                            const ComplexMatrix& sigma) {
  check_pair(rho, sigma);
  double tr = rho.trace().real();
  double ts = sigma.trace().real();
  if (tr > 1.0 + 1e-10 || ts > 1.0 + 1e-10)
    throw std::invalid_argument("generalized_fidelity: trace > 1");
  double gap = std::max(0.0, 1.0 - tr) * std::max(0.0, 1.0 - ts);
  return fidelity(rho, sigma) + std::sqrt(gap);
}

double generalized_fidelity(const DensityOperator& rho,
                            const DensityOperator& sigma) {
  return generalized_fidelity(rho.mat, sigma.mat);
}

double purified_distance(const ComplexMatrix& rho, const ComplexMatrix& sigma) {
  double f = clamp01(generalized_fidelity(rho, sigma));
  return std::sqrt(std::max(0.0, 1.0 - f * f));
}

double purified_distance(const DensityOperator& rho,
                         const DensityOperator& sigma) {
  return purified_distance(rho.mat, sigma.mat);
}

double d1_distance(const ComplexMatrix& rho, const ComplexMatrix& sigma) {
  check_pair(rho, sigma);
  double tr = rho.trace().real();
  double ts = sigma.trace().real();
  if (tr > 1.0 + 1e-10 || ts > 1.0 + 1e-10)
    throw std::invalid_argument("d1_distance: trace > 1");
  return 0.5 * trace_norm(rho - sigma) + 0.5 * std::abs(tr - ts);
}

double d1_distance(const DensityOperator& rho, const DensityOperator& sigma) {
  return d1_distance(rho.mat, sigma.mat);
}

double d1_variational(const ComplexMatrix& rho, const ComplexMatrix& sigma) {
  check_pair(rho, sigma);
  // max over 0 <= M <= I of |tr(M (rho - sigma))| is attained either by
  // the projector onto the positive eigenspace of the difference or by
  // the one onto the negative eigenspace.
  HermitianEig eig = hermitian_eig((rho - sigma + (rho - sigma).adjoint()) /
                                   2.0);
  double pos = 0.0, neg = 0.0;
  for (Eigen::Index i = 0; i < eig.values.size(); ++i) {
    if (eig.values(i) > 0.0) pos += eig.values(i);
    else neg -= eig.values(i);
  }
  return std::max(pos, neg);
}

}  // namespace corrlab
