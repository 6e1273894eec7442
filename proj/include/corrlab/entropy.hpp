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

#ifndef CORRLAB_ENTROPY_HPP
#define CORRLAB_ENTROPY_HPP

#include <string>
#include <utility>

#include "corrlab/core.hpp"
#include "corrlab/sdp.hpp"

namespace corrlab {

// All logarithms are base 2 throughout the library.

double binary_entropy(double p);

/// Certified two-sided interval for a smooth entropy. The certificates
/// describe the witness that produced each end (spectral truncation
/// rank or SDP feasible point) so values can be re-verified.
struct EntropyReport {
  double value_lower = 0.0;  // bits
  double value_upper = 0.0;  // bits
  std::string certificate_lower;
  std::string certificate_upper;
  double epsilon = 0.0;
};

/// Von Neumann entropy in bits; rejects subnormalized input.
double von_neumann(const ComplexMatrix& rho);
double von_neumann(const DensityOperator& rho);

/// Smooth max-entropy as a certified interval: the upper end from the
/// smallest spectral truncation inside the epsilon purified-distance
/// ball (top-r mass >= 1 - eps^2), the lower end from the smallest r
/// with top-r mass >= 1 - 2 eps.
EntropyReport hmax_smooth(const ComplexMatrix& rho, double eps);
EntropyReport hmax_smooth(const RealVector& spectrum_descending, double eps);

/// Conditional min-entropy H_min(A|B) via the primal-dual SDP.
SdpSolution hmin_conditional(const ComplexMatrix& rho_ab, int dim_a,
                             int dim_b);

/// H_max(A|C) of the tripartite pure state psi_ABC via the duality
/// H_max(A|C) = -H_min(A|B), at zero smoothing.
EntropyReport hmax_conditional(const ComplexVector& psi_abc, int dim_a,
                               int dim_b, int dim_c);

/// Max-relative entropy log2 lmax(sigma^{-1/2} rho sigma^{-1/2}) on the
/// support of sigma; requires supp(rho) within supp(sigma).
double smax_relative(const ComplexMatrix& rho, const ComplexMatrix& sigma);

/// Quantum relative entropy S(rho||sigma) in bits (test oracle for the
/// substate bound).
double relative_entropy(const ComplexMatrix& rho, const ComplexMatrix& sigma);

struct SubstateResult {
  ComplexMatrix smoothed;   // rho' in the epsilon ball
  double lambda_bits = 0.0; // certified upper bound ingredient
  double distance = 0.0;    // D(rho, rho')
  bool certificate_ok = false;  // S_max(rho'||sigma) <= lambda + log2(1/(1-eps))
};

/// Truncation-family smoothing: for candidate lambda, project out the
/// positive part of rho - 2^lambda sigma and renormalize; bisect to the
/// smallest lambda whose smoothed state stays within purified distance
/// eps of rho.
SubstateResult substate_smoothing(const ComplexMatrix& rho,
                                  const ComplexMatrix& sigma, double eps);

/// I(A:B) = S(A) + S(B) - S(AB).
double mutual_information(const ComplexMatrix& rho_ab, int dim_a, int dim_b);

/// Certified upper bound on I_max^eps(A:B) of a tripartite pure state:
/// upper(H_max^eps(A)) - H_min(A|B) (conditional term at eps = 0, which
/// can only increase the bound).
double imax_upper(const ComplexVector& psi_abc, int dim_a, int dim_b,
                  int dim_c, double eps);

/// Purification of a PSD operator: vector on dim x dim whose first
/// factor reduces to rho.
ComplexVector purify(const ComplexMatrix& rho);

}  // namespace corrlab

#endif  // CORRLAB_ENTROPY_HPP
