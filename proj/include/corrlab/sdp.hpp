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

#ifndef CORRLAB_SDP_HPP
#define CORRLAB_SDP_HPP

#include "corrlab/core.hpp"

namespace corrlab {

/// Solution of the conditional min-entropy SDP pair
///   primal:  minimize tr(sigma)   s.t.  I_A (x) sigma >= rho_AB
///   dual:    maximize tr(rho X)   s.t.  X >= 0, Tr_A X = I_B
/// Both witnesses are kept feasible throughout, so the duality gap is a
/// rigorous two-sided certificate.
struct SdpSolution {
  double primal_value = 0.0;
  double dual_value = 0.0;
  ComplexMatrix sigma;  // primal witness, dim_B x dim_B
  ComplexMatrix X;      // dual witness, (dim_A dim_B) x (dim_A dim_B)
  double gap = 0.0;     // primal_value - dual_value, >= 0 at feasibility
  bool converged = false;
  int iterations = 0;

  /// H_min(A|B) = -log2(primal value).
  double hmin_bits() const;
};

/// Primal-dual path-following interior point solver with dense Newton
/// steps. Dimensions are capped at 64; the duality gap is the only
/// accepted convergence criterion.
SdpSolution solve_hmin_sdp(const ComplexMatrix& rho_ab, int dim_a, int dim_b,
                           double gap_tol = 1e-9, int max_iter = 300);

}  // namespace corrlab

#endif  // CORRLAB_SDP_HPP
