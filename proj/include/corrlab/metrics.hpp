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

#ifndef CORRLAB_METRICS_HPP
#define CORRLAB_METRICS_HPP

#include "corrlab/core.hpp"

namespace corrlab {

/// F(rho, sigma) = tr sqrt(sqrt(sigma) rho sqrt(sigma)),
/// computed as || sqrt(rho) sqrt(sigma) ||_1.
double fidelity(const DensityOperator& rho, const DensityOperator& sigma);
double fidelity(const ComplexMatrix& rho, const ComplexMatrix& sigma);

/// F + sqrt((1 - tr rho)(1 - tr sigma)); reduces to F when either
/// state is normalized.
double generalized_fidelity(const DensityOperator& rho,
                            const DensityOperator& sigma);
double generalized_fidelity(const ComplexMatrix& rho,
                            const ComplexMatrix& sigma);

/// Purified distance sqrt(1 - Fbar^2) on subnormalized states.
double purified_distance(const DensityOperator& rho,
                         const DensityOperator& sigma);
double purified_distance(const ComplexMatrix& rho, const ComplexMatrix& sigma);

/// D1(rho, sigma) = (1/2)||rho - sigma||_1 + (1/2)|tr rho - tr sigma|.
/// Equals max over 0 <= M <= I of |tr(M (rho - sigma))|.
double d1_distance(const DensityOperator& rho, const DensityOperator& sigma);
double d1_distance(const ComplexMatrix& rho, const ComplexMatrix& sigma);

/// Variational route for D1: value of the optimal eigenspace test
/// operator. Used as the independent cross-check of the formula.
double d1_variational(const ComplexMatrix& rho, const ComplexMatrix& sigma);

}  // namespace corrlab

#endif  // CORRLAB_METRICS_HPP
