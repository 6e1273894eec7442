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

#ifndef CORRLAB_TESTS_TEST_UTIL_HPP
#define CORRLAB_TESTS_TEST_UTIL_HPP

#include "corrlab/core.hpp"
#include "corrlab/random.hpp"

namespace corrlab::testutil {

inline ComplexMatrix random_density(int dim, RngStream& rng) {
  ComplexMatrix g = ginibre(dim, dim, rng);
  ComplexMatrix rho = g * g.adjoint();
  return rho / rho.trace().real();
}

inline ComplexMatrix random_hermitian(int dim, RngStream& rng) {
  ComplexMatrix g = ginibre(dim, dim, rng);
  return (g + g.adjoint()) / 2.0;
}

}  // namespace corrlab::testutil

#endif  // CORRLAB_TESTS_TEST_UTIL_HPP
