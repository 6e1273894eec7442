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

#ifndef CORRLAB_RANDOM_HPP
#define CORRLAB_RANDOM_HPP

#include <cstdint>
#include <random>

#include "corrlab/core.hpp"

namespace corrlab {

/// Seeded random stream. Identical (seed, stream_id) gives an identical
/// sample sequence regardless of thread count; Monte Carlo loops must
/// derive one stream per sample index.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed, std::uint64_t stream_id = 0);

  /// Derived stream for sample `k` of the same experiment.
  RngStream substream(std::uint64_t k) const;

  double gaussian();
  double uniform();  // in [0, 1)

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::mt19937_64 gen_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

/// Complex Ginibre matrix (iid standard complex Gaussian entries).
ComplexMatrix ginibre(int rows, int cols, RngStream& rng);

/// Haar-distributed unitary via QR of a Ginibre matrix, with the phase
/// convention that makes the factorization unique (diagonal of the
/// triangular factor positive-real).
ComplexMatrix haar_unitary(int dim, RngStream& rng);

/// Haar-distributed unit vector.
ComplexVector haar_state(int dim, RngStream& rng);

/// Haar-distributed isometry: `cols` orthonormal columns in dimension
/// `rows` (the first columns of a Haar unitary).
ComplexMatrix haar_isometry(int rows, int cols, RngStream& rng);

}  // namespace corrlab

#endif  // CORRLAB_RANDOM_HPP
