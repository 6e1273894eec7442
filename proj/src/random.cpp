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

#include "corrlab/random.hpp"

#include <Eigen/QR>
#include <cmath>

namespace corrlab {

namespace {
// splitmix64, used to decorrelate (seed, stream_id) pairs.
std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}
}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id) {
  std::seed_seq seq{static_cast<std::uint32_t>(mix(seed)),
                    static_cast<std::uint32_t>(mix(seed) >> 32),
                    static_cast<std::uint32_t>(mix(stream_id ^ 0x5bf0'3635ULL)),
                    static_cast<std::uint32_t>(
                        mix(stream_id ^ 0x5bf0'3635ULL) >> 32)};
  gen_.seed(seq);
}

RngStream RngStream::substream(std::uint64_t k) const {
  return RngStream(seed_, mix(stream_id_) ^ (k + 1));
}

double RngStream::gaussian() { return normal_(gen_); }

double RngStream::uniform() {
  return std::uniform_real_distribution<double>(0.0, 1.0)(gen_);
}

ComplexMatrix ginibre(int rows, int cols, RngStream& rng) {
  ComplexMatrix g(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j)
      g(i, j) = Complex(rng.gaussian(), rng.gaussian()) / std::sqrt(2.0);
  return g;
}

ComplexMatrix haar_unitary(int dim, RngStream& rng) {
  if (dim < 1) throw std::invalid_argument("haar_unitary: dim < 1");
  ComplexMatrix g = ginibre(dim, dim, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ();
  ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix the phase freedom so Q is drawn from the Haar measure: rotate
  // columns to make the diagonal of R positive-real.
  for (int j = 0; j < dim; ++j) {
    Complex d = r(j, j);
    double a = std::abs(d);
    Complex phase = a > 0.0 ? d / a : Complex(1.0, 0.0);
    q.col(j) *= phase;
  }
  return q;
}

ComplexVector haar_state(int dim, RngStream& rng) {
  if (dim < 1) throw std::invalid_argument("haar_state: dim < 1");
  ComplexVector v(dim);
  for (int i = 0; i < dim; ++i)
    v(i) = Complex(rng.gaussian(), rng.gaussian());
  double n = v.norm();
  if (n == 0.0) return haar_state(dim, rng);
  return v / n;
}

ComplexMatrix haar_isometry(int rows, int cols, RngStream& rng) {
  if (cols > rows) throw std::invalid_argument("haar_isometry: cols > rows");
  return haar_unitary(rows, rng).leftCols(cols);
}

}  // namespace corrlab
