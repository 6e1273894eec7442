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

#ifndef CORRLAB_CORE_HPP
#define CORRLAB_CORE_HPP

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace corrlab {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Eigenvalues below kEigRelFloor * lambda_max are treated as zero
/// everywhere in the library (rank decisions, support projections,
/// matrix square roots).
inline constexpr double kEigRelFloor = 1e-10;

/// Ordered tensor factorization of a finite-dimensional space.
/// Factor indexing is 0-based; the first factor is the slowest index
/// in the flattened (row-major) convention.
class TensorSpace {
 public:
  TensorSpace() = default;
  explicit TensorSpace(std::vector<int> local_dims);

  /// Space of n identical factors of dimension d.
  static TensorSpace uniform(int n, int d);

  int factors() const { return static_cast<int>(dims_.size()); }
  int total_dim() const { return total_; }
  int local_dim(int k) const { return dims_.at(static_cast<std::size_t>(k)); }
  const std::vector<int>& local_dims() const { return dims_; }

  int flatten(const std::vector<int>& multi) const;
  void unflatten(int flat, std::vector<int>& multi) const;

  /// Space spanned by the given (sorted, distinct) factor subset.
  TensorSpace subspace(const std::vector<int>& keep) const;

  bool operator==(const TensorSpace& o) const { return dims_ == o.dims_; }

 private:
  std::vector<int> dims_;
  int total_ = 1;
};

/// Positive semidefinite operator with trace <= 1 over a tensor
/// factorization. Subnormalized states are first-class citizens.
struct DensityOperator {
  ComplexMatrix mat;
  TensorSpace space;

  DensityOperator() = default;
  DensityOperator(ComplexMatrix m, TensorSpace s);

  static DensityOperator pure(const ComplexVector& amplitudes,
                              TensorSpace space);
  /// Maximally mixed state on the given space.
  static DensityOperator maximally_mixed(TensorSpace space);

  int dim() const { return static_cast<int>(mat.rows()); }
  double trace() const { return mat.trace().real(); }
  bool is_normalized(double tol = 1e-10) const;

  /// Throws if the matrix is not Hermitian PSD (within the global
  /// tolerance) or has trace > 1 + 1e-10.
  void validate() const;
};

struct SchattenNorms {
  double trace_norm = 0.0;
  double operator_norm = 0.0;
  double frobenius_norm = 0.0;
};

/// Trace, operator and Frobenius norms from the singular values.
SchattenNorms schatten_norms(const ComplexMatrix& m);

double trace_norm(const ComplexMatrix& m);
double operator_norm(const ComplexMatrix& m);

struct HermitianEig {
  RealVector values;      // ascending
  ComplexMatrix vectors;  // columns
};

HermitianEig hermitian_eig(const ComplexMatrix& m);

/// Eigenvalues of a Hermitian PSD matrix, descending, with negative
/// dust clamped to zero at the global relative floor.
RealVector psd_spectrum(const ComplexMatrix& m);

/// Principal square root of a Hermitian PSD matrix; eigenvalues below
/// the global relative floor are clamped to zero first.
ComplexMatrix psd_sqrt(const ComplexMatrix& m);

/// Moore-Penrose inverse square root on the support.
ComplexMatrix psd_inv_sqrt(const ComplexMatrix& m);

/// Projector onto the support (eigenvalues above the relative floor).
ComplexMatrix support_projector(const ComplexMatrix& m);

int numerical_rank(const ComplexMatrix& m);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Trace out all factors not in `keep`. `keep` must be sorted and
/// within range; the result lives on the kept factors in their
/// original order.
ComplexMatrix partial_trace(const ComplexMatrix& m, const TensorSpace& space,
                            const std::vector<int>& keep);

DensityOperator partial_trace(const DensityOperator& op,
                              const std::vector<int>& keep);

/// Reorder tensor factors of a vector: perm[k] = source factor placed
/// at position k of the output.
ComplexVector permute_factors(const ComplexVector& v, const TensorSpace& space,
                              const std::vector<int>& perm);

}  // namespace corrlab

#endif  // CORRLAB_CORE_HPP
