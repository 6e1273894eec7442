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

#include "corrlab/core.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <unsupported/Eigen/KroneckerProduct>

namespace corrlab {

TensorSpace::TensorSpace(std::vector<int> local_dims)
    : dims_(std::move(local_dims)) {
  if (dims_.empty()) throw std::invalid_argument("TensorSpace: no factors");
  total_ = 1;
  for (int d : dims_) {
    if (d < 1) throw std::invalid_argument("TensorSpace: local dim < 1");
    total_ *= d;
  }
}

TensorSpace TensorSpace::uniform(int n, int d) {
  return TensorSpace(std::vector<int>(static_cast<std::size_t>(n), d));
}

int TensorSpace::flatten(const std::vector<int>& multi) const {
  int idx = 0;
  for (int k = 0; k < factors(); ++k) {
    idx = idx * dims_[static_cast<std::size_t>(k)] +
          multi[static_cast<std::size_t>(k)];
  }
  return idx;
}

void TensorSpace::unflatten(int flat, std::vector<int>& multi) const {
  multi.resize(dims_.size());
  for (int k = factors() - 1; k >= 0; --k) {
    int d = dims_[static_cast<std::size_t>(k)];
    multi[static_cast<std::size_t>(k)] = flat % d;
    flat /= d;
  }
}

TensorSpace TensorSpace::subspace(const std::vector<int>& keep) const {
  std::vector<int> d;
  d.reserve(keep.size());
  for (int k : keep) {
    if (k < 0 || k >= factors())
      throw std::out_of_range("TensorSpace::subspace: factor out of range");
    d.push_back(dims_[static_cast<std::size_t>(k)]);
  }
  return TensorSpace(std::move(d));
}

DensityOperator::DensityOperator(ComplexMatrix m, TensorSpace s)
    : mat(std::move(m)), space(std::move(s)) {
  if (mat.rows() != mat.cols() || mat.rows() != space.total_dim())
    throw std::invalid_argument("DensityOperator: shape/space mismatch");
}

DensityOperator DensityOperator::pure(const ComplexVector& amplitudes,
                                      TensorSpace space) {
  if (amplitudes.size() != space.total_dim())
    throw std::invalid_argument("DensityOperator::pure: dimension mismatch");
  return DensityOperator(amplitudes * amplitudes.adjoint(), std::move(space));
}

DensityOperator DensityOperator::maximally_mixed(TensorSpace space) {
  int d = space.total_dim();
  return DensityOperator(ComplexMatrix::Identity(d, d) / double(d),
                         std::move(space));
}

bool DensityOperator::is_normalized(double tol) const {
  return std::abs(trace() - 1.0) <= tol;
}

void DensityOperator::validate() const {
  if ((mat - mat.adjoint()).norm() > 1e-9 * std::max(1.0, mat.norm()))
    throw std::invalid_argument("DensityOperator: not Hermitian");
  if (trace() > 1.0 + 1e-10)
    throw std::invalid_argument("DensityOperator: trace > 1");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(mat,
                                                  Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -1e-10)
    throw std::invalid_argument("DensityOperator: negative eigenvalue");
}

SchattenNorms schatten_norms(const ComplexMatrix& m) {
  if (!m.allFinite())
    throw std::invalid_argument("schatten_norms: non-finite entries");
  Eigen::BDCSVD<ComplexMatrix> svd(m);
  const auto& s = svd.singularValues();
  SchattenNorms out;
  out.trace_norm = s.sum();
  out.operator_norm = s.size() > 0 ? s(0) : 0.0;
  out.frobenius_norm = s.norm();
  return out;
}

double trace_norm(const ComplexMatrix& m) { return schatten_norms(m).trace_norm; }

double operator_norm(const ComplexMatrix& m) {
  return schatten_norms(m).operator_norm;
}

HermitianEig hermitian_eig(const ComplexMatrix& m) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("hermitian_eig: eigensolver failed");
  return HermitianEig{es.eigenvalues(), es.eigenvectors()};
}

RealVector psd_spectrum(const ComplexMatrix& m) {
  HermitianEig eig = hermitian_eig(m);
  double lmax = eig.values.size() > 0 ? eig.values.maxCoeff() : 0.0;
  double floor = kEigRelFloor * std::max(lmax, 0.0);
  RealVector out(eig.values.size());
  for (Eigen::Index i = 0; i < eig.values.size(); ++i) {
    double v = eig.values(eig.values.size() - 1 - i);  // descending
    out(i) = v > floor ? v : 0.0;
  }
  return out;
}

namespace {
ComplexMatrix psd_apply(const ComplexMatrix& m, double (*f)(double)) {
  HermitianEig eig = hermitian_eig(m);
  double lmax = eig.values.maxCoeff();
  double floor = kEigRelFloor * std::max(lmax, 0.0);
  RealVector fv(eig.values.size());
  for (Eigen::Index i = 0; i < eig.values.size(); ++i)
    fv(i) = eig.values(i) > floor ? f(eig.values(i)) : 0.0;
  return eig.vectors * fv.asDiagonal() * eig.vectors.adjoint();
}
}  // namespace

ComplexMatrix psd_sqrt(const ComplexMatrix& m) {
  return psd_apply(m, [](double x) { return std::sqrt(x); });
}

ComplexMatrix psd_inv_sqrt(const ComplexMatrix& m) {
  return psd_apply(m, [](double x) { return 1.0 / std::sqrt(x); });
}

ComplexMatrix support_projector(const ComplexMatrix& m) {
  return psd_apply(m, [](double) { return 1.0; });
}

int numerical_rank(const ComplexMatrix& m) {
  RealVector s = psd_spectrum(m);
  int r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > 0.0) ++r;
  return r;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  return Eigen::kroneckerProduct(a, b).eval();
}

ComplexMatrix partial_trace(const ComplexMatrix& m, const TensorSpace& space,
                            const std::vector<int>& keep) {
  const int nf = space.factors();
  for (std::size_t i = 0; i < keep.size(); ++i) {
    if (keep[i] < 0 || keep[i] >= nf)
      throw std::out_of_range("partial_trace: factor index out of range");
    if (i > 0 && keep[i] <= keep[i - 1])
      throw std::invalid_argument("partial_trace: keep must be sorted distinct");
  }
  if (m.rows() != space.total_dim() || m.cols() != space.total_dim())
    throw std::invalid_argument("partial_trace: shape/space mismatch");

  std::vector<int> traced;
  for (int k = 0; k < nf; ++k)
    if (!std::binary_search(keep.begin(), keep.end(), k)) traced.push_back(k);

  TensorSpace kept_space =
      keep.empty() ? TensorSpace({1}) : space.subspace(keep);
  const int dk = kept_space.total_dim();
  int dt = 1;
  for (int k : traced) dt *= space.local_dim(k);

  // Strides of each factor in the flattened index.
  std::vector<int> stride(static_cast<std::size_t>(nf), 1);
  for (int k = nf - 2; k >= 0; --k)
    stride[static_cast<std::size_t>(k)] =
        stride[static_cast<std::size_t>(k + 1)] * space.local_dim(k + 1);

  // Flat offsets contributed by the kept / traced sub-indices.
  auto offsets = [&](const std::vector<int>& factors) {
    int count = 1;
    for (int k : factors) count *= space.local_dim(k);
    std::vector<int> off(static_cast<std::size_t>(count), 0);
    int rep = 1;
    for (auto it = factors.rbegin(); it != factors.rend(); ++it) {
      int d = space.local_dim(*it);
      int s = stride[static_cast<std::size_t>(*it)];
      for (int idx = 0; idx < count; ++idx) {
        int digit = (idx / rep) % d;
        off[static_cast<std::size_t>(idx)] += digit * s;
      }
      rep *= d;
    }
    return off;
  };
  std::vector<int> koff = offsets(keep);
  std::vector<int> toff = offsets(traced);

  ComplexMatrix out = ComplexMatrix::Zero(dk, dk);
  for (int i = 0; i < dk; ++i)
    for (int j = 0; j < dk; ++j) {
      Complex acc = 0.0;
      for (int t = 0; t < dt; ++t)
        acc += m(koff[static_cast<std::size_t>(i)] +
                     toff[static_cast<std::size_t>(t)],
                 koff[static_cast<std::size_t>(j)] +
                     toff[static_cast<std::size_t>(t)]);
      out(i, j) = acc;
    }
  return out;
}

DensityOperator partial_trace(const DensityOperator& op,
                              const std::vector<int>& keep) {
  ComplexMatrix m = partial_trace(op.mat, op.space, keep);
  TensorSpace s = keep.empty() ? TensorSpace({1}) : op.space.subspace(keep);
  return DensityOperator(std::move(m), std::move(s));
}

ComplexVector permute_factors(const ComplexVector& v, const TensorSpace& space,
                              const std::vector<int>& perm) {
  const int nf = space.factors();
  if (static_cast<int>(perm.size()) != nf)
    throw std::invalid_argument("permute_factors: bad permutation size");
  std::vector<int> out_dims(perm.size());
  for (int k = 0; k < nf; ++k)
    out_dims[static_cast<std::size_t>(k)] =
        space.local_dim(perm[static_cast<std::size_t>(k)]);
  TensorSpace out_space(out_dims);
  ComplexVector out(v.size());
  std::vector<int> src(static_cast<std::size_t>(nf));
  std::vector<int> dst(static_cast<std::size_t>(nf));
  for (int i = 0; i < space.total_dim(); ++i) {
    space.unflatten(i, src);
    for (int k = 0; k < nf; ++k)
      dst[static_cast<std::size_t>(k)] =
          src[static_cast<std::size_t>(perm[static_cast<std::size_t>(k)])];
    out(out_space.flatten(dst)) = v(i);
  }
  return out;
}

}  // namespace corrlab
