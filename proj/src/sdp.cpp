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

#include "corrlab/sdp.hpp"

#include <cmath>
#include <vector>

namespace corrlab {

double SdpSolution::hmin_bits() const { return -std::log2(primal_value); }

namespace {

ComplexMatrix sym(const ComplexMatrix& m) { return (m + m.adjoint()) / 2.0; }

// Orthonormal Hermitian basis of the B factor under <A,B> = tr(AB).
std::vector<ComplexMatrix> hermitian_basis(int d) {
  std::vector<ComplexMatrix> basis;
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (int p = 0; p < d; ++p) {
    ComplexMatrix e = ComplexMatrix::Zero(d, d);
    e(p, p) = 1.0;
    basis.push_back(e);
  }
  for (int p = 0; p < d; ++p)
    for (int q = p + 1; q < d; ++q) {
      ComplexMatrix e = ComplexMatrix::Zero(d, d);
      e(p, q) = inv_sqrt2;
      e(q, p) = inv_sqrt2;
      basis.push_back(e);
      ComplexMatrix f = ComplexMatrix::Zero(d, d);
      f(p, q) = Complex(0.0, inv_sqrt2);
      f(q, p) = Complex(0.0, -inv_sqrt2);
      basis.push_back(f);
    }
  return basis;
}

// Exact inverse of a strictly positive definite matrix via Cholesky;
// the support-clamped pseudo-inverse must not be used here or iterates
// can leave the cone unnoticed.
ComplexMatrix pd_inverse(const ComplexMatrix& m) {
  Eigen::LLT<ComplexMatrix> llt(m);
  if (llt.info() != Eigen::Success)
    throw std::runtime_error("solve_hmin_sdp: iterate left the PSD cone");
  return llt.solve(ComplexMatrix::Identity(m.rows(), m.cols()));
}

// Largest alpha in (0, 1] with M + alpha * dM still positive definite.
double max_step(const ComplexMatrix& m, const ComplexMatrix& dm) {
  Eigen::LLT<ComplexMatrix> llt(m);
  if (llt.info() != Eigen::Success)
    throw std::runtime_error("solve_hmin_sdp: iterate left the PSD cone");
  ComplexMatrix li = ComplexMatrix::Identity(m.rows(), m.cols());
  llt.matrixL().solveInPlace(li);  // li = L^{-1}
  HermitianEig eig = hermitian_eig(sym(li * dm * li.adjoint()));
  double lmin = eig.values.minCoeff();
  if (lmin >= 0.0) return 1.0;
  return std::min(1.0, -1.0 / lmin);
}

ComplexMatrix partial_trace_a(const ComplexMatrix& m, int da, int db) {
  ComplexMatrix out = ComplexMatrix::Zero(db, db);
  for (int a = 0; a < da; ++a)
    out += m.block(a * db, a * db, db, db);
  return out;
}

ComplexMatrix lift_b(const ComplexMatrix& s, int da) {
  // I_A (x) s
  int db = static_cast<int>(s.rows());
  ComplexMatrix out = ComplexMatrix::Zero(da * db, da * db);
  for (int a = 0; a < da; ++a)
    out.block(a * db, a * db, db, db) = s;
  return out;
}

}  // namespace

SdpSolution solve_hmin_sdp(const ComplexMatrix& rho_ab, int dim_a, int dim_b,
                           double gap_tol, int max_iter) {
  const int n = dim_a * dim_b;
  if (n > 64) throw std::invalid_argument("solve_hmin_sdp: dim > 64");
  if (rho_ab.rows() != n || rho_ab.cols() != n)
    throw std::invalid_argument("solve_hmin_sdp: shape mismatch");

  const std::vector<ComplexMatrix> basis = hermitian_basis(dim_b);
  const int nb = static_cast<int>(basis.size());

  HermitianEig rho_eig = hermitian_eig(sym(rho_ab));
  double lmax = rho_eig.values.maxCoeff();

  // Strictly feasible start: sigma interior for the primal, X exactly
  // satisfying Tr_A X = I_B for the dual.
  ComplexMatrix sigma =
      (lmax + 1.0) * ComplexMatrix::Identity(dim_b, dim_b);
  ComplexMatrix S = lift_b(sigma, dim_a) - rho_ab;
  ComplexMatrix X = ComplexMatrix::Identity(n, n) / double(dim_a);

  SdpSolution sol;
  Eigen::MatrixXd m_sys(nb, nb);
  Eigen::VectorXd rhs(nb);

  for (int it = 0; it < max_iter; ++it) {
    double gap = (S * X).trace().real();
    sol.iterations = it;
    if (gap <= gap_tol && it > 0) {
      sol.converged = true;
      break;
    }
    double mu = 0.3 * gap / n;

    ComplexMatrix Sinv = sym(pd_inverse(S));

    // Newton step (HKM direction) restricted to the feasible manifold:
    //   Tr_A sym(S^{-1} (I (x) dsigma) X) = mu Tr_A(S^{-1}) - I_B.
    ComplexMatrix target =
        mu * partial_trace_a(Sinv, dim_a, dim_b) -
        ComplexMatrix::Identity(dim_b, dim_b);
    for (int j = 0; j < nb; ++j)
      rhs(j) = (basis[static_cast<std::size_t>(j)] * target).trace().real();
    for (int i = 0; i < nb; ++i) {
      ComplexMatrix g = partial_trace_a(
          sym(Sinv * lift_b(basis[static_cast<std::size_t>(i)], dim_a) * X),
          dim_a, dim_b);
      for (int j = 0; j < nb; ++j)
        m_sys(j, i) =
            (basis[static_cast<std::size_t>(j)] * g).trace().real();
    }
    Eigen::VectorXd y = m_sys.fullPivLu().solve(rhs);

    ComplexMatrix dsigma = ComplexMatrix::Zero(dim_b, dim_b);
    for (int i = 0; i < nb; ++i)
      dsigma += y(i) * basis[static_cast<std::size_t>(i)];
    ComplexMatrix dS = lift_b(dsigma, dim_a);
    ComplexMatrix dX = sym(mu * Sinv - X - Sinv * dS * X);

    double ad = 0.95 * max_step(S, dS);
    double ap = 0.95 * max_step(X, dX);
    sigma += ad * dsigma;
    S = lift_b(sigma, dim_a) - rho_ab;
    X += ap * dX;
  }

  sol.sigma = sigma;
  sol.X = X;
  sol.primal_value = sigma.trace().real();
  sol.dual_value = (rho_ab * X).trace().real();
  sol.gap = sol.primal_value - sol.dual_value;
  return sol;
}

}  // namespace corrlab
