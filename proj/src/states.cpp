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

#include "corrlab/states.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <istream>
#include <locale>
#include <ostream>
#include <sstream>

namespace corrlab {

ChainState::ChainState(ComplexVector amplitudes, int sites, int site_dim,
                       Topology topology)
    : amps_(std::move(amplitudes)), n_(sites), d_(site_dim),
      topology_(topology) {
  if (n_ < 2) throw std::invalid_argument("ChainState: n >= 2 required");
  if (d_ < 2) throw std::invalid_argument("ChainState: site dim >= 2 required");
  double expected = std::pow(double(d_), double(n_));
  if (double(amps_.size()) != expected)
    throw std::invalid_argument("ChainState: amplitude count mismatch");
  if (std::abs(amps_.norm() - 1.0) > 1e-10)
    throw std::invalid_argument("ChainState: not normalized");
}

std::vector<int> Region::sites(int n, Topology topo) const {
  if (length < 1 || length > n)
    throw std::invalid_argument("Region: bad length");
  if (start < 0 || start >= n) throw std::invalid_argument("Region: bad start");
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(length));
  for (int k = 0; k < length; ++k) {
    int s = start + k;
    if (s >= n) {
      if (topo == Topology::line)
        throw std::invalid_argument("Region: wraparound on a line");
      s -= n;
    }
    out.push_back(s);
  }
  return out;
}

bool regions_disjoint(const Region& x, const Region& y, int n, Topology topo) {
  std::vector<int> a = x.sites(n, topo);
  std::vector<int> b = y.sites(n, topo);
  for (int s : a)
    for (int t : b)
      if (s == t) return false;
  return true;
}

int separation(const Region& x, const Region& y, int n, Topology topo) {
  if (!regions_disjoint(x, y, n, topo))
    throw std::invalid_argument("separation: regions overlap");
  std::vector<int> a = x.sites(n, topo);
  std::vector<int> b = y.sites(n, topo);
  int best = n;
  for (int s : a)
    for (int t : b) {
      int d = std::abs(s - t);
      if (topo == Topology::ring) d = std::min(d, n - d);
      best = std::min(best, d);
    }
  return best - 1;  // number of sites strictly between the regions
}

namespace {

// Reduced density over an explicit ordered site list, via permutation
// then a Gram-matrix contraction of the pure state.
ComplexMatrix reduce_to_sites(const ChainState& state,
                              const std::vector<int>& front) {
  const int n = state.sites();
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  std::vector<int> perm = front;
  for (int s : front) used[static_cast<std::size_t>(s)] = true;
  for (int s = 0; s < n; ++s)
    if (!used[static_cast<std::size_t>(s)]) perm.push_back(s);
  ComplexVector v = permute_factors(state.amplitudes(), state.space(), perm);
  int dk = 1;
  for (std::size_t i = 0; i < front.size(); ++i) dk *= state.site_dim();
  int denv = static_cast<int>(v.size()) / dk;
  Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic,
                                 Eigen::RowMajor>>
      m(v.data(), dk, denv);
  return m * m.adjoint();
}

}  // namespace

DensityOperator reduced_density(const ChainState& state, const Region& x) {
  std::vector<int> sites = x.sites(state.sites(), state.topology());
  ComplexMatrix rho = reduce_to_sites(state, sites);
  return DensityOperator(std::move(rho),
                         TensorSpace::uniform(x.length, state.site_dim()));
}

DensityOperator reduced_density_pair(const ChainState& state, const Region& x,
                                     const Region& y) {
  std::vector<int> sites = x.sites(state.sites(), state.topology());
  std::vector<int> ys = y.sites(state.sites(), state.topology());
  sites.insert(sites.end(), ys.begin(), ys.end());
  ComplexMatrix rho = reduce_to_sites(state, sites);
  return DensityOperator(
      std::move(rho),
      TensorSpace::uniform(x.length + y.length, state.site_dim()));
}

int QuantumChannel::dim() const {
  if (kraus.empty()) throw std::invalid_argument("QuantumChannel: no Kraus");
  return static_cast<int>(kraus.front().rows());
}

bool QuantumChannel::trace_preserving(double tol) const {
  int d = dim();
  ComplexMatrix acc = ComplexMatrix::Zero(d, d);
  for (const auto& a : kraus) acc += a.adjoint() * a;
  return (acc - ComplexMatrix::Identity(d, d)).norm() <= tol * d;
}

bool QuantumChannel::unital(double tol) const {
  int d = dim();
  ComplexMatrix acc = ComplexMatrix::Zero(d, d);
  for (const auto& a : kraus) acc += a * a.adjoint();
  return (acc - ComplexMatrix::Identity(d, d)).norm() <= tol * d;
}

ComplexMatrix QuantumChannel::apply(const ComplexMatrix& rho) const {
  int d = dim();
  ComplexMatrix out = ComplexMatrix::Zero(d, d);
  for (const auto& a : kraus) out += a * rho * a.adjoint();
  return out;
}

ComplexMatrix QuantumChannel::apply_n(const ComplexMatrix& rho,
                                      int times) const {
  ComplexMatrix out = rho;
  for (int k = 0; k < times; ++k) out = apply(out);
  return out;
}

int MatrixProductState::phys_dim() const {
  if (site_tensors.empty())
    throw std::invalid_argument("MatrixProductState: empty");
  return static_cast<int>(site_tensors.front().size());
}

int MatrixProductState::bond_dim() const {
  int best = 1;
  for (const auto& site : site_tensors)
    for (const auto& m : site)
      best = std::max(best, static_cast<int>(m.cols()));
  return best;
}

namespace {

void dense_rec(const MatrixProductState& mps, int site,
               const ComplexMatrix& prefix, int flat,
               ComplexVector& out) {
  const int n = mps.sites();
  const int d = mps.phys_dim();
  if (site == n) {
    out(flat) = mps.boundary == MatrixProductState::Boundary::trace_closure
                    ? prefix.trace()
                    : prefix(0, 0);
    return;
  }
  for (int i = 0; i < d; ++i)
    dense_rec(mps, site + 1,
              (prefix *
               mps.site_tensors[static_cast<std::size_t>(site)]
                               [static_cast<std::size_t>(i)])
                  .eval(),
              flat * d + i, out);
}

}  // namespace

ComplexVector MatrixProductState::dense_coefficients() const {
  const int n = sites();
  const int d = phys_dim();
  double total = std::pow(double(d), double(n));
  if (n * std::log2(double(d)) > 20.5)
    throw std::invalid_argument("dense_coefficients: dimension budget");
  ComplexVector out(static_cast<Eigen::Index>(total));
  int left = static_cast<int>(
      site_tensors.front().front().rows());
  ComplexMatrix prefix = ComplexMatrix::Identity(left, left);
  dense_rec(*this, 0, prefix, 0, out);
  return out;
}

ChainState MatrixProductState::to_chain_state(Topology topo,
                                              double* norm_out) const {
  ComplexVector v = dense_coefficients();
  double norm = v.norm();
  if (norm <= 1e-14)
    throw std::runtime_error("MatrixProductState: zero-norm dense expansion");
  if (norm_out) *norm_out = norm;
  return ChainState(v / norm, sites(), phys_dim(), topo);
}

std::pair<MatrixProductState, QuantumChannel> expander_state(int d, int D,
                                                             int n,
                                                             RngStream& rng) {
  if (d < 1 || D < 2 || n < 2)
    throw std::invalid_argument("expander_state: bad parameters");
  auto sample = [&](RngStream& r) {
    QuantumChannel ch;
    for (int i = 0; i < d; ++i)
      ch.kraus.push_back(haar_unitary(D, r) / std::sqrt(double(d)));
    return ch;
  };
  QuantumChannel ch = sample(rng);
  auto build = [&](const QuantumChannel& c) {
    MatrixProductState mps;
    mps.translation_invariant = true;
    mps.boundary = MatrixProductState::Boundary::trace_closure;
    mps.site_tensors.assign(static_cast<std::size_t>(n), c.kraus);
    return mps;
  };
  MatrixProductState mps = build(ch);
  bool expandable = n * std::log2(double(d)) <= 20.5;
  if (expandable) {
    ComplexVector v = mps.dense_coefficients();
    if (v.norm() <= 1e-14) {
      RngStream retry = rng.substream(0x5e5a);
      ch = sample(retry);
      mps = build(ch);
      if (mps.dense_coefficients().norm() <= 1e-14)
        throw std::runtime_error("expander_state: zero-norm expansion");
    }
  }
  if (!ch.trace_preserving() || !ch.unital())
    throw std::runtime_error("expander_state: channel verification failed");
  return {std::move(mps), std::move(ch)};
}

double expander_purity(const QuantumChannel& ch, int l) {
  if (!ch.unital(1e-9))
    throw std::invalid_argument("expander_purity: channel not unital");
  if (l < 1) throw std::invalid_argument("expander_purity: l >= 1");
  const int D = ch.dim();
  double acc = 0.0;
  for (int i = 0; i < D; ++i)
    for (int j = 0; j < D; ++j) {
      ComplexMatrix e = ComplexMatrix::Zero(D, D);
      e(i, j) = 1.0;
      ComplexMatrix m = ch.apply_n(e, l);
      // L^l(|j><i|) = L^l(|i><j|)^dagger for a Kraus channel.
      acc += m.cwiseAbs2().sum();
    }
  return acc / (double(D) * double(D));
}

double expander_purity_dense(const QuantumChannel& ch, int l) {
  const int D = ch.dim();
  const int d = static_cast<int>(ch.kraus.size());
  double count = std::pow(double(d), double(l));
  if (count > 4096.5)
    throw std::invalid_argument("expander_purity_dense: block too large");
  int nt = static_cast<int>(count);
  std::vector<ComplexMatrix> prods(static_cast<std::size_t>(nt));
  for (int t = 0; t < nt; ++t) {
    ComplexMatrix p = ComplexMatrix::Identity(D, D);
    int rem = t;
    std::vector<int> digits(static_cast<std::size_t>(l));
    for (int k = l - 1; k >= 0; --k) {
      digits[static_cast<std::size_t>(k)] = rem % d;
      rem /= d;
    }
    for (int k = 0; k < l; ++k)
      p = p * ch.kraus[static_cast<std::size_t>(
              digits[static_cast<std::size_t>(k)])];
    prods[static_cast<std::size_t>(t)] = p;
  }
  // rho(i, j) = tr(P_i P_j^dagger) / D  (maximally mixed closure).
  double purity = 0.0;
  for (int i = 0; i < nt; ++i)
    for (int j = 0; j < nt; ++j) {
      Complex rij = (prods[static_cast<std::size_t>(i)] *
                     prods[static_cast<std::size_t>(j)].adjoint())
                        .trace() /
                    double(D);
      purity += std::norm(rij);
    }
  return purity;
}

namespace {

void tfim_matvec(int n, double h, const ComplexVector& x, ComplexVector& y) {
  const int dim = 1 << n;
  y.setZero();
  for (int b = 0; b < dim; ++b) {
    double diag = 0.0;
    for (int i = 0; i < n; ++i) {
      int j = (i + 1) % n;
      int si = (b >> i) & 1;
      int sj = (b >> j) & 1;
      diag -= (si == sj) ? 1.0 : -1.0;
    }
    y(b) += diag * x(b);
  }
  for (int b = 0; b < dim; ++b) {
    Complex amp = -h * x(b);
    for (int i = 0; i < n; ++i) y(b ^ (1 << i)) += amp;
  }
}

void fix_global_phase(ComplexVector& v) {
  Eigen::Index imax = 0;
  v.cwiseAbs().maxCoeff(&imax);
  Complex a = v(imax);
  double m = std::abs(a);
  if (m > 0) v *= std::conj(a) / m;
}

std::pair<ComplexVector, double> tfim_lanczos(int n, double h) {
  const int dim = 1 << n;
  RngStream rng(0x7f1a, static_cast<std::uint64_t>(n));
  ComplexVector x(dim);
  for (int i = 0; i < dim; ++i) x(i) = Complex(rng.gaussian(), rng.gaussian());
  x /= x.norm();

  double energy = 0.0;
  for (int restart = 0; restart < 6; ++restart) {
    const int m = std::min(dim, 250);
    std::vector<ComplexVector> basis;
    Eigen::MatrixXd tri = Eigen::MatrixXd::Zero(m, m);
    ComplexVector v = x, w(dim);
    basis.push_back(v);
    int built = 0;
    for (int k = 0; k < m; ++k) {
      tfim_matvec(n, h, basis[static_cast<std::size_t>(k)], w);
      double alpha =
          (basis[static_cast<std::size_t>(k)].adjoint() * w)(0).real();
      tri(k, k) = alpha;
      // Full reorthogonalization, twice.
      for (int pass = 0; pass < 2; ++pass)
        for (const auto& u : basis) w -= (u.adjoint() * w)(0) * u;
      double beta = w.norm();
      built = k + 1;
      if (beta < 1e-12 || k + 1 == m) break;
      tri(k, k + 1) = tri(k + 1, k) = beta;
      basis.push_back(w / beta);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(
        tri.topLeftCorner(built, built));
    energy = es.eigenvalues()(0);
    ComplexVector ground = ComplexVector::Zero(dim);
    for (int k = 0; k < built; ++k)
      ground += es.eigenvectors()(k, 0) * basis[static_cast<std::size_t>(k)];
    ground /= ground.norm();
    tfim_matvec(n, h, ground, w);
    double resid = (w - energy * ground).norm();
    x = ground;
    if (resid <= 1e-9) break;
  }
  return {x, energy};
}

}  // namespace

std::pair<ChainState, double> tfim_groundstate_energy(int n, double h) {
  if (n < 2 || n > 14)
    throw std::invalid_argument("tfim_groundstate: n out of range");
  if (h <= 0.0) throw std::invalid_argument("tfim_groundstate: h > 0 required");
  const int dim = 1 << n;
  ComplexVector ground;
  double energy = 0.0;
  if (n <= 10) {
    ComplexMatrix ham = ComplexMatrix::Zero(dim, dim);
    ComplexVector e(dim), col(dim);
    for (int b = 0; b < dim; ++b) {
      e.setZero();
      e(b) = 1.0;
      tfim_matvec(n, h, e, col);
      ham.col(b) = col;
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(ham);
    energy = es.eigenvalues()(0);
    ground = es.eigenvectors().col(0);
  } else {
    auto res = tfim_lanczos(n, h);
    ground = res.first;
    energy = res.second;
  }
  fix_global_phase(ground);
  ComplexVector check(dim);
  tfim_matvec(n, h, ground, check);
  if ((check - energy * ground).norm() > 1e-8 * std::max(1.0, std::abs(energy)))
    throw std::runtime_error("tfim_groundstate: residual too large");
  return {ChainState(ground, n, 2, Topology::ring), energy};
}

ChainState tfim_groundstate(int n, double h) {
  return tfim_groundstate_energy(n, h).first;
}

MatrixProductState aklt_mps() {
  const double s23 = std::sqrt(2.0 / 3.0);
  const double s13 = std::sqrt(1.0 / 3.0);
  ComplexMatrix ap = ComplexMatrix::Zero(2, 2);
  ap(0, 1) = s23;
  ComplexMatrix a0 = ComplexMatrix::Zero(2, 2);
  a0(0, 0) = -s13;
  a0(1, 1) = s13;
  ComplexMatrix am = ComplexMatrix::Zero(2, 2);
  am(1, 0) = -s23;
  MatrixProductState mps;
  mps.translation_invariant = true;
  mps.boundary = MatrixProductState::Boundary::trace_closure;
  mps.site_tensors.push_back({ap, a0, am});
  return mps;
}

ChainState ghz_state(int n) {
  const int dim = 1 << n;
  ComplexVector v = ComplexVector::Zero(dim);
  v(0) = v(dim - 1) = 1.0 / std::sqrt(2.0);
  return ChainState(v, n, 2, Topology::ring);
}

ChainState product_state(int n, int d) {
  auto dim = static_cast<Eigen::Index>(std::pow(double(d), double(n)));
  ComplexVector v = ComplexVector::Zero(dim);
  v(0) = 1.0;
  return ChainState(v, n, d, Topology::ring);
}

TruncationResult mps_truncate(const ChainState& state, double target_fidelity) {
  const int n = state.sites();
  const int d = state.site_dim();
  if (n * std::log2(double(d)) > 20.5)
    throw std::invalid_argument("mps_truncate: dense budget exceeded");
  double delta = 1.0 - target_fidelity;

  double budget = delta / std::max(1, n - 1);
  for (int attempt = 0; attempt < 12; ++attempt) {
    MatrixProductState mps;
    mps.boundary = MatrixProductState::Boundary::open;
    int max_bond = 1;

    int right_dim = static_cast<int>(state.amplitudes().size()) / d;
    Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic,
                                   Eigen::RowMajor>>
        first(state.amplitudes().data(), d, right_dim);
    ComplexMatrix c = first;
    int left = 1;
    for (int s = 0; s < n - 1; ++s) {
      Eigen::JacobiSVD<ComplexMatrix> svd(
          c, Eigen::ComputeThinU | Eigen::ComputeThinV);
      const auto& sv = svd.singularValues();
      double total = sv.squaredNorm();
      int keep = static_cast<int>(sv.size());
      double discarded = 0.0;
      while (keep > 1) {
        double next = discarded + sv(keep - 1) * sv(keep - 1);
        bool negligible = sv(keep - 1) <= kEigRelFloor * sv(0);
        if (next <= budget * std::max(total, 1e-300) || negligible) {
          discarded = next;
          --keep;
        } else {
          break;
        }
      }
      max_bond = std::max(max_bond, keep);
      std::vector<ComplexMatrix> tensors(static_cast<std::size_t>(d));
      for (int i = 0; i < d; ++i) {
        ComplexMatrix a(left, keep);
        for (int a_idx = 0; a_idx < left; ++a_idx)
          a.row(a_idx) = svd.matrixU().row(a_idx * d + i).leftCols(keep);
        tensors[static_cast<std::size_t>(i)] = a;
      }
      mps.site_tensors.push_back(std::move(tensors));
      ComplexMatrix rest =
          sv.head(keep).asDiagonal() *
          svd.matrixV().leftCols(keep).adjoint();  // keep x right_dim
      left = keep;
      if (s < n - 2) {
        right_dim /= d;
        ComplexMatrix next_c(left * d, right_dim);
        for (int a_idx = 0; a_idx < left; ++a_idx)
          for (int i = 0; i < d; ++i)
            for (int r = 0; r < right_dim; ++r)
              next_c(a_idx * d + i, r) = rest(a_idx, i * right_dim + r);
        c = std::move(next_c);
      } else {
        std::vector<ComplexMatrix> last(static_cast<std::size_t>(d));
        for (int i = 0; i < d; ++i) {
          ComplexMatrix a(left, 1);
          for (int a_idx = 0; a_idx < left; ++a_idx) a(a_idx, 0) = rest(a_idx, i);
          last[static_cast<std::size_t>(i)] = a;
        }
        mps.site_tensors.push_back(std::move(last));
      }
    }

    ComplexVector dense = mps.dense_coefficients();
    double norm = dense.norm();
    double overlap =
        std::abs((state.amplitudes().adjoint() * dense)(0)) / norm;
    if (overlap + 1e-12 >= target_fidelity) {
      TruncationResult out;
      out.mps = std::move(mps);
      out.achieved_bond_dim = max_bond;
      out.overlap = overlap;
      return out;
    }
    budget /= 4.0;
  }
  throw std::runtime_error("mps_truncate: target fidelity not reached");
}

void write_chainstate(std::ostream& os, const ChainState& state) {
  std::ostringstream buf;
  buf.imbue(std::locale::classic());
  buf.precision(17);
  buf << "chainstate n=" << state.sites() << " d=" << state.site_dim()
      << " topology="
      << (state.topology() == Topology::ring ? "ring" : "line") << "\n";
  const ComplexVector& v = state.amplitudes();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (v(i) == Complex(0.0, 0.0)) continue;
    buf << i << " " << v(i).real() << " " << v(i).imag() << "\n";
  }
  os << buf.str();
}

ChainState read_chainstate(std::istream& is) {
  std::string line;
  if (!std::getline(is, line))
    throw std::runtime_error("read_chainstate: empty input");
  std::istringstream hdr(line);
  hdr.imbue(std::locale::classic());
  std::string tag, nfield, dfield, tfield;
  hdr >> tag >> nfield >> dfield >> tfield;
  auto field_value = [](const std::string& f, const std::string& key) {
    if (f.rfind(key, 0) != 0)
      throw std::runtime_error("read_chainstate: bad header field " + f);
    return f.substr(key.size());
  };
  if (tag != "chainstate")
    throw std::runtime_error("read_chainstate: bad header");
  int n = std::stoi(field_value(nfield, "n="));
  int d = std::stoi(field_value(dfield, "d="));
  std::string topo_s = field_value(tfield, "topology=");
  Topology topo;
  if (topo_s == "ring") topo = Topology::ring;
  else if (topo_s == "line") topo = Topology::line;
  else throw std::runtime_error("read_chainstate: bad topology");

  auto dim = static_cast<Eigen::Index>(std::pow(double(d), double(n)));
  ComplexVector v = ComplexVector::Zero(dim);
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    row.imbue(std::locale::classic());
    long idx;
    double re, im;
    if (!(row >> idx >> re >> im))
      throw std::runtime_error("read_chainstate: bad amplitude row");
    if (idx < 0 || idx >= dim)
      throw std::runtime_error("read_chainstate: index out of range");
    v(idx) = Complex(re, im);
  }
  return ChainState(v, n, d, topo);
}

}  // namespace corrlab
