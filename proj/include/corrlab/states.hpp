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

#ifndef CORRLAB_STATES_HPP
#define CORRLAB_STATES_HPP

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "corrlab/core.hpp"
#include "corrlab/random.hpp"

namespace corrlab {

enum class Topology { line, ring };

/// Pure state on n sites of a line or ring.
class ChainState {
 public:
  ChainState(ComplexVector amplitudes, int sites, int site_dim,
             Topology topology);

  int sites() const { return n_; }
  int site_dim() const { return d_; }
  Topology topology() const { return topology_; }
  const ComplexVector& amplitudes() const { return amps_; }
  TensorSpace space() const { return TensorSpace::uniform(n_, d_); }

 private:
  ComplexVector amps_;
  int n_;
  int d_;
  Topology topology_;
};

/// Contiguous block of sites; wraps around on rings.
struct Region {
  int start = 0;
  int length = 1;

  /// Site indices covered, in chain order starting at `start`.
  std::vector<int> sites(int n, Topology topo) const;
};

/// Minimal site gap between two disjoint contiguous regions.
int separation(const Region& x, const Region& y, int n, Topology topo);

bool regions_disjoint(const Region& x, const Region& y, int n, Topology topo);

/// Reduced density matrix of a contiguous (possibly wrapping) region,
/// computed by site rotation followed by a contiguous trace-out.
DensityOperator reduced_density(const ChainState& state, const Region& x);

/// Joint reduced density matrix of two disjoint regions, ordered X then Y.
DensityOperator reduced_density_pair(const ChainState& state, const Region& x,
                                     const Region& y);

/// Kraus-decomposed channel on C^D. Flags are verified, never assumed.
struct QuantumChannel {
  std::vector<ComplexMatrix> kraus;

  int dim() const;
  bool trace_preserving(double tol = 1e-10) const;
  bool unital(double tol = 1e-10) const;
  ComplexMatrix apply(const ComplexMatrix& rho) const;
  ComplexMatrix apply_n(const ComplexMatrix& rho, int times) const;
};

/// Matrix product state. Ring states use trace closure with square site
/// matrices; open-boundary states carry 1 x D and D x 1 edge tensors.
struct MatrixProductState {
  // site_tensors[site][phys] is a (left bond) x (right bond) matrix.
  std::vector<std::vector<ComplexMatrix>> site_tensors;
  bool translation_invariant = false;
  enum class Boundary { trace_closure, open };
  Boundary boundary = Boundary::trace_closure;

  int sites() const { return static_cast<int>(site_tensors.size()); }
  int phys_dim() const;
  int bond_dim() const;  // maximum over cuts

  /// Raw coefficient vector tr(A_{i_1}...A_{i_n}) (or the scalar chain
  /// product for open boundaries). Not normalized.
  ComplexVector dense_coefficients() const;

  /// Normalized chain state; throws if the dense expansion has zero
  /// norm. Records the norm that was divided out.
  ChainState to_chain_state(Topology topo, double* norm_out = nullptr) const;
};

/// Translation-invariant quantum expander state with Kraus matrices
/// A_i = U_i / sqrt(d), U_i independent Haar on C^D. The returned
/// channel is verified unital and trace-preserving.
std::pair<MatrixProductState, QuantumChannel> expander_state(int d, int D,
                                                             int n,
                                                             RngStream& rng);

/// Block purity via the transfer-channel formula
///   (1/D^2) sum_{ij} tr(L^l(|i><j|) L^l(|j><i|)).
double expander_purity(const QuantumChannel& ch, int l);

/// Companion mode: builds the d^l-dimensional block density matrix with
/// maximally mixed closure and squares it directly.
double expander_purity_dense(const QuantumChannel& ch, int l);

/// Groundstate of -sum Z_i Z_{i+1} - h sum X_i on a ring. Dense
/// eigensolve for n <= 10, Lanczos above; residual <= 1e-8.
ChainState tfim_groundstate(int n, double h);

/// Groundstate energy alongside the state (for oracles and reports).
std::pair<ChainState, double> tfim_groundstate_energy(int n, double h);

/// Spin-1 AKLT tensors, D = 2, d = 3, translation invariant.
MatrixProductState aklt_mps();

/// GHZ state (|0...0> + |1...1>)/sqrt(2) on a ring of n qubits.
ChainState ghz_state(int n);

/// Product state |0>^n fixture.
ChainState product_state(int n, int d = 2);

struct TruncationResult {
  MatrixProductState mps;
  int achieved_bond_dim = 0;
  double overlap = 0.0;  // |<psi|phi>| after renormalization
};

/// Sequential singular-value sweep with per-cut truncation; guarantees
/// |<psi|phi>| >= target_fidelity.
TruncationResult mps_truncate(const ChainState& state, double target_fidelity);

/// Text format: header `chainstate n=<n> d=<d> topology=<line|ring>`,
/// then one `index real imag` triple per nonzero amplitude.
void write_chainstate(std::ostream& os, const ChainState& state);
ChainState read_chainstate(std::istream& is);

}  // namespace corrlab

#endif  // CORRLAB_STATES_HPP
