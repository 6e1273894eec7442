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

#ifndef CORRLAB_CORRELATIONS_HPP
#define CORRLAB_CORRELATIONS_HPP

#include <string>
#include <vector>

#include "corrlab/core.hpp"
#include "corrlab/random.hpp"
#include "corrlab/states.hpp"

namespace corrlab {

/// Cor(X:Y) = max_{||M||,||N|| <= 1} |tr((M (x) N)(rho_XY - rho_X (x) rho_Y))|
/// reported as a certified sandwich. `lower` always comes from explicit
/// product witnesses (re-evaluatable); `upper` is the trace norm of the
/// difference operator.
struct CorrelationEstimate {
  double lower = 0.0;
  double upper = 0.0;
  ComplexMatrix witness_m;  // operator norm <= 1
  ComplexMatrix witness_n;  // operator norm <= 1
  int restarts = 0;
  bool converged = false;

  /// |tr((M (x) N) delta)| for the stored witnesses; source of truth
  /// for `lower`.
  double evaluate(const ComplexMatrix& delta) const;
};

/// Norm-bounded product observable with its recorded value on delta.
struct ProductWitness {
  ComplexMatrix x;
  ComplexMatrix y;
  double value = 0.0;
};

/// Difference operator rho_XY - rho_X (x) rho_Y of a bipartite state.
ComplexMatrix pair_difference(const ComplexMatrix& rho_xy, int dx, int dy);

/// Alternating polar-factor maximization with random restarts; the
/// lower bound additionally includes the constructive product
/// decomposition of the trace-norm observable, which guarantees
/// lower >= upper / min(dx, dy)^2.
CorrelationEstimate correlation_estimate(const ComplexMatrix& rho_xy, int dx,
                                         int dy, int restarts = 16,
                                         double tol = 1e-10,
                                         std::uint64_t seed = 0x11c5);

/// Block decomposition of the optimal trace-norm observable sign(delta)
/// over the smaller side: at most d_min^2 product pairs of operator
/// norm <= 1 with max_k value >= ||delta||_1 / d_min^2.
std::vector<ProductWitness> datahiding_witness(const ComplexMatrix& delta,
                                               int dx, int dy);

/// Spectrum of pi = sum_k A_k (x) conj(A_k).
struct TransferSpectrum {
  std::vector<double> eigenvalue_moduli;  // descending
  double eta = 0.0;                       // second largest modulus
  bool gap_ok = false;                    // largest modulus = 1 +- 1e-9
};

TransferSpectrum transfer_operator(const QuantumChannel& ch);

/// D * eta^l for a unital transfer channel with bond dimension D.
double mps_correlation_bound(const QuantumChannel& ch, int separation);

struct DecaySample {
  int separation = 0;
  double cor_upper = 0.0;
  double cor_lower = 0.0;  // best witness value computed, 0 if skipped
  double bound = 0.0;      // 2^{-l/xi}
};

struct DecayCertificate {
  enum class Verdict { certified, violated, indeterminate };
  double xi = 0.0;
  int l0 = 0;
  Verdict verdict = Verdict::certified;
  std::vector<DecaySample> samples;  // one per sampled separation
  // Populated on violation / indeterminate outcomes.
  Region witness_x;
  Region witness_y;
  double witness_value = 0.0;       // certified lower bound at the pair
  ComplexMatrix witness_m;
  ComplexMatrix witness_n;
  std::string detail;
};

/// Checks Cor(X:Y) <= 2^{-l/xi} over all contiguous region pairs with
/// separation l >= l0 and sizes <= region_cap.
DecayCertificate edc_certify(const ChainState& state, double xi, int l0,
                             int region_cap = 2);

/// Per-separation correlation profile: for every separation l >= 1
/// reachable with regions of size <= region_cap, the worst (largest
/// upper bound) contiguous pair, with a witnessed lower bound for it.
std::vector<DecaySample> correlation_scan(const ChainState& state,
                                          int region_cap = 2,
                                          int restarts = 8);

struct CorrelationFit {
  bool ok = false;
  double xi = 0.0;
  int l0 = 0;
  double slope = 0.0;     // bits per site, negative when decaying
  double residual = 0.0;  // max |log2 cor - fit| over the tail, bits
};

/// Least-squares fit of log2 Cor versus separation over the longest
/// tail whose residual stays below half a bit.
CorrelationFit correlation_length_fit(const std::vector<DecaySample>& samples);
CorrelationFit correlation_length_fit(
    const std::vector<std::pair<int, double>>& samples);

}  // namespace corrlab

#endif  // CORRLAB_CORRELATIONS_HPP
