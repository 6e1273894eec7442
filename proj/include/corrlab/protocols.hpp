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

#ifndef CORRLAB_PROTOCOLS_HPP
#define CORRLAB_PROTOCOLS_HPP

#include <string>
#include <vector>

#include "corrlab/correlations.hpp"
#include "corrlab/entropy.hpp"
#include "corrlab/random.hpp"
#include "corrlab/states.hpp"

namespace corrlab {

/// Complete family of pairwise-orthogonal projectors on A: N of rank L
/// and one remainder of rank |A| - N L.
struct PovmFamily {
  std::vector<ComplexMatrix> elements;
  std::vector<int> ranks;
  double completeness_residual = 0.0;
};

PovmFamily random_rank_povm(int dim_a, int rank_l, RngStream& rng);

struct DecouplingReport {
  std::vector<double> distances;  // one per sample
  double mean_distance = 0.0;
  double bound = 0.0;  // (2 |B| / |A|)^{1/4}
  bool within_bound = false;
};

/// Haar psi_AB, distance of rho_B from maximally mixed versus the
/// one-shot decoupling bound.
DecouplingReport haar_decoupling_experiment(int dim_a, int dim_b, int samples,
                                            RngStream& rng);

struct PovmDecouplingReport {
  std::vector<double> errors;  // average decoupling error per POVM sample
  double best_error = 0.0;     // min over samples
  double bound = 0.0;          // 2 sqrt(L |B| tr rho_AB^2) + 2 L / |A|
  bool within_bound = false;
};

/// Rank-L random-measurement decoupling on psi_ABC: average over
/// outcomes of || rho^k_{A'B} - tau_{A'} (x) rho_B ||_1, minimized over
/// sampled projector families.
PovmDecouplingReport decoupling_merging_experiment(const ComplexVector& psi_abc,
                                                   int dim_a, int dim_b,
                                                   int dim_c, int rank_l,
                                                   int povm_samples,
                                                   RngStream& rng);

struct MergingReport {
  double epsilon = 0.0;
  double error_bound = 0.0;   // 13 sqrt(eps)
  double log_n_bound = 0.0;   // classical communication, bits
  // The distillation bound in both sign conventions of the conditional
  // max-entropy ingredient (the source text is ambiguous; see README).
  double log_l_bound_plus = 0.0;   // +H_max(A|C) convention
  double log_l_bound_minus = 0.0;  // -H_max(A|C) convention
  EntropyReport hmax_a;
  double hmin_ab_bits = 0.0;
  EntropyReport hmax_ac;
};

MergingReport merging_rate_report(const ComplexVector& psi_abc, int dim_a,
                                  int dim_b, int dim_c, double eps);

/// Post-selection correlation witness: (p/2) D(rho~_C, rho_C)^2 with
/// p = tr(M rho_A) and D the purified distance. Always a valid Cor
/// lower bound.
double cor_lower_from_measurement(const ComplexMatrix& rho_ac, int dim_a,
                                  int dim_c, const ComplexMatrix& m);

struct EntropyBoostCheck {
  bool applicable = false;  // gamma in (0, 1/2) so both sides are defined
  bool pass = false;
  double cor_lower = 0.0;
  double gamma = 0.0;
  double lhs = 0.0;  // lower end of H_max^{2 gamma}(A)
  double rhs = 0.0;  // upper end of H_max^{delta}(A) + 2 log|B| + log(2/g^2)
  std::string detail;
};

/// Direction-safe check of the correlation-boosted max-entropy bound
/// H_max^{2g}(A) <= H_max^{delta}(A) + 2 log2|B| + log2(2/g^2) with
/// g = sqrt(Cor(A:C)) / sqrt(1/2 - delta).
EntropyBoostCheck lemma1_part3_check(const ComplexVector& psi_abc, int dim_a,
                                     int dim_b, int dim_c, double delta);

struct RandomMeasurementDemo {
  std::vector<double> cor_lower_values;  // per sample
  double fraction_within_alpha = 0.0;
  double alpha = 0.0;  // may be +inf when the formula degenerates
  int p_rank = 0;      // support rank of rho_A
  int q_rank = 0;      // sampled projector rank
  double delta = 0.0;
  double nu = 0.0;
};

/// Descriptive demonstration that random rank-|Q| projective
/// post-selection on A creates A:C correlations, with the predicted
/// closeness probability parameter alpha reported alongside.
RandomMeasurementDemo lemma1_random_measurement_demo(
    const ComplexVector& psi_abc, int dim_a, int dim_b, int dim_c,
    int projector_rank, int samples, RngStream& rng, double delta = 0.01,
    double nu = 0.01);

enum class SaturationGeometry { appendix_b, lemma2 };

struct SaturationResult {
  Region x_left, x_center, x_right;
  int l = 0;  // block scale
  double mutual_info = 0.0;
  double threshold = 0.0;  // eps * l
  bool met = false;
};

/// Scans block scales l >= l0 (ascending) and center positions
/// (closest to s first) for a region with I(X_C : X_L X_R) <= eps * l.
/// Geometry appendix_b: borders l/2 around a center of l sites (even l);
/// lemma2: borders l around a doubled center of 2l sites.
SaturationResult saturation_scan(const ChainState& state, int s, double eps,
                                 int l0,
                                 SaturationGeometry geometry =
                                     SaturationGeometry::appendix_b);

struct TheoremRow {
  int block_start = 0;
  int block_len = 0;
  int l = 0;
  double eps = 0.0;
  double hmax_lower = 0.0;
  double hmax_upper = 0.0;
};

struct TheoremTable {
  std::vector<TheoremRow> rows;
  double xi = 0.0;
  bool saturated = false;
  double saturation_gap = 0.0;  // bits between maximal and half-maximal blocks
  double normalization = 1.0;   // H_max of the global state for mixed input
  // Worst-case upper end per block length at the smallest scanned l;
  // index = block length (entry 0 unused).
  std::vector<double> upper_by_len;
};

/// Area-law table: for every contiguous block X and scanned l >= 8 xi,
/// the certified interval of H_max^{2^{-l/(8 xi)}}(X). Requires a
/// certified decay certificate.
TheoremTable theorem_harness(const ChainState& state,
                             const DecayCertificate& certificate,
                             int l_count = 4, double saturation_tol = 0.1);

/// Mixed-state variant: the purifying system is appended to the
/// environment and entries can be compared against H_max(rho).
TheoremTable theorem_harness(const DensityOperator& rho,
                             const DecayCertificate& certificate,
                             int l_count = 4, double saturation_tol = 0.1);

}  // namespace corrlab

#endif  // CORRLAB_PROTOCOLS_HPP
