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

// corrlab: reproducible experiments on correlation decay, smooth
// entropies and area-law saturation for small chain states.
//
// Exit codes: 0 success/pass, 1 assertion/certification failure,
// 2 usage error. Identical invocations produce byte-identical output.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "corrlab/correlations.hpp"
#include "corrlab/entropy.hpp"
#include "corrlab/fixtures.hpp"
#include "corrlab/metrics.hpp"
#include "corrlab/protocols.hpp"

namespace {

using namespace corrlab;

struct Output {
  std::unique_ptr<std::ofstream> file;
  std::ostream& stream() { return file ? *file : std::cout; }
  void open(const std::string& path) {
    if (path.empty()) return;
    file = std::make_unique<std::ofstream>(path, std::ios::binary);
    if (!*file) throw CLI::ValidationError("--out", "cannot open " + path);
  }
};

std::string sci(double v) { return format_sci(v); }

ComplexMatrix random_density(int dim, RngStream& rng) {
  ComplexMatrix g = ginibre(dim, dim, rng);
  ComplexMatrix rho = g * g.adjoint();
  return rho / rho.trace().real();
}

ComplexVector random_pure(int dim, RngStream& rng) {
  return haar_state(dim, rng);
}

// ---------------------------------------------------------------- verify

struct SuiteResult {
  int checked = 0;
  int failed = 0;
  std::vector<std::string> failures;

  void expect(bool ok, const std::string& what) {
    ++checked;
    if (!ok) {
      ++failed;
      failures.push_back(what);
    }
  }
};

void suite_metrics(std::uint64_t seed, SuiteResult& res) {
  RngStream base(seed, 0x31);
  for (int k = 0; k < 200; ++k) {
    RngStream rng = base.substream(static_cast<std::uint64_t>(k));
    int dim = 2 + static_cast<int>(rng.uniform() * 7);
    ComplexMatrix rho = random_density(dim, rng);
    ComplexMatrix sig = random_density(dim, rng);
    double d1 = d1_distance(rho, sig);
    double dp = purified_distance(rho, sig);
    std::ostringstream os;
    os << "metric order D1 <= D <= sqrt(2 D1), pair " << k << ": D1=" << d1
       << " D=" << dp;
    res.expect(d1 <= dp + 1e-9 && dp <= std::sqrt(2.0 * d1) + 1e-9, os.str());
    res.expect(std::abs(d1 - d1_variational(rho, sig)) <= 1e-9,
               "D1 formula vs variational route, pair " + std::to_string(k));
  }
}

void suite_entropy(std::uint64_t seed, SuiteResult& res) {
  RngStream base(seed, 0x32);
  // Fannes continuity in the D <= 1/2 region.
  for (int k = 0; k < 150; ++k) {
    RngStream rng = base.substream(static_cast<std::uint64_t>(k));
    int dim = 2 + static_cast<int>(rng.uniform() * 7);
    ComplexMatrix rho = random_density(dim, rng);
    ComplexMatrix mix = random_density(dim, rng);
    double t = 0.3 * rng.uniform();
    ComplexMatrix sig = (1.0 - t) * rho + t * mix;
    double dist = d1_distance(rho, sig);
    if (dist > 0.5) continue;
    double lhs = std::abs(von_neumann(rho) - von_neumann(sig));
    double rhs = (dim > 2 ? std::log2(double(dim - 1)) * dist : 0.0) +
                 binary_entropy(dist);
    res.expect(lhs <= rhs + 1e-9,
               "Fannes continuity, pair " + std::to_string(k));
  }
  // Subadditivity of the smooth max-entropy, direction-safe form.
  for (int k = 0; k < 150; ++k) {
    RngStream rng = base.substream(1000 + static_cast<std::uint64_t>(k));
    int da = 2 + static_cast<int>(rng.uniform() * 3);
    int db = 2 + static_cast<int>(rng.uniform() * 3);
    ComplexMatrix rho = random_density(da * db, rng);
    TensorSpace sp({da, db});
    double e = 0.05 + 0.2 * rng.uniform();
    double e1 = 0.05 + 0.2 * rng.uniform();
    double e2 = 0.05 + 0.1 * rng.uniform();
    double lhs = hmax_smooth(rho, e + e1 + 2 * e2).value_lower;
    double rhs = hmax_smooth(partial_trace(rho, sp, {0}), e1).value_upper +
                 hmax_smooth(partial_trace(rho, sp, {1}), e2).value_upper +
                 std::log2(2.0 / (e * e));
    res.expect(lhs <= rhs + 1e-9,
               "smooth max-entropy subadditivity, instance " +
                   std::to_string(k));
  }
  // Equipartition for qubit product states.
  for (int k = 0; k < 100; ++k) {
    RngStream rng = base.substream(2000 + static_cast<std::uint64_t>(k));
    ComplexMatrix pi = random_density(2, rng);
    RealVector s1 = psd_spectrum(pi);
    int n = 2 + static_cast<int>(rng.uniform() * 10);
    double e = 0.05 + 0.4 * rng.uniform();
    RealVector spec(1 << n);
    for (int idx = 0; idx < (1 << n); ++idx) {
      double p = 1.0;
      for (int b = 0; b < n; ++b) p *= s1((idx >> b) & 1);
      spec(idx) = p;
    }
    std::sort(spec.data(), spec.data() + spec.size(), std::greater<double>());
    double lhs = hmax_smooth(spec, e).value_upper / n;
    double rhs = von_neumann(pi) +
                 8.0 * std::sqrt(std::log2(2.0 / (e * e)) / n);
    res.expect(lhs <= rhs + 1e-9,
               "equipartition bound, instance " + std::to_string(k));
  }
}

void suite_sdp(std::uint64_t seed, SuiteResult& res) {
  RngStream base(seed, 0x33);
  for (int k = 0; k < 40; ++k) {
    RngStream rng = base.substream(static_cast<std::uint64_t>(k));
    int da = 2 + static_cast<int>(rng.uniform() * 3);
    int db = 2 + static_cast<int>(rng.uniform() * 3);
    ComplexMatrix rho = random_density(da * db, rng);
    SdpSolution sol = hmin_conditional(rho, da, db);
    res.expect(sol.converged && sol.gap <= 1e-8,
               "min-entropy SDP duality gap, instance " + std::to_string(k));
  }
  // Closed form: maximally entangled on d x d gives -log2 d.
  for (int d : {2, 3, 4}) {
    ComplexVector phi = ComplexVector::Zero(d * d);
    for (int i = 0; i < d; ++i) phi(i * d + i) = 1.0 / std::sqrt(double(d));
    ComplexMatrix rho = phi * phi.adjoint();
    SdpSolution sol = hmin_conditional(rho, d, d);
    res.expect(std::abs(sol.hmin_bits() + std::log2(double(d))) <= 1e-6,
               "maximally entangled H_min(A|B) = -log2 d, d=" +
                   std::to_string(d));
  }
}

void suite_correlations(std::uint64_t seed, SuiteResult& res) {
  RngStream base(seed, 0x34);
  for (int k = 0; k < 100; ++k) {
    RngStream rng = base.substream(static_cast<std::uint64_t>(k));
    ComplexMatrix rho = random_density(16, rng);
    CorrelationEstimate est = correlation_estimate(rho, 4, 4, 8, 1e-10, seed);
    res.expect(est.lower <= est.upper + 1e-9 &&
                   est.lower >= est.upper / 16.0 - 1e-9,
               "correlation sandwich, instance " + std::to_string(k));
  }
}

void suite_decoupling(std::uint64_t seed, SuiteResult& res) {
  RngStream rng(seed, 0x35);
  DecouplingReport rep = haar_decoupling_experiment(64, 4, 50, rng);
  res.expect(rep.within_bound, "Haar decoupling mean within bound at (64,4)");
  RngStream rng2(seed, 0x36);
  for (int k = 0; k < 20; ++k) {
    RngStream sub = rng2.substream(static_cast<std::uint64_t>(k));
    ComplexVector psi = random_pure(4 * 2 * 4, sub);
    PovmDecouplingReport pr =
        decoupling_merging_experiment(psi, 4, 2, 4, 2, 5, sub);
    res.expect(pr.within_bound,
               "rank-L measurement decoupling bound, state " +
                   std::to_string(k));
  }
}

void suite_lemma1(std::uint64_t seed, SuiteResult& res) {
  RngStream base(seed, 0x37);
  for (int k = 0; k < 50; ++k) {
    RngStream rng = base.substream(static_cast<std::uint64_t>(k));
    ComplexVector psi = random_pure(4 * 2 * 4, rng);
    EntropyBoostCheck chk = lemma1_part3_check(psi, 4, 2, 4, 0.01);
    res.expect(!chk.applicable || chk.pass,
               "correlation-boosted max-entropy bound, state " +
                   std::to_string(k));
  }
}

int run_verify(const std::string& suite, std::uint64_t seed, Output& out) {
  struct Entry {
    const char* name;
    void (*fn)(std::uint64_t, SuiteResult&);
  };
  const Entry entries[] = {
      {"metrics", suite_metrics},   {"entropy", suite_entropy},
      {"sdp", suite_sdp},           {"correlations", suite_correlations},
      {"decoupling", suite_decoupling}, {"lemma1", suite_lemma1},
  };
  bool any = false;
  int failures = 0;
  std::ostream& os = out.stream();
  for (const auto& e : entries) {
    if (suite != "all" && suite != e.name) continue;
    any = true;
    SuiteResult res;
    e.fn(seed, res);
    os << (res.failed == 0 ? "PASS" : "FAIL") << " " << e.name << ": "
       << (res.checked - res.failed) << "/" << res.checked << " checks\n";
    for (const auto& f : res.failures) os << "  witness: " << f << "\n";
    failures += res.failed;
  }
  if (!any) throw CLI::ValidationError("--suite", "unknown suite " + suite);
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"corrlab: correlation decay and entropy experiments"};
  app.require_subcommand(1);
  app.set_config("--config");

  std::uint64_t seed = 0;
  std::string out_path;
  int threads = 1;
  app.add_option("--seed", seed, "random seed (global)")->capture_default_str();
  app.add_option("--out", out_path, "output path (default stdout)");
  app.add_option("--threads", threads, "worker threads (results identical)");

  // gen
  auto* gen = app.add_subcommand("gen", "emit a fixture state as text");
  std::string gen_state;
  gen->add_option("--state", gen_state, "fixture spec")->required();

  // cor
  auto* cor = app.add_subcommand("cor", "correlation decay scan (CSV)");
  std::string cor_state;
  int cor_cap = 2, cor_restarts = 8;
  double cor_xi = 0.0;
  cor->add_option("--state", cor_state, "fixture spec")->required();
  cor->add_option("--region-cap", cor_cap, "max region size");
  cor->add_option("--restarts", cor_restarts, "maximization restarts");
  cor->add_option("--xi", cor_xi, "reference decay length for bound column");

  // entropy
  auto* ent = app.add_subcommand("entropy", "block entropies of a fixture");
  std::string ent_state;
  int ent_start = 0, ent_len = 1;
  double ent_eps = 0.1;
  ent->add_option("--state", ent_state, "fixture spec")->required();
  ent->add_option("--start", ent_start, "region start site");
  ent->add_option("--len", ent_len, "region length");
  ent->add_option("--eps", ent_eps, "smoothing parameter");

  // edc-certify
  auto* edc = app.add_subcommand("edc-certify",
                                 "certify exponential decay of correlations");
  std::string edc_state;
  double edc_xi = 1.0;
  int edc_l0 = 1, edc_cap = 2;
  edc->add_option("--state", edc_state, "fixture spec")->required();
  edc->add_option("--xi", edc_xi, "decay length")->required();
  edc->add_option("--l0", edc_l0, "onset separation")->required();
  edc->add_option("--region-cap", edc_cap, "max region size");

  // expander
  auto* exp_cmd = app.add_subcommand("expander", "expander block purities");
  int exp_d = 2, exp_bond = 3, exp_n = 10, exp_lmax = 3;
  exp_cmd->add_option("--d", exp_d, "Kraus count (physical dim)");
  exp_cmd->add_option("--D", exp_bond, "bond dimension");
  exp_cmd->add_option("--n", exp_n, "chain length");
  exp_cmd->add_option("--l-max", exp_lmax, "largest block length");

  // decouple
  auto* dec = app.add_subcommand("decouple", "Haar decoupling experiment");
  int dec_a = 64, dec_b = 4, dec_samples = 200;
  dec->add_option("--dimA", dec_a, "dimension of A")->required();
  dec->add_option("--dimB", dec_b, "dimension of B")->required();
  dec->add_option("--samples", dec_samples, "number of Haar samples");

  // merge
  auto* mrg = app.add_subcommand("merge", "random-measurement merging");
  int mrg_a = 4, mrg_b = 2, mrg_c = 4, mrg_l = 2, mrg_povms = 10;
  double mrg_eps = 0.01;
  mrg->add_option("--dimA", mrg_a, "dimension of A");
  mrg->add_option("--dimB", mrg_b, "dimension of B");
  mrg->add_option("--dimC", mrg_c, "dimension of C");
  mrg->add_option("--L", mrg_l, "projector rank");
  mrg->add_option("--povm-samples", mrg_povms, "POVM families sampled");
  mrg->add_option("--eps", mrg_eps, "smoothing for the rate report");

  // saturate
  auto* sat = app.add_subcommand("saturate", "mutual-information saturation");
  std::string sat_state, sat_geom = "appendixB";
  int sat_site = 0, sat_l0 = 2;
  double sat_eps = 0.5;
  sat->add_option("--state", sat_state, "fixture spec")->required();
  sat->add_option("--site", sat_site, "anchor site");
  sat->add_option("--eps", sat_eps, "saturation rate");
  sat->add_option("--l0", sat_l0, "smallest block scale");
  sat->add_option("--geometry", sat_geom, "appendixB | lemma2");

  // theorem
  auto* thm = app.add_subcommand("theorem", "area-law block-entropy table");
  std::string thm_state;
  double thm_xi = 1.0;
  int thm_l0 = 1, thm_cap = 2, thm_lcount = 2;
  thm->add_option("--state", thm_state, "fixture spec")->required();
  thm->add_option("--xi", thm_xi, "certified decay length")->required();
  thm->add_option("--l0", thm_l0, "certified onset separation");
  thm->add_option("--region-cap", thm_cap, "certification region size");
  thm->add_option("--l-count", thm_lcount, "number of scanned l values");

  // verify
  auto* ver = app.add_subcommand("verify", "run lemma suites");
  std::string ver_suite = "all";
  ver->add_option("--suite", ver_suite,
                  "metrics|entropy|sdp|correlations|decoupling|lemma1|all");

  // Global options (--seed, --out, ...) may appear after the subcommand.
  for (CLI::App* sub : app.get_subcommands([](const CLI::App*) { return true; }))
    sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    Output out;
    out.open(out_path);
    std::ostream& os = out.stream();

    if (*gen) {
      write_chainstate(os, make_fixture(gen_state, seed));
      return 0;
    }

    if (*cor) {
      ChainState st = make_fixture(cor_state, seed);
      auto samples = correlation_scan(st, cor_cap, cor_restarts);
      os << "l,cor_lower,cor_upper,bound\n";
      for (const auto& s : samples) {
        double bound = cor_xi > 0.0 ? std::exp2(-double(s.separation) / cor_xi)
                                    : 0.0;
        os << s.separation << "," << sci(s.cor_lower) << ","
           << sci(s.cor_upper) << "," << sci(bound) << "\n";
      }
      return 0;
    }

    if (*ent) {
      ChainState st = make_fixture(ent_state, seed);
      DensityOperator rho = reduced_density(st, Region{ent_start, ent_len});
      EntropyReport rep = hmax_smooth(rho.mat, ent_eps);
      os << "quantity,value_lower,value_upper\n";
      double vn = von_neumann(rho);
      os << "von_neumann," << sci(vn) << "," << sci(vn) << "\n";
      os << "hmax_eps," << sci(rep.value_lower) << "," << sci(rep.value_upper)
         << "\n";
      return 0;
    }

    if (*edc) {
      ChainState st = make_fixture(edc_state, seed);
      DecayCertificate cert = edc_certify(st, edc_xi, edc_l0, edc_cap);
      os << "l,cor_lower,cor_upper,bound\n";
      for (const auto& s : cert.samples)
        os << s.separation << "," << sci(s.cor_lower) << ","
           << sci(s.cor_upper) << "," << sci(s.bound) << "\n";
      if (cert.verdict == DecayCertificate::Verdict::certified) {
        os << "verdict,certified\n";
        return 0;
      }
      os << "verdict,"
         << (cert.verdict == DecayCertificate::Verdict::violated
                 ? "violated"
                 : "indeterminate")
         << "\n";
      os << "witness," << cert.detail << "\n";
      return 1;
    }

    if (*exp_cmd) {
      RngStream rng(seed, 0xE1);
      auto [mps, ch] = expander_state(exp_d, exp_bond, exp_n, rng);
      (void)mps;
      os << "l,purity,purity_dense,mean_bound\n";
      for (int l = 1; l <= exp_lmax; ++l) {
        double formula = expander_purity(ch, l);
        double dense = std::pow(double(exp_d), double(l)) <= 4096.5
                           ? expander_purity_dense(ch, l)
                           : formula;
        double bound = 1.0 / (double(exp_bond) * exp_bond) +
                       double(l) / std::pow(double(exp_d), double(l));
        os << l << "," << sci(formula) << "," << sci(dense) << ","
           << sci(bound) << "\n";
      }
      return 0;
    }

    if (*dec) {
      RngStream rng(seed, 0xD1);
      DecouplingReport rep =
          haar_decoupling_experiment(dec_a, dec_b, dec_samples, rng);
      os << "sample,distance,bound\n";
      for (std::size_t k = 0; k < rep.distances.size(); ++k)
        os << k << "," << sci(rep.distances[k]) << "," << sci(rep.bound)
           << "\n";
      os << "mean," << sci(rep.mean_distance) << "," << sci(rep.bound) << "\n";
      return rep.within_bound ? 0 : 1;
    }

    if (*mrg) {
      RngStream rng(seed, 0xF1);
      ComplexVector psi = haar_state(mrg_a * mrg_b * mrg_c, rng);
      PovmDecouplingReport rep = decoupling_merging_experiment(
          psi, mrg_a, mrg_b, mrg_c, mrg_l, mrg_povms, rng);
      os << "sample,error,bound\n";
      for (std::size_t k = 0; k < rep.errors.size(); ++k)
        os << k << "," << sci(rep.errors[k]) << "," << sci(rep.bound) << "\n";
      MergingReport rates =
          merging_rate_report(psi, mrg_a, mrg_b, mrg_c, mrg_eps);
      os << "log_n_bound," << sci(rates.log_n_bound) << ","
         << sci(rates.error_bound) << "\n";
      os << "log_l_bound_plus," << sci(rates.log_l_bound_plus) << ","
         << sci(rates.error_bound) << "\n";
      os << "log_l_bound_minus," << sci(rates.log_l_bound_minus) << ","
         << sci(rates.error_bound) << "\n";
      return rep.within_bound ? 0 : 1;
    }

    if (*sat) {
      ChainState st = make_fixture(sat_state, seed);
      SaturationGeometry geom;
      if (sat_geom == "appendixB") geom = SaturationGeometry::appendix_b;
      else if (sat_geom == "lemma2") geom = SaturationGeometry::lemma2;
      else throw CLI::ValidationError("--geometry", "appendixB or lemma2");
      SaturationResult res = saturation_scan(st, sat_site, sat_eps, sat_l0,
                                             geom);
      os << "l,center_start,center_len,mutual_info,threshold,met\n";
      os << res.l << "," << res.x_center.start << "," << res.x_center.length
         << "," << sci(res.mutual_info) << "," << sci(res.threshold) << ","
         << (res.met ? 1 : 0) << "\n";
      return res.met ? 0 : 1;
    }

    if (*thm) {
      ChainState st = make_fixture(thm_state, seed);
      DecayCertificate cert = edc_certify(st, thm_xi, thm_l0, thm_cap);
      if (cert.verdict != DecayCertificate::Verdict::certified) {
        os << "error,decay not certified\n";
        os << "witness," << cert.detail << "\n";
        return 1;
      }
      TheoremTable table = theorem_harness(st, cert, thm_lcount);
      os << "block_start,block_len,l,eps,hmax_lower,hmax_upper\n";
      for (const auto& r : table.rows)
        os << r.block_start << "," << r.block_len << "," << r.l << ","
           << sci(r.eps) << "," << sci(r.hmax_lower) << ","
           << sci(r.hmax_upper) << "\n";
      os << "saturated," << (table.saturated ? 1 : 0) << ",,"
         << sci(table.saturation_gap) << ",,\n";
      return 0;
    }

    if (*ver) return run_verify(ver_suite, seed, out);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "failure: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
