/*
 * Copyright 2026 The AERW Lab Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Acceptance suite: one verdict line per criterion. Tolerances are pinned
// here and nowhere else.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "aerw/exact.hpp"
#include "aerw/kernel.hpp"
#include "aerw/parallel.hpp"
#include "aerw/simulate.hpp"
#include "aerw/stats.hpp"

namespace {

using namespace aerw;

constexpr double kOracleTol = 1e-10;        // C1
constexpr double kCdfTol = 1e-12;           // C2
constexpr double kGofAlpha = 0.001;         // C2
constexpr double kDiffusiveRel = 0.05;      // C3
constexpr double kCriticalRel = 0.10;       // C4
constexpr double kSuperMeanRel = 0.02;      // C5
constexpr double kSuperSecondRel = 0.03;    // C5
constexpr double kMonteCarloZ = 4.0;        // C5, C7
constexpr double kCovarianceRel = 0.03;     // C7
constexpr double kDiagonalRel = 1e-10;      // C7
constexpr double kQslRel = 0.10;            // C8
constexpr double kMergeRel = 1e-12;         // C10

struct Verdict {
  enum Kind { Pass, Fail } kind = Pass;
  std::string summary;
  std::vector<std::string> details;

  void check(bool ok, const std::string& line) {
    details.push_back(std::string(ok ? "ok   " : "FAIL ") + line);
    if (!ok) kind = Fail;
  }
  void info(const std::string& line) { details.push_back("info " + line); }
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof(buf), f, args...);
  return buf;
}

unsigned threads() { return default_thread_count(); }

MomentRow row_at(const ModelParams& m, std::uint64_t n) {
  return moment_recurrence(m, std::vector<std::uint64_t>{n}).rows.front();
}

Verdict oracle_equivalence() {
  Verdict v;
  double worst = 0.0;
  int cases = 0;
  for (double p : {0.1, 0.5, 0.75, 0.9}) {
    for (double q : {0.3, 1.0}) {
      for (double beta : {0.0, 1.0, 2.5}) {
        const ModelParams m(p, q, beta);
        for (std::uint64_t n = 1; n <= 6; ++n) {
          const MomentRow e = enumerate(m, n).moments(beta);
          const MomentRow r = row_at(m, n);
          for (double d : {e.m_s - r.m_s, e.m_y - r.m_y, e.s_ss - r.s_ss, e.s_yy - r.s_yy,
                           e.s_sy - r.s_sy}) {
            worst = std::max(worst, std::abs(d));
          }
          ++cases;
        }
      }
    }
  }
  v.check(worst <= kOracleTol,
          fmt("%d (p,q,beta,n) cases, max |enumerate - recurrence| = %.3e (tol %.0e)", cases,
              worst, kOracleTol));
  v.summary = fmt("enumerate vs moment recurrence, max abs diff %.3e", worst);
  return v;
}

Verdict sampler_exactness() {
  Verdict v;
  for (double beta : {0.0, 1.0, 2.5}) {
    const TestReport r = sampler_gof(50, beta, 1000000, 2026, kGofAlpha);
    v.check(r.pass(), fmt("chi-square n=50 beta=%.1f: stat %.2f df %d critical %.2f p-value %.4f",
                          beta, r.observed, static_cast<int>(r.target),
                          r.extra["critical"].get<double>(), r.extra["p_value"].get<double>()));
  }
  double worst = 0.0;
  for (double beta : {0.0, 1.0, 2.5}) {
    SequenceCache cache(ModelParams(0.5, 0.5, beta), 1000);
    for (std::size_t n = 1; n <= 1000; ++n) {
      double cum = 0.0;
      for (std::size_t k = 1; k <= n; ++k) {
        cum += memory_pmf(cache, n, k);
        worst = std::max(worst, std::abs(memory_cdf(cache, n, k) - cum));
      }
    }
  }
  v.check(worst <= kCdfTol,
          fmt("memory_cdf vs cumulative pmf, n <= 1000: max diff %.3e (tol %.0e)", worst, kCdfTol));
  v.summary = "sampler chi-square at alpha=0.001 and closed-form CDF";
  return v;
}

Verdict diffusive_variance() {
  Verdict v;
  const ModelParams m(0.6, 0.5, 1.0);
  const double target = sigma2_diffusive(m);
  v.info(fmt("target sigma_beta^2 = (2b+1-a)/((1-a)(1+2b-2a(b+1))) = %.9f (= 35/22); the "
             "value 1.346153 quoted alongside this check evaluates the denominator incorrectly",
             target));
  const auto table = moment_recurrence(m, std::vector<std::uint64_t>{1000, 10000, 100000, 1000000});
  double last_gap = INFINITY;
  bool shrinking = true;
  double final_ratio = 0.0;
  for (const auto& row : table.rows) {
    const double ratio = row.var_s() / static_cast<double>(row.n);
    const double gap = std::abs(ratio - target);
    v.info(fmt("n=%-8llu Var(S_n)/n = %.9f  gap %.3e", static_cast<unsigned long long>(row.n),
               ratio, gap));
    shrinking = shrinking && gap < last_gap;
    last_gap = gap;
    final_ratio = ratio;
  }
  v.check(shrinking, "gap to sigma_beta^2 strictly decreasing over n = 1e3..1e6");
  v.check(std::abs(final_ratio / target - 1.0) <= kDiffusiveRel,
          fmt("n=1e6: %.6f within %.0f%% of %.6f", final_ratio, 100 * kDiffusiveRel, target));
  v.summary = fmt("Var(S_n)/n at 1e6 = %.6f vs sigma_beta^2 = %.6f", final_ratio, target);
  return v;
}

Verdict critical_normalization() {
  Verdict v;
  std::string summary;
  for (auto [beta, p] : {std::pair{0.0, 0.75}, {1.0, 0.875}}) {
    const ModelParams m(p, 0.5, beta);
    const double target = critical_variance(beta);
    const auto table =
        moment_recurrence(m, std::vector<std::uint64_t>{1000, 10000, 100000, 1000000});
    double ratio = 0.0;
    for (const auto& row : table.rows) {
      const double nd = static_cast<double>(row.n);
      ratio = row.var_s() / (nd * std::log(nd)) / target;
      v.info(fmt("beta=%.0f p=%.3f n=%-8llu Var(S_n)/(n log n (2b+1)^2) = %.6f", beta, p,
                 static_cast<unsigned long long>(row.n), ratio));
    }
    v.check(std::abs(ratio - 1.0) <= kCriticalRel,
            fmt("beta=%.0f p=%.3f: ratio %.4f at n=1e6 within %.0f%% of 1", beta, p, ratio,
                100 * kCriticalRel));
    summary += fmt("beta=%.0f ratio %.4f; ", beta, ratio);
    if (beta == 1.0) {
      // Var(S_n)/(n log n) = (2b+1)^2 (1 + c/log n + ...): estimate c from two points.
      const double r5 = table.rows[2].var_s() / (1e5 * std::log(1e5)) / target;
      const double c = (ratio - r5) / (1.0 / std::log(1e6) - 1.0 / std::log(1e5));
      const double limit = ratio - c / std::log(1e6);
      v.info(fmt("first-order log correction: c = %.3f, extrapolated ratio %.4f; 10%% is "
                 "reached only near n = exp(%.0f)", c, limit, std::abs(c) / 0.1));
    }
  }
  v.summary = "Var(S_n)/(n log n) vs (2b+1)^2: " + summary;
  return v;
}

Verdict superdiffusive_moments_check() {
  Verdict v;
  const ModelParams m(0.9, 1.0, 1.0);
  const auto limits = superdiffusive_moments(m);
  const double e = m.superdiffusive_exponent();
  const auto table = moment_recurrence(m, std::vector<std::uint64_t>{10000, 100000, 1000000});
  std::vector<double> second;
  double mean_ratio = 0.0;
  for (const auto& row : table.rows) {
    const double scale = std::pow(static_cast<double>(row.n), e);
    mean_ratio = row.m_s / scale;
    second.push_back(row.s_ss / (scale * scale));
    v.info(fmt("n=%-8llu E[S_n]/n^e = %.6f  E[S_n^2]/n^2e = %.5f",
               static_cast<unsigned long long>(row.n), mean_ratio, second.back()));
  }
  v.check(std::abs(mean_ratio / limits.mean - 1.0) <= kSuperMeanRel,
          fmt("mean %.6f within %.0f%% of E[L] = %.6f", mean_ratio, 100 * kSuperMeanRel,
              limits.mean));
  v.check(std::abs(second.back() / limits.second_moment - 1.0) <= kSuperSecondRel,
          fmt("second moment %.5f within %.0f%% of E[L^2] = %.5f (off by %.1f%%)", second.back(),
              100 * kSuperSecondRel, limits.second_moment,
              100 * (second.back() / limits.second_moment - 1.0)));
  // Decades are equally spaced in log n, so a geometric correction n^-k
  // is removed by one Aitken step.
  const double d1 = second[1] - second[0];
  const double d2 = second[2] - second[1];
  v.info(fmt("Aitken extrapolation of the second moment: %.4f (E[L^2] = %.4f), decade "
             "contraction %.3f", second[2] - d2 * d2 / (d2 - d1), limits.second_moment, d2 / d1));

  CampaignConfig cfg;
  cfg.n = 10000;
  cfg.paths = 100000;
  cfg.seed = 55;
  cfg.threads = threads();
  cfg.z = kMonteCarloZ;
  for (const auto& r : superdiffusive_campaign(m, cfg)) {
    if (r.statistic == "superdiffusive_mean_vs_exact" ||
        r.statistic == "superdiffusive_second_vs_exact") {
      v.check(r.pass(), fmt("Monte Carlo %s: %.5f vs oracle %.5f, |diff| = %.2f SE",
                            r.statistic.c_str(), r.observed, r.target,
                            std::abs(r.observed - r.target) / r.stderr_));
    } else {
      v.info(fmt("%s: observed %.5f target %.5f (%s)", r.statistic.c_str(), r.observed,
                 r.target, std::string(to_string(r.status)).c_str()));
    }
  }
  v.summary = fmt("E[S_n]/n^e %.5f vs %.5f; E[S_n^2]/n^2e %.4f vs %.4f", mean_ratio,
                  limits.mean, second.back(), limits.second_moment);
  return v;
}

Verdict clt_shape() {
  Verdict v;
  CampaignConfig cfg;
  cfg.n = 10000;
  cfg.paths = 10000;
  cfg.seed = 66;
  cfg.threads = threads();
  std::string summary;
  for (auto [beta, p] : {std::pair{1.0, 0.6}, {0.0, 0.75}, {1.0, 0.875}}) {
    const ModelParams m(p, 0.5, beta);
    const TestReport r = clt_test(m, cfg, Standardization::Exact);
    v.check(r.pass(), fmt("%s beta=%.0f p=%.3f: D = %.5f, threshold c(0.001)/sqrt(N) = %.5f",
                          r.statistic.c_str(), beta, p, r.observed, r.tolerance));
    const TestReport lim = clt_test(m, cfg, Standardization::Limit);
    v.info(fmt("same paths standardized by the limit normalization: D = %.5f (%s)",
               lim.observed, std::string(to_string(lim.status)).c_str()));
    if (!r.pass()) {
      CampaignConfig wide = cfg;
      wide.paths = 4 * cfg.paths;
      wide.seed = cfg.seed + 1;
      const TestReport w = clt_test(m, wide, Standardization::Exact);
      v.info(fmt("4x paths, fresh seed: D = %.5f against a null noise scale 0.87/sqrt(N) = "
                 "%.5f, so the finite-n law itself sits about %.3f from N(0,1)",
                 w.observed, 0.87 / std::sqrt(static_cast<double>(wide.paths)), w.observed));
    }
    summary += fmt("D=%.4f ", r.observed);
  }
  v.summary = "KS distance of standardized S_n: " + summary;
  return v;
}

Verdict covariance_limit() {
  Verdict v;
  const ModelParams m(0.6, 0.5, 0.0);
  CampaignConfig cfg;
  cfg.n = 10000;
  cfg.paths = 100000;
  cfg.seed = 77;
  cfg.threads = threads();
  const TestReport r = covariance_test(m, 0.5, 1.0, cfg);
  const double literal = 0.5 * std::pow(2.0, 0.2) / 0.6;
  const double bound = kMonteCarloZ * r.stderr_ + kCovarianceRel * std::abs(literal);
  v.check(std::abs(r.target - literal) < 1e-14, fmt("limit_covariance(0.5, 1) = %.12f", r.target));
  v.check(std::abs(r.observed - literal) <= bound,
          fmt("Cov(S_n/2, S_n)/n = %.5f vs %.5f, |diff| %.5f <= 4 SE + 3%% = %.5f (exact finite-n "
              "%.5f)", r.observed, literal, std::abs(r.observed - literal), bound,
              r.extra["exact_finite_n"].get<double>()));

  std::mt19937_64 gen(777);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  int checked = 0;
  double worst = 0.0;
  while (checked < 20) {
    const double beta = 5.0 * unit(gen);
    const ModelParams d(unit(gen) * critical_p(beta), unit(gen), beta);
    if (d.regime() != Regime::Diffusive || std::abs(d.drift() - beta) < 1e-3) continue;
    const double t = 0.05 + 3.0 * unit(gen);
    worst = std::max(worst, std::abs(limit_covariance(t, t, d) / (t * sigma2_diffusive(d)) - 1.0));
    ++checked;
  }
  v.check(worst <= kDiagonalRel,
          fmt("limit_covariance(t,t) = t sigma^2 over 20 random sets: max rel err %.2e", worst));
  v.summary = fmt("covariance %.5f vs %.5f; diagonal identity %.1e", r.observed, literal, worst);
  return v;
}

Verdict quadratic_strong_law() {
  Verdict v;
  const ModelParams m(0.6, 0.5, 1.0);
  CampaignConfig cfg;
  cfg.n = 1000000;
  cfg.paths = 100;
  cfg.seed = 88;
  cfg.threads = threads();
  const auto reports = qsl_campaign(m, cfg);
  const TestReport& lim = reports[0];
  v.check(std::abs(lim.observed / lim.target - 1.0) <= kQslRel,
          fmt("mean QSL functional %.4f within %.0f%% of sigma_beta^2 = %.4f (SE %.4f)",
              lim.observed, 100 * kQslRel, lim.target, lim.stderr_));
  v.info(fmt("exact expectation of the functional at n=1e6: %.4f (%s)", reports[1].target,
             std::string(to_string(reports[1].status)).c_str()));
  v.summary = fmt("QSL mean %.4f vs %.4f", lim.observed, lim.target);
  return v;
}

Verdict lil_report() {
  Verdict v;
  const ModelParams m(0.875, 0.5, 1.0);
  CampaignConfig cfg;
  cfg.n = 1000000;
  cfg.paths = 1;
  cfg.seed = 99;
  const TestReport r = lil_diagnostic(m, cfg);
  v.info(fmt("running max of S_k^2/(2k log k logloglog k) over k in [16, 1e6]: %.4f at k=%llu",
             r.observed, static_cast<unsigned long long>(r.extra["argmax"].get<std::uint64_t>())));
  v.info(fmt("final value %.4f, reference (2b+1)^2 = %.0f, logloglog 1e6 = %.3f",
             r.extra["final_statistic"].get<double>(), r.target,
             r.extra["logloglogn"].get<double>()));
  v.check(std::isfinite(r.observed), "running max is finite (no quantitative gate)");
  v.summary = fmt("LIL running max %.4f (informational)", r.observed);
  return v;
}

Verdict determinism() {
  Verdict v;
  const ModelParams m(0.7, 0.6, 1.0);
  CampaignConfig base;
  base.n = 200;
  base.paths = 100000;
  base.seed = 1010;
  auto dump = [&](unsigned t, std::uint64_t parts) {
    CampaignConfig c = base;
    c.threads = t;
    c.partitions = parts;
    return estimate_position_moments(m, c);
  };
  const auto reference = dump(1, 64);
  std::string ref_json;
  for (const auto& r : reference) ref_json += to_json(r).dump();
  for (unsigned t : {2u, 4u, 8u}) {
    std::string other;
    for (const auto& r : dump(t, 64)) other += to_json(r).dump();
    v.check(other == ref_json, fmt("64 partitions on %u threads: reports byte-identical", t));
  }
  for (std::uint64_t parts : {1u, 4u}) {
    const auto alt = dump(1, parts);
    double worst = 0.0;
    for (std::size_t i = 0; i < alt.size(); ++i) {
      worst = std::max(worst, std::abs(alt[i].observed - reference[i].observed) /
                                  std::max(1.0, std::abs(reference[i].observed)));
    }
    v.check(worst <= kMergeRel,
            fmt("%llu vs 64 partitions: max rel diff %.2e (tol %.0e)",
                static_cast<unsigned long long>(parts), worst, kMergeRel));
  }
  auto csv = [] {
    const ModelParams walk(0.75, 0.5, 1.0);
    SequenceCache cache(walk, 100000);
    RngStream rng(42, 0);
    std::ostringstream s;
    write_trajectory_csv(
        s, run_path(walk, 100000, CheckpointSchedule::every(1000, 100000), {}, rng, cache));
    return s.str();
  };
  v.check(csv() == csv(), "trajectory CSV byte-identical across two runs");
  v.summary = "thread and partition invariance, trajectory bytes";
  return v;
}

struct Criterion {
  int id;
  const char* title;
  std::function<Verdict()> run;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  std::vector<int> only;
  bool verbose = true;
  app.add_option("--criterion", only, "run only these criteria (1-10)");
  app.add_flag("!--quiet", verbose, "omit detail lines");
  CLI11_PARSE(app, argc, argv);

  const std::vector<Criterion> criteria = {
      {1, "oracle equivalence", oracle_equivalence},
      {2, "sampler exactness", sampler_exactness},
      {3, "diffusive variance constant", diffusive_variance},
      {4, "critical normalization", critical_normalization},
      {5, "superdiffusive moments", superdiffusive_moments_check},
      {6, "CLT shape", clt_shape},
      {7, "limit covariance", covariance_limit},
      {8, "quadratic strong law", quadratic_strong_law},
      {9, "LIL diagnostic", lil_report},
      {10, "determinism and merge invariance", determinism},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end()) continue;
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v.kind = Verdict::Fail;
      v.summary = std::string("exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (verbose) {
      for (const auto& d : v.details) std::cout << "      " << d << '\n';
    }
    std::cout << (v.kind == Verdict::Pass ? "PASS" : "FAIL") << "  C" << c.id << " " << c.title
              << " [" << fmt("%.1fs", secs) << "]: " << v.summary << std::endl;
    failures += v.kind == Verdict::Fail;
  }
  return failures == 0 ? 0 : 1;
}
