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

#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "aerw/kernel.hpp"
#include "aerw/rng.hpp"

namespace aerw {

// Fixed-width histogram over [lo, hi) with underflow/overflow counters.
struct HistogramSpec {
  double lo;
  double hi;
  std::size_t bins;
  std::size_t dim = 0;  // which coordinate is binned

  friend bool operator==(const HistogramSpec&, const HistogramSpec&) = default;
};

// Merge-able accumulator over d-dimensional observations: count, means,
// co-moment matrix (Welford / Chan), third and fourth central moments per
// coordinate (Pebay), and an optional histogram.
class EstimatorState {
 public:
  explicit EstimatorState(std::size_t dims = 1,
                          std::optional<HistogramSpec> histogram = std::nullopt);

  void add(std::span<const double> x);
  void add(double x) { add(std::span<const double>(&x, 1)); }

  // Combines another state built with the same layout.
  void merge(const EstimatorState& other);

  std::size_t dims() const { return dims_; }
  std::uint64_t count() const { return count_; }
  double mean(std::size_t i = 0) const { return mean_[i]; }
  // Sample variance M2/(count-1); NaN for count < 2.
  double variance(std::size_t i = 0) const;
  // Sample covariance C_ij/(count-1).
  double covariance(std::size_t i, std::size_t j) const;
  // Central moments with divisor count.
  double central_moment(std::size_t i, int order) const;
  double stderr_mean(std::size_t i = 0) const;
  // Large-sample standard error of the variance estimate.
  double stderr_variance(std::size_t i = 0) const;
  // Normal-theory standard error of the covariance estimate.
  double stderr_covariance(std::size_t i, std::size_t j) const;

  const std::optional<HistogramSpec>& histogram_spec() const { return hist_; }
  const std::vector<std::uint64_t>& histogram() const { return bins_; }
  std::uint64_t underflow() const { return underflow_; }
  std::uint64_t overflow() const { return overflow_; }

 private:
  double& comoment(std::size_t i, std::size_t j) {
    return co_[i * dims_ + j];
  }
  double comoment(std::size_t i, std::size_t j) const {
    return co_[i * dims_ + j];
  }

  std::size_t dims_;
  std::uint64_t count_ = 0;
  std::vector<double> mean_;
  std::vector<double> co_;  // dims x dims, symmetric; diagonal is M2
  std::vector<double> m3_;
  std::vector<double> m4_;
  std::optional<HistogramSpec> hist_;
  std::vector<std::uint64_t> bins_;
  std::uint64_t underflow_ = 0;
  std::uint64_t overflow_ = 0;
};

enum class ReportStatus { Pass, Fail, Skipped, Info };

std::string_view to_string(ReportStatus status);

// One confrontation of an observed statistic with its target.
// Gating rule: pass iff |observed - target| <= max(tolerance, z * stderr).
struct TestReport {
  std::string statistic;
  double observed = 0.0;
  double target = 0.0;
  double tolerance = 0.0;
  double stderr_ = 0.0;
  double z = 4.0;
  ReportStatus status = ReportStatus::Fail;
  std::optional<ModelParams> params;
  std::uint64_t n = 0;
  std::uint64_t paths = 0;
  std::uint64_t seed = 0;
  std::string note;
  nlohmann::json extra = nlohmann::json::object();

  bool pass() const { return status != ReportStatus::Fail; }

  // Sets status to Pass or Fail from the gating rule.
  void evaluate();
};

TestReport skipped_report(std::string statistic, const ModelParams& params,
                          std::string reason);

nlohmann::json to_json(const TestReport& report);
// Header and one row per report for the CSV ledger.
std::string ledger_header();
std::string ledger_row(const TestReport& report);
// Appends rows to path, writing the header when the file is new or empty.
void append_ledger(const std::string& path,
                   std::span<const TestReport> reports);

// Standard normal CDF via erfc.
double normal_cdf(double x);

// Two-sided Kolmogorov-Smirnov distance of a sample to the standard normal.
double ks_distance_normal(std::vector<double> sample);

// Asymptotic Kolmogorov survival function P(sqrt(N) D > x).
double kolmogorov_survival(double x);
// c(alpha) with kolmogorov_survival(c) = alpha; the test threshold is c/sqrt(N).
double kolmogorov_critical_value(double alpha);

// Path-parallel Monte Carlo. Stream ids first_stream .. first_stream+paths-1
// are split into `partitions` contiguous blocks; each block is accumulated
// in stream order and the block states are merged in block order, so the
// result does not depend on the thread count.
struct FarmConfig {
  std::uint64_t paths = 1000;
  std::uint64_t seed = 1;
  unsigned threads = 1;
  std::uint64_t partitions = 64;
  std::uint64_t first_stream = 0;
};

EstimatorState farm_estimate(
    const FarmConfig& config, const EstimatorState& prototype,
    const std::function<void(RngStream&, EstimatorState&)>& path);

// One scalar per path, stored at index stream_id - first_stream.
std::vector<double> farm_values(const FarmConfig& config,
                                const std::function<double(RngStream&)>& path);

struct CampaignConfig {
  std::uint64_t n = 1000;
  std::uint64_t paths = 1000;
  std::uint64_t seed = 1;
  unsigned threads = 1;
  std::uint64_t partitions = 64;
  double z = 4.0;

  FarmConfig farm() const { return {paths, seed, threads, partitions, 0}; }
};

// Empirical mean/variance of S_n and Y~_n against the exact oracle, plus
// the strong-law check S_n/n -> 0 outside the superdiffusive regime.
std::vector<TestReport> estimate_position_moments(const ModelParams& params,
                                                  const CampaignConfig& config);

enum class Standardization {
  Exact,  // (S_n - E S_n) / sd(S_n) from the moment recurrence
  Limit,  // S_n / sqrt(sigma^2 n) or S_n / sqrt((2b+1)^2 n log n)
};

inline constexpr double kKsAlpha = 0.001;

// KS distance of standardized S_n to N(0,1); threshold c(0.001)/sqrt(paths).
// RegimeError in the superdiffusive regime.
TestReport clt_test(const ModelParams& params, const CampaignConfig& config,
                    Standardization standardization = Standardization::Exact);

// Cov(S_floor(ns), S_floor(nt)) / n against limit_covariance(s, t).
// tolerance = 3% of |target|.
TestReport covariance_test(const ModelParams& params, double s, double t,
                           const CampaignConfig& config);

// Mean per-path QSL functional against sigma^2 (diffusive, 10% tolerance)
// or (2 beta + 1)^2 (critical), plus a z-SE check against the exact
// expectation of the functional at the same n.
std::vector<TestReport> qsl_campaign(const ModelParams& params,
                                     const CampaignConfig& config);

// Moments of Z_n = S_n / n^{a(beta+1)-beta} against E[L], E[L^2] and the
// exact oracle, plus the mean-square Cauchy proxy over n/8, n/4, n/2, n.
std::vector<TestReport> superdiffusive_campaign(const ModelParams& params,
                                                const CampaignConfig& config);

// Chi-square goodness of fit of the memory sampler at time n+1. Cells with
// expected count below 5 are pooled with their right neighbours.
TestReport sampler_gof(std::uint64_t n, double beta, std::uint64_t draws,
                       std::uint64_t seed, double alpha = 0.001);

// Running max of the LIL statistic over one path; informational only.
TestReport lil_diagnostic(const ModelParams& params,
                          const CampaignConfig& config);

}  // namespace aerw
