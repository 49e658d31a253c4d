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

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

namespace aerw {

enum class Regime { Diffusive, Critical, Superdiffusive };

std::string_view to_string(Regime regime);

// |p - p_c| at or below this value is classified as critical.
inline constexpr double kCriticalTolerance = 1e-12;

// |beta - a(beta+1)| at or below this value is treated as the singular line.
inline constexpr double kSingularTolerance = 1e-12;

// Critical memory parameter (4 beta + 3) / (4 (beta + 1)).
double critical_p(double beta);

// Throws ParameterError unless 0 <= p <= 1 and beta >= 0 (finite).
Regime classify_regime(double p, double beta);

// Model parameters of one walk. Construction validates the ranges and
// derives a = 2p - 1 and the regime; a regime override is used when the
// caller wants to force a classification near p_c.
class ModelParams {
 public:
  ModelParams(double p, double q, double beta,
              std::optional<Regime> regime_override = std::nullopt);

  double p() const { return p_; }
  double q() const { return q_; }
  double beta() const { return beta_; }
  double a() const { return a_; }
  Regime regime() const { return regime_; }

  // a (beta + 1), the exponent that governs a_n.
  double drift() const { return a_ * (beta_ + 1.0); }

  // True on the line a(beta+1) = beta where N_n's coefficient blows up.
  bool singular() const;

  // Coefficient a(beta+1) / (beta - a(beta+1)) of mu_n^{-1} Y_n in N_n.
  // Throws SingularityError on the singular line.
  double n_coefficient() const;

  // Growth exponent a(beta+1) - beta of S_n in the superdiffusive regime.
  double superdiffusive_exponent() const { return drift() - beta_; }

  friend bool operator==(const ModelParams&, const ModelParams&) = default;

 private:
  double p_;
  double q_;
  double beta_;
  double a_;
  Regime regime_;
};

struct SignedLogGamma {
  double log_abs;  // log |Gamma(x)|
  int sign;        // sign of Gamma(x)
};

// log |Gamma(x)| with sign; Lanczos for x >= 0.5, reflection below.
// Throws DomainError at the poles x = 0, -1, -2, ...
SignedLogGamma log_gamma_signed(double x);

// Gamma(x) assembled from log_gamma_signed; may overflow to +-inf.
double gamma_fn(double x);

// Signed value stored as log |v| plus sign; sign 0 means v == 0.
struct SignedLog {
  double log_abs;
  int sign;
  double value() const;
};

// Append-only table of log mu_k, the sampler's log-prefix values and
// log |a_k| for one parameter set.
//
//   mu_1 = 1,  mu_{k+1} = mu_k (1 + beta/k)
//   a_1  = 1,  a_{k+1}  = a_k / gamma_k,  gamma_k = 1 + a(beta+1)/k
//   log_prefix[k] = log k + log mu_{k+1}
//
// exp(log_prefix[k] - log_prefix[n]) is P(memory index <= k) at time n+1.
// Build to capacity on one thread, then share const references.
class SequenceCache {
 public:
  explicit SequenceCache(const ModelParams& params, std::size_t capacity = 1);

  // Extends the tables so that indices 1..n+1 are valid.
  void reserve(std::size_t n);

  // Largest n for which mu_{n+1} and log_prefix[n] are available.
  std::size_t capacity() const { return log_mu_.size() - 2; }

  double beta() const { return beta_; }
  double drift() const { return drift_; }

  double log_mu(std::size_t k) const { return log_mu_[k]; }
  double log_prefix(std::size_t k) const { return log_prefix_[k]; }
  const double* log_prefix_data() const { return log_prefix_.data(); }

  // log |a_k| and sign; log_abs = +inf once some gamma_j vanished (j < k).
  SignedLog log_a(std::size_t k) const { return {log_a_[k], sign_a_[k]}; }

  // log |a_k mu_k| with the sign of a_k.
  SignedLog log_a_mu(std::size_t k) const {
    return {log_a_[k] + log_mu_[k], sign_a_[k]};
  }

  // First index k with gamma_k == 0 (then a_{k+1}, a_{k+2}, ... are infinite), if any
  // within capacity.
  std::optional<std::size_t> vanishing_gamma() const { return vanishing_gamma_; }

 private:
  double beta_;
  double drift_;
  // Index 0 is unused padding so that entries line up with k.
  std::vector<double> log_mu_;
  std::vector<double> log_prefix_;
  std::vector<double> log_a_;
  std::vector<int> sign_a_;
  // Neumaier running sums (value + compensation) for log mu and log |a|.
  double mu_sum_ = 0.0;
  double mu_comp_ = 0.0;
  double a_sum_ = 0.0;
  double a_comp_ = 0.0;
  std::optional<std::size_t> vanishing_gamma_;
};

// mu_n (auto-extends the cache).
double mu(SequenceCache& cache, std::size_t n);

// a_n = Gamma(n) Gamma(a(beta+1)+1) / Gamma(n + a(beta+1)) (auto-extends).
double a_seq(SequenceCache& cache, std::size_t n);

// Diffusive QSL / CLT variance
//   (2 beta + 1 - a) / ((1 - a)(1 + 2 beta - 2 a (beta + 1))).
double sigma2_diffusive(const ModelParams& params);

// Covariance E[W_s W_t] of the diffusive limit process, 0 < s <= t.
double limit_covariance(double s, double t, const ModelParams& params);

struct SuperdiffusiveMoments {
  double mean;           // E[L_beta]
  double second_moment;  // E[L_beta^2]
};

SuperdiffusiveMoments superdiffusive_moments(const ModelParams& params);

// (2 beta + 1)^2.
double critical_variance(double beta);

// Constants collected for one parameter set; fields outside the regime are empty.
struct RegimeConstants {
  Regime regime;
  double critical_p;
  double critical_var;
  std::optional<double> sigma2;
  std::optional<double> el;
  std::optional<double> el2;
};

RegimeConstants regime_constants(const ModelParams& params);

}  // namespace aerw
