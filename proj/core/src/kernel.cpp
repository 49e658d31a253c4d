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

#include "aerw/kernel.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "aerw/errors.hpp"

namespace aerw {

namespace {

// Lanczos approximation, g = 7, n = 9.
constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczosCoef = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

double lanczos_log_gamma(double x) {
  // x >= 0.5
  const double z = x - 1.0;
  double series = kLanczosCoef[0];
  for (std::size_t i = 1; i < kLanczosCoef.size(); ++i) {
    series += kLanczosCoef[i] / (z + static_cast<double>(i));
  }
  const double t = z + kLanczosG + 0.5;
  return 0.5 * std::log(2.0 * std::numbers::pi) + (z + 0.5) * std::log(t) - t +
         std::log(series);
}

// sin(pi x) with exact reduction of the argument modulo 2.
double sin_pi(double x) {
  double r = std::remainder(x, 2.0);  // r in [-1, 1]
  if (r > 0.5) {
    r = 1.0 - r;
  } else if (r < -0.5) {
    r = -1.0 - r;
  }
  return std::sin(std::numbers::pi * r);
}

bool is_pole(double x) { return x <= 0.0 && x == std::floor(x); }

void require_finite(double value, const char* name) {
  if (!std::isfinite(value)) {
    throw ParameterError(std::string(name) + " must be finite");
  }
}

void require_regime(const ModelParams& params, Regime expected,
                    const char* what) {
  if (params.regime() != expected) {
    throw RegimeError(std::string(what) + " requires the " +
                      std::string(to_string(expected)) + " regime, got " +
                      std::string(to_string(params.regime())));
  }
}

}  // namespace

std::string_view to_string(Regime regime) {
  switch (regime) {
    case Regime::Diffusive:
      return "diffusive";
    case Regime::Critical:
      return "critical";
    case Regime::Superdiffusive:
      return "superdiffusive";
  }
  return "unknown";
}

double critical_p(double beta) {
  return (4.0 * beta + 3.0) / (4.0 * (beta + 1.0));
}

Regime classify_regime(double p, double beta) {
  require_finite(p, "p");
  require_finite(beta, "beta");
  if (p < 0.0 || p > 1.0) {
    throw ParameterError("p must lie in [0, 1], got " + std::to_string(p));
  }
  if (beta < 0.0) {
    throw ParameterError("beta must be >= 0, got " + std::to_string(beta));
  }
  const double pc = critical_p(beta);
  if (std::abs(p - pc) <= kCriticalTolerance) {
    return Regime::Critical;
  }
  return p < pc ? Regime::Diffusive : Regime::Superdiffusive;
}

ModelParams::ModelParams(double p, double q, double beta,
                         std::optional<Regime> regime_override)
    : p_(p), q_(q), beta_(beta), a_(2.0 * p - 1.0),
      regime_(classify_regime(p, beta)) {
  require_finite(q, "q");
  if (q < 0.0 || q > 1.0) {
    throw ParameterError("q must lie in [0, 1], got " + std::to_string(q));
  }
  if (regime_override) {
    regime_ = *regime_override;
  }
}

bool ModelParams::singular() const {
  return std::abs(beta_ - drift()) <= kSingularTolerance;
}

double ModelParams::n_coefficient() const {
  if (singular()) {
    throw SingularityError(
        "a(beta+1) = beta: the N_n martingale coefficient is undefined");
  }
  return drift() / (beta_ - drift());
}

SignedLogGamma log_gamma_signed(double x) {
  if (std::isnan(x)) {
    throw DomainError("log_gamma_signed: NaN argument");
  }
  if (is_pole(x)) {
    throw DomainError("log_gamma_signed: pole at x = " + std::to_string(x));
  }
  if (x >= 0.5) {
    return {lanczos_log_gamma(x), 1};
  }
  // Gamma(x) Gamma(1 - x) = pi / sin(pi x)
  const double s = sin_pi(x);
  return {std::log(std::numbers::pi) - std::log(std::abs(s)) -
              lanczos_log_gamma(1.0 - x),
          s > 0.0 ? 1 : -1};
}

double gamma_fn(double x) {
  const auto g = log_gamma_signed(x);
  return g.sign * std::exp(g.log_abs);
}

double SignedLog::value() const {
  if (sign == 0) {
    return 0.0;
  }
  return sign * std::exp(log_abs);
}

SequenceCache::SequenceCache(const ModelParams& params, std::size_t capacity)
    : beta_(params.beta()), drift_(params.drift()) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  log_mu_ = {nan, 0.0};
  log_prefix_ = {nan};
  log_a_ = {nan, 0.0};
  sign_a_ = {0, 1};
  reserve(capacity);
}

void SequenceCache::reserve(std::size_t n) {
  if (n + 2 <= log_mu_.size()) {
    return;
  }
  log_mu_.reserve(n + 2);
  log_prefix_.reserve(n + 1);
  log_a_.reserve(n + 2);
  sign_a_.reserve(n + 2);
  double mu_sum = mu_sum_;
  double a_sum = a_sum_;
  while (log_mu_.size() < n + 2) {
    const std::size_t j = log_mu_.size() - 1;  // append index j + 1
    const double dj = static_cast<double>(j);

    // Neumaier summation of log(1 + beta/j).
    const double term = std::log1p(beta_ / dj);
    const double t = mu_sum + term;
    if (std::abs(mu_sum) >= std::abs(term)) {
      mu_comp_ += (mu_sum - t) + term;
    } else {
      mu_comp_ += (term - t) + mu_sum;
    }
    mu_sum = t;
    log_mu_.push_back(mu_sum + mu_comp_);
    log_prefix_.push_back(std::log(dj) + log_mu_.back());

    const double ratio = drift_ / dj;  // gamma_j - 1
    int sign = sign_a_.back();
    double log_gamma_abs;
    if (ratio > -1.0) {
      log_gamma_abs = std::log1p(ratio);
    } else if (ratio < -1.0) {
      log_gamma_abs = std::log(-1.0 - ratio);
      sign = -sign;
    } else {
      log_gamma_abs = -std::numeric_limits<double>::infinity();
      if (!vanishing_gamma_) {
        vanishing_gamma_ = j;
      }
    }
    if (std::isinf(a_sum) || std::isinf(log_gamma_abs)) {
      a_sum = std::numeric_limits<double>::infinity();
      log_a_.push_back(a_sum);
    } else {
      const double neg = -log_gamma_abs;
      const double u = a_sum + neg;
      if (std::abs(a_sum) >= std::abs(neg)) {
        a_comp_ += (a_sum - u) + neg;
      } else {
        a_comp_ += (neg - u) + a_sum;
      }
      a_sum = u;
      log_a_.push_back(a_sum + a_comp_);
    }
    sign_a_.push_back(sign);
  }
  mu_sum_ = mu_sum;
  a_sum_ = a_sum;
}

double mu(SequenceCache& cache, std::size_t n) {
  if (n == 0) {
    throw ArgumentError("mu: n must be >= 1");
  }
  cache.reserve(n);
  return std::exp(cache.log_mu(n));
}

double a_seq(SequenceCache& cache, std::size_t n) {
  if (n == 0) {
    throw ArgumentError("a_seq: n must be >= 1");
  }
  cache.reserve(n);
  return cache.log_a(n).value();
}

double sigma2_diffusive(const ModelParams& params) {
  require_regime(params, Regime::Diffusive, "sigma2_diffusive");
  const double a = params.a();
  const double b = params.beta();
  return (2.0 * b + 1.0 - a) /
         ((1.0 - a) * (1.0 + 2.0 * b - 2.0 * a * (b + 1.0)));
}

double limit_covariance(double s, double t, const ModelParams& params) {
  require_regime(params, Regime::Diffusive, "limit_covariance");
  if (!(s > 0.0) || !std::isfinite(t)) {
    throw ArgumentError("limit_covariance: need 0 < s");
  }
  if (s > t) {
    throw ArgumentError("limit_covariance: need s <= t");
  }
  if (params.singular()) {
    throw SingularityError(
        "limit_covariance: undefined on the line a(beta+1) = beta");
  }
  const double a = params.a();
  const double b = params.beta();
  const double exponent = a - b * (1.0 - a);
  const double power_coef =
      (a * (1.0 + b) * (1.0 - a) + a * b) /
      ((2.0 * (b + 1.0) * (1.0 - a) - 1.0) * exponent * (1.0 - a));
  const double linear_coef = b / ((b * (1.0 - a) - a) * (1.0 - a));
  return power_coef * s * std::pow(t / s, exponent) + linear_coef * s;
}

SuperdiffusiveMoments superdiffusive_moments(const ModelParams& params) {
  require_regime(params, Regime::Superdiffusive, "superdiffusive_moments");
  const double a = params.a();
  const double b = params.beta();
  const double drift = params.drift();
  const double excess = drift - b;

  auto lg = [](double x, const char* name) {
    try {
      return log_gamma_signed(x);
    } catch (const DomainError&) {
      throw DomainError(std::string("superdiffusive_moments: Gamma pole at ") +
                        name + " = " + std::to_string(x));
    }
  };
  const auto g_beta = lg(b + 1.0, "beta+1");
  const auto g_drift = lg(drift + 1.0, "a(beta+1)+1");
  const auto g_num = lg(2.0 * (a - 1.0) * (b + 1.0) + 1.0, "2(a-1)(beta+1)+1");
  const auto g_den = lg((2.0 * a - 1.0) * (b + 1.0) + 1.0, "(2a-1)(beta+1)+1");

  const double mean_scale =
      g_beta.sign * g_drift.sign *
      std::exp(g_beta.log_abs - g_drift.log_abs);
  const double mean = drift * (2.0 * params.q() - 1.0) * mean_scale / excess;

  const double second_scale =
      g_num.sign *
      std::exp(2.0 * g_beta.log_abs + g_num.log_abs - 2.0 * g_den.log_abs);
  const double second = drift * drift * second_scale / (excess * excess);
  return {mean, second};
}

double critical_variance(double beta) {
  const double f = 2.0 * beta + 1.0;
  return f * f;
}

RegimeConstants regime_constants(const ModelParams& params) {
  RegimeConstants out{params.regime(), critical_p(params.beta()),
                      critical_variance(params.beta()), std::nullopt,
                      std::nullopt, std::nullopt};
  if (params.regime() == Regime::Diffusive) {
    out.sigma2 = sigma2_diffusive(params);
  } else if (params.regime() == Regime::Superdiffusive) {
    const auto m = superdiffusive_moments(params);
    out.el = m.mean;
    out.el2 = m.second_moment;
  }
  return out;
}

}  // namespace aerw
