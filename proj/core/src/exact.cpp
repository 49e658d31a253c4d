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

#include "aerw/exact.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <ostream>
#include <string>

#include "aerw/errors.hpp"
#include "aerw/format.hpp"

namespace aerw {

const MomentRow& MomentTable::at(std::uint64_t n) const {
  const auto it = std::lower_bound(
      rows.begin(), rows.end(), n,
      [](const MomentRow& row, std::uint64_t t) { return row.n < t; });
  if (it == rows.end() || it->n != n) {
    throw ArgumentError("moment table has no row for n = " +
                        std::to_string(n));
  }
  return *it;
}

void for_each_moment(const ModelParams& params, std::uint64_t n_max,
                     const std::function<void(const MomentRow&)>& visit) {
  if (n_max == 0) {
    return;
  }
  const double beta = params.beta();
  const double drift = params.drift();
  const double first = 2.0 * params.q() - 1.0;
  MomentRow row{1, first, first, 1.0, 1.0, 1.0};
  visit(row);
  for (std::uint64_t n = 1; n < n_max; ++n) {
    const double nd = static_cast<double>(n);
    const double r = 1.0 + beta / nd;  // mu_{n+1} / mu_n
    const double kappa = drift / nd;    // gamma_n - 1
    const double gamma = 1.0 + kappa;
    MomentRow next;
    next.n = n + 1;
    next.m_s = row.m_s + kappa * row.m_y / r;
    next.m_y = gamma * row.m_y / r;
    next.s_yy = (2.0 * gamma - 1.0) * row.s_yy / (r * r) + 1.0;
    next.s_ss = row.s_ss + 2.0 * kappa * row.s_sy / r + 1.0;
    next.s_sy = (gamma * row.s_sy + kappa * row.s_yy / r) / r + 1.0;
    row = next;
    visit(row);
  }
}

MomentTable moment_recurrence(const ModelParams& params,
                              std::span<const std::uint64_t> checkpoints) {
  std::vector<std::uint64_t> times(checkpoints.begin(), checkpoints.end());
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end()), times.end());
  if (!times.empty() && times.front() == 0) {
    throw ArgumentError("moment checkpoints must be >= 1");
  }
  MomentTable table;
  table.rows.reserve(times.size());
  if (times.empty()) {
    return table;
  }
  auto next = times.begin();
  for_each_moment(params, times.back(), [&](const MomentRow& row) {
    if (row.n == *next) {
      table.rows.push_back(row);
      ++next;
    }
  });
  return table;
}

void write_moment_csv(std::ostream& out, const MomentTable& table) {
  out << "n,m_S,var_S,m_Y,var_Y,cov_SY\n";
  for (const auto& row : table.rows) {
    out << row.n << ',' << format_double(row.m_s) << ','
        << format_double(row.var_s()) << ',' << format_double(row.m_y) << ','
        << format_double(row.var_y()) << ',' << format_double(row.cov_sy())
        << '\n';
  }
}

double position_cross_covariance(const ModelParams& params, std::uint64_t m,
                                 std::uint64_t n) {
  if (m == 0 || m > n) {
    throw ArgumentError("position_cross_covariance: need 1 <= m <= n");
  }
  const auto table = moment_recurrence(params, std::vector<std::uint64_t>{m});
  const auto& row = table.rows.front();
  const double beta = params.beta();
  const double drift = params.drift();
  // E[S_n | F_m] = S_m + gain * Y~_m with gain = sum_{k=m}^{n-1} (A/k) g_k,
  // g_k = mu_m prod_{j=m}^{k-1} gamma_j / mu_{k+1}.
  double g = static_cast<double>(m) / (static_cast<double>(m) + beta);
  double gain = 0.0;
  for (std::uint64_t k = m; k < n; ++k) {
    const double kd = static_cast<double>(k);
    gain += drift / kd * g;
    g *= (1.0 + drift / kd) * (kd + 1.0) / (kd + 1.0 + beta);
  }
  return row.var_s() + gain * row.cov_sy();
}

double expected_qsl(const ModelParams& params, std::uint64_t n,
                    Regime regime) {
  if (regime == Regime::Superdiffusive) {
    throw RegimeError("no quadratic strong law in the superdiffusive regime");
  }
  const bool critical = regime == Regime::Critical;
  if (n < (critical ? 3u : 2u)) {
    throw DomainError("expected_qsl: n too small for the log normalization");
  }
  double sum = 0.0;
  for_each_moment(params, n, [&](const MomentRow& row) {
    const double k = static_cast<double>(row.n);
    if (!critical) {
      sum += row.s_ss / (k * k);
    } else if (row.n >= 2) {
      const double d = k * std::log(k);
      sum += row.s_ss / (d * d);
    }
  });
  const double nd = static_cast<double>(n);
  return critical ? sum / std::log(std::log(nd)) : sum / std::log(nd);
}

double ExactLaw::prob_position(std::int64_t s) const {
  const auto nn = static_cast<std::int64_t>(n);
  if (s < -nn || s > nn || ((s + nn) & 1) != 0) {
    return 0.0;
  }
  return position_pmf[static_cast<std::size_t>((s + nn) / 2)];
}

MomentRow ExactLaw::moments(double beta) const {
  std::vector<double> mu(n + 1, 1.0);
  for (std::uint64_t k = 2; k <= n; ++k) {
    mu[k] = mu[k - 1] * (1.0 + beta / static_cast<double>(k - 1));
  }
  MomentRow row{n, 0.0, 0.0, 0.0, 0.0, 0.0};
  for (std::size_t mask = 0; mask < sequence_probability.size(); ++mask) {
    const double prob = sequence_probability[mask];
    if (prob == 0.0) {
      continue;
    }
    double s = 0.0;
    double y = 0.0;
    for (std::uint64_t i = 0; i < n; ++i) {
      const double x = (mask >> i) & 1u ? 1.0 : -1.0;
      s += x;
      y += x * mu[i + 1];
    }
    y /= mu[n];
    row.m_s += prob * s;
    row.m_y += prob * y;
    row.s_ss += prob * s * s;
    row.s_yy += prob * y * y;
    row.s_sy += prob * s * y;
  }
  return row;
}

namespace {

struct Enumerator {
  std::uint64_t n;
  double p;
  // pmf[t][k]: P(memory index = k) when choosing at time t+1.
  std::vector<std::vector<double>> pmf;
  std::vector<double>* out;

  void expand(std::uint64_t depth, std::uint64_t mask, double prob) {
    if (depth == n) {
      (*out)[mask] += prob;
      return;
    }
    for (std::uint64_t k = 1; k <= depth; ++k) {
      const bool remembered_up = (mask >> (k - 1)) & 1u;
      const double pk = prob * pmf[depth][k];
      for (int repeat = 0; repeat < 2; ++repeat) {
        const double branch = pk * (repeat ? p : 1.0 - p);
        if (branch == 0.0) {
          continue;
        }
        const bool up = repeat ? remembered_up : !remembered_up;
        expand(depth + 1, up ? mask | (std::uint64_t{1} << depth) : mask,
               branch);
      }
    }
  }
};

}  // namespace

ExactLaw enumerate(const ModelParams& params, std::uint64_t n) {
  if (n > kMaxEnumerate) {
    throw SizeError("enumerate: n = " + std::to_string(n) + " exceeds " +
                    std::to_string(kMaxEnumerate));
  }
  ExactLaw law;
  law.n = n;
  law.sequence_probability.assign(std::size_t{1} << n, 0.0);
  if (n == 0) {
    law.sequence_probability[0] = 1.0;
  } else {
    const double beta = params.beta();
    std::vector<double> mu(n + 1, 1.0);
    for (std::uint64_t k = 2; k <= n; ++k) {
      mu[k] = mu[k - 1] * (1.0 + beta / static_cast<double>(k - 1));
    }
    Enumerator e{n, params.p(), {}, &law.sequence_probability};
    e.pmf.resize(n);
    for (std::uint64_t t = 1; t < n; ++t) {
      e.pmf[t].assign(t + 1, 0.0);
      for (std::uint64_t k = 1; k <= t; ++k) {
        e.pmf[t][k] = (beta + 1.0) * mu[k] / (static_cast<double>(t) * mu[t + 1]);
      }
    }
    const double q = params.q();
    if (q > 0.0) e.expand(1, 1, q);
    if (q < 1.0) e.expand(1, 0, 1.0 - q);
  }
  law.position_pmf.assign(n + 1, 0.0);
  for (std::size_t mask = 0; mask < law.sequence_probability.size(); ++mask) {
    const auto ups = static_cast<std::size_t>(std::popcount(mask));
    law.position_pmf[ups] += law.sequence_probability[mask];
    law.total += law.sequence_probability[mask];
  }
  return law;
}

double w_diffusive_constant(const ModelParams& params) {
  const double drift = params.drift();
  const double beta = params.beta();
  const auto g_drift = log_gamma_signed(drift + 1.0);
  const auto g_beta = log_gamma_signed(beta + 1.0);
  return std::exp(2.0 * (g_drift.log_abs - g_beta.log_abs)) /
         (1.0 + 2.0 * (beta - drift));
}

WSummary w_sequence(const ModelParams& params, std::uint64_t n) {
  if (n == 0) {
    throw ArgumentError("w_sequence: n must be >= 1");
  }
  SequenceCache cache(params, static_cast<std::size_t>(n));
  // log-sum-exp accumulation of (a_k mu_k)^2.
  double log_w = -std::numeric_limits<double>::infinity();
  for (std::uint64_t k = 1; k <= n; ++k) {
    const double t = 2.0 * cache.log_a_mu(static_cast<std::size_t>(k)).log_abs;
    if (std::isinf(t) && t > 0) {
      log_w = t;
      break;
    }
    if (t > log_w) {
      log_w = t + std::log1p(std::exp(log_w - t));
    } else {
      log_w = log_w + std::log1p(std::exp(t - log_w));
    }
  }
  WSummary out{n, log_w, std::nullopt,
               std::numeric_limits<double>::quiet_NaN()};
  const double nd = static_cast<double>(n);
  const double beta = params.beta();
  const double excess = params.drift() - beta;
  switch (params.regime()) {
    case Regime::Diffusive: {
      const double log_limit = std::log(w_diffusive_constant(params)) +
                               (1.0 - 2.0 * excess) * std::log(nd);
      out.limit = std::exp(log_limit);
      out.ratio = std::exp(log_w - log_limit);
      break;
    }
    case Regime::Critical: {
      if (n >= 2) {
        const double c = std::exp(2.0 * (log_gamma_signed(beta + 1.5).log_abs -
                                         log_gamma_signed(beta + 1.0).log_abs));
        out.limit = c * std::log(nd);
        out.ratio = std::exp(log_w) / *out.limit;
      }
      break;
    }
    case Regime::Superdiffusive: {
      // (a_k mu_k)^2 ~ C^2 k^{-2 excess}, C = Gamma(a(beta+1)+1)/Gamma(beta+1)
      const double log_c2 =
          2.0 * (log_gamma_signed(params.drift() + 1.0).log_abs -
                 log_gamma_signed(beta + 1.0).log_abs);
      const double tail = std::exp(log_c2 + (1.0 - 2.0 * excess) * std::log(nd)) /
                          (2.0 * excess - 1.0);
      out.limit = std::exp(log_w) + tail;
      out.ratio = std::exp(log_w) / *out.limit;
      break;
    }
  }
  return out;
}

}  // namespace aerw
