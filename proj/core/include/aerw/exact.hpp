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
#include <vector>

#include "aerw/kernel.hpp"

namespace aerw {

// Exact first and second moments at time n, in mu-scaled coordinates.
struct MomentRow {
  std::uint64_t n;
  double m_s;   // E[S_n]
  double m_y;   // E[Y_n] / mu_n
  double s_ss;  // E[S_n^2]
  double s_yy;  // E[Y_n^2] / mu_n^2
  double s_sy;  // E[S_n Y_n] / mu_n

  double var_s() const { return s_ss - m_s * m_s; }
  double var_y() const { return s_yy - m_y * m_y; }
  double cov_sy() const { return s_sy - m_s * m_y; }
};

struct MomentTable {
  std::vector<MomentRow> rows;

  // Row for time n; throws ArgumentError if n was not requested.
  const MomentRow& at(std::uint64_t n) const;
};

// Streams the exact moments for n = 1..n_max. With c_n = a(beta+1)/(n mu_{n+1}),
// gamma_n = 1 + a(beta+1)/n and X^2 = 1:
//
//   E[S_{n+1}]       = E[S_n] + c_n E[Y_n]
//   E[Y_{n+1}]       = gamma_n E[Y_n]
//   E[Y_{n+1}^2]     = (2 gamma_n - 1) E[Y_n^2] + mu_{n+1}^2
//   E[S_{n+1}^2]     = E[S_n^2] + 2 c_n E[S_n Y_n] + 1
//   E[S_{n+1}Y_{n+1}] = gamma_n E[S_n Y_n] + c_n E[Y_n^2] + mu_{n+1}
//
// carried after dividing by the matching power of mu.
void for_each_moment(const ModelParams& params, std::uint64_t n_max,
                     const std::function<void(const MomentRow&)>& visit);

// Rows at the requested times (any order, duplicates dropped, all >= 1).
MomentTable moment_recurrence(const ModelParams& params,
                              std::span<const std::uint64_t> checkpoints);

// Columns n,m_S,var_S,m_Y,var_Y,cov_SY.
void write_moment_csv(std::ostream& out, const MomentTable& table);

// Exact Cov(S_m, S_n) for 1 <= m <= n, from
// E[S_n | F_m] = S_m + Y_m sum_{k=m}^{n-1} c_k prod_{j=m}^{k-1} gamma_j.
double position_cross_covariance(const ModelParams& params, std::uint64_t m,
                                 std::uint64_t n);

// E of the QSL functional at n: (1/log n) sum E[S_k^2]/k^2 (diffusive) or
// (1/log log n) sum_{k>=2} E[S_k^2]/(k log k)^2 (critical).
double expected_qsl(const ModelParams& params, std::uint64_t n, Regime regime);

inline constexpr std::uint64_t kMaxEnumerate = 8;

// Exact law of (X_1, ..., X_n) by exhaustive expansion over every memory
// choice and every repeat/flip decision.
struct ExactLaw {
  std::uint64_t n = 0;
  // Indexed by sign mask: bit i set means X_{i+1} = +1.
  std::vector<double> sequence_probability;
  // Indexed by (S_n + n) / 2.
  std::vector<double> position_pmf;
  double total = 0.0;

  double prob_position(std::int64_t s) const;
  // Same layout as MomentTable rows, computed by direct summation.
  MomentRow moments(double beta) const;
};

// Throws SizeError for n > kMaxEnumerate.
ExactLaw enumerate(const ModelParams& params, std::uint64_t n);

struct WSummary {
  std::uint64_t n;
  double log_w;                 // log w_n, w_n = sum_{k<=n} (a_k mu_k)^2
  std::optional<double> limit;  // regime limit expression at n
  double ratio;                 // w_n / limit (NaN when no limit)
};

// w_n with its regime comparison: l n^{1-2(a(beta+1)-beta)} (diffusive),
// (Gamma(beta+3/2)/Gamma(beta+1))^2 log n (critical), and in the
// superdiffusive regime the partial sum plus an asymptotic tail estimate.
WSummary w_sequence(const ModelParams& params, std::uint64_t n);

// The diffusive constant l.
double w_diffusive_constant(const ModelParams& params);

}  // namespace aerw
