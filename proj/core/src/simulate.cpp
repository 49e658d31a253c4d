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

#include "aerw/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>

#include "aerw/errors.hpp"
#include "aerw/format.hpp"

namespace aerw {

namespace {

void check_memory_range(std::size_t n, std::size_t k) {
  if (n == 0 || k == 0 || k > n) {
    throw ArgumentError("memory index k = " + std::to_string(k) +
                        " outside [1, " + std::to_string(n) + "]");
  }
}

void check_capacity(const SequenceCache& cache, std::size_t n) {
  if (cache.capacity() < n) {
    throw ArgumentError("sequence cache capacity " +
                        std::to_string(cache.capacity()) + " < " +
                        std::to_string(n));
  }
}

// Step n -> n+1 without capacity checks.
inline void advance(WalkState& st, RngStream& rng, double p, double q,
                    double beta, const SequenceCache& cache) {
  int x;
  if (st.n == 0) {
    x = rng.rademacher(q);
    st.y_scaled = x;
  } else {
    const double u = rng.uniform();
    const std::size_t k = memory_index_guided(cache, st.n, std::log(u));
    x = rng.rademacher(p) * st.signs[k];
    const double nd = static_cast<double>(st.n);
    // mu_n / mu_{n+1} = n / (n + beta)
    st.y_scaled = st.y_scaled * (nd / (nd + beta)) + x;
  }
  st.position += x;
  st.signs.push_back(x);
  ++st.n;
}

}  // namespace

double memory_pmf(const SequenceCache& cache, std::size_t n, std::size_t k) {
  check_memory_range(n, k);
  check_capacity(cache, n);
  return (cache.beta() + 1.0) / static_cast<double>(n) *
         std::exp(cache.log_mu(k) - cache.log_mu(n + 1));
}

double memory_pmf(std::size_t n, std::size_t k, double beta) {
  check_memory_range(n, k);
  const SequenceCache cache(ModelParams(0.5, 0.5, beta), n);
  return memory_pmf(cache, n, k);
}

double memory_cdf(const SequenceCache& cache, std::size_t n, std::size_t k) {
  check_memory_range(n, k);
  check_capacity(cache, n);
  if (k == n) {
    return 1.0;
  }
  return std::exp(cache.log_prefix(k) - cache.log_prefix(n));
}

double memory_cdf(std::size_t n, std::size_t k, double beta) {
  check_memory_range(n, k);
  const SequenceCache cache(ModelParams(0.5, 0.5, beta), n);
  return memory_cdf(cache, n, k);
}

std::size_t memory_index_bisect(const SequenceCache& cache, std::size_t n,
                                double log_u) {
  const double* lp = cache.log_prefix_data();
  const double threshold = std::min(log_u, 0.0) + lp[n];
  // Invariant: lp[lo] < threshold <= lp[hi], with lp[0] read as -inf.
  std::size_t lo = 0;
  std::size_t hi = n;
  while (hi - lo > 1) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (lp[mid] >= threshold) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

std::size_t memory_index_guided(const SequenceCache& cache, std::size_t n,
                                double log_u) {
  const double* lp = cache.log_prefix_data();
  const double threshold = std::min(log_u, 0.0) + lp[n];
  if (lp[1] >= threshold) {
    return 1;
  }
  // P(index <= k) ~ (k/n)^{beta+1}
  const double guess =
      static_cast<double>(n) * std::exp(log_u / (cache.beta() + 1.0));
  std::size_t k = guess < 2.0 ? 2 : static_cast<std::size_t>(std::ceil(guess));
  k = std::min(k, n);

  std::size_t lo;
  std::size_t hi;
  std::size_t stride = 1;
  if (lp[k] >= threshold) {
    hi = k;
    lo = k - 1;
    while (lp[lo] >= threshold) {  // lp[1] < threshold stops this
      hi = lo;
      stride *= 2;
      lo = hi > stride + 1 ? hi - stride : 1;
    }
  } else {
    lo = k;
    hi = std::min(k + 1, n);
    while (lp[hi] < threshold) {  // lp[n] >= threshold stops this
      lo = hi;
      stride *= 2;
      hi = std::min(lo + stride, n);
    }
  }
  while (hi - lo > 1) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (lp[mid] >= threshold) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

std::size_t sample_memory(std::size_t n, RngStream& rng,
                          const SequenceCache& cache) {
  if (n == 0) {
    throw ArgumentError("sample_memory: n must be >= 1");
  }
  check_capacity(cache, n);
  return memory_index_guided(cache, n, std::log(rng.uniform()));
}

std::size_t sample_memory(const WalkState& state, RngStream& rng,
                          const SequenceCache& cache) {
  return sample_memory(static_cast<std::size_t>(state.n), rng, cache);
}

void step(WalkState& state, RngStream& rng, const ModelParams& params,
          const SequenceCache& cache) {
  check_capacity(cache, state.n);
  advance(state, rng, params.p(), params.q(), params.beta(), cache);
}

CheckpointSchedule CheckpointSchedule::from_times(
    std::vector<std::uint64_t> times, std::uint64_t n_max) {
  for (const auto t : times) {
    if (t == 0 || t > n_max) {
      throw ArgumentError("checkpoint " + std::to_string(t) +
                          " outside [1, " + std::to_string(n_max) + "]");
    }
  }
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end()), times.end());
  CheckpointSchedule out;
  out.times_ = std::move(times);
  return out;
}

CheckpointSchedule CheckpointSchedule::geometric(std::uint64_t n_max) {
  std::vector<std::uint64_t> times;
  for (std::uint64_t t = 1; t <= n_max; t *= 2) {
    times.push_back(t);
    if (t > n_max / 2) break;
  }
  for (std::uint64_t t = 10; t <= n_max; t *= 10) {
    times.push_back(t);
    if (t > n_max / 10) break;
  }
  if (n_max > 0) {
    times.push_back(n_max);
  }
  return from_times(std::move(times), n_max);
}

CheckpointSchedule CheckpointSchedule::every(std::uint64_t stride,
                                             std::uint64_t n_max) {
  if (stride == 0) {
    throw ArgumentError("checkpoint stride must be >= 1");
  }
  std::vector<std::uint64_t> times;
  for (std::uint64_t t = stride; t <= n_max; t += stride) {
    times.push_back(t);
  }
  if (n_max > 0) {
    times.push_back(n_max);
  }
  return from_times(std::move(times), n_max);
}

CheckpointSchedule CheckpointSchedule::final_only(std::uint64_t n_max) {
  if (n_max == 0) {
    return {};
  }
  return from_times({n_max}, n_max);
}

Trajectory run_path(const ModelParams& params, std::uint64_t n_max,
                    const CheckpointSchedule& schedule,
                    const RunOptions& options, RngStream& rng,
                    const SequenceCache& cache) {
  check_capacity(cache, static_cast<std::size_t>(n_max));
  const auto times = schedule.times();
  if (!times.empty() && times.back() > n_max) {
    throw ArgumentError("checkpoint schedule exceeds n_max");
  }

  Trajectory traj;
  traj.diagnostics = options.diagnostics;
  traj.functionals = options.functionals;
  traj.checkpoints.reserve(times.size());

  double n_coef = 0.0;
  if (options.diagnostics) {
    n_coef = params.n_coefficient();
    const auto vanish = cache.vanishing_gamma();
    if (vanish && !times.empty() && *vanish < times.back()) {
      throw DomainError("a_n is infinite beyond n = " +
                        std::to_string(*vanish) +
                        " (gamma vanishes); M_n diagnostics unavailable");
    }
  }

  const double p = params.p();
  const double q = params.q();
  const double beta = params.beta();
  const bool track_diff = options.functionals & kQslDiffusive;
  const bool track_crit = options.functionals & kQslCritical;
  const bool track_lil = options.functionals & kLilMax;

  WalkState st;
  st.signs.reserve(static_cast<std::size_t>(n_max));
  auto next = times.begin();
  PathFunctionals& sums = traj.sums;

  while (st.n < n_max) {
    advance(st, rng, p, q, beta, cache);
    const double k = static_cast<double>(st.n);
    const double s = static_cast<double>(st.position);
    if (track_diff) {
      const double r = s / k;
      sums.qsl_diffusive_sum += r * r;
    }
    if (track_crit || track_lil) {
      const double lk = std::log(k);
      if (track_crit && st.n >= 2) {
        const double r = s / (k * lk);
        sums.qsl_critical_sum += r * r;
      }
      if (track_lil && st.n >= 16) {
        const double v = s * s / (2.0 * k * lk * std::log(std::log(lk)));
        if (v > sums.lil_max) {
          sums.lil_max = v;
          sums.lil_argmax = st.n;
        }
      }
    }
    if (next != times.end() && *next == st.n) {
      Checkpoint cp{st.n, st.position, st.y_scaled};
      if (options.diagnostics) {
        cp.m = cache.log_a_mu(static_cast<std::size_t>(st.n)).value() *
               st.y_scaled;
        cp.n_mart = s + n_coef * st.y_scaled;
      }
      traj.checkpoints.push_back(cp);
      ++next;
    }
  }
  traj.n = st.n;
  traj.position = st.position;
  traj.y_scaled = st.y_scaled;
  return traj;
}

Trajectory run_path(const ModelParams& params, std::uint64_t n_max,
                    const CheckpointSchedule& schedule,
                    const RunOptions& options, RngStream& rng,
                    SequenceCache& cache) {
  cache.reserve(static_cast<std::size_t>(n_max));
  return run_path(params, n_max, schedule, options, rng,
                  static_cast<const SequenceCache&>(cache));
}

double qsl_functional(const Trajectory& traj, Regime regime) {
  const double n = static_cast<double>(traj.n);
  switch (regime) {
    case Regime::Diffusive:
      if (!(traj.functionals & kQslDiffusive)) {
        throw ArgumentError("trajectory was run without the diffusive QSL sum");
      }
      if (traj.n < 2) {
        throw DomainError("diffusive QSL functional needs n >= 2");
      }
      return traj.sums.qsl_diffusive_sum / std::log(n);
    case Regime::Critical:
      if (!(traj.functionals & kQslCritical)) {
        throw ArgumentError("trajectory was run without the critical QSL sum");
      }
      if (traj.n < 3) {
        throw DomainError("critical QSL functional needs n >= 3");
      }
      return traj.sums.qsl_critical_sum / std::log(std::log(n));
    case Regime::Superdiffusive:
      break;
  }
  throw RegimeError("no quadratic strong law in the superdiffusive regime");
}

double lil_statistic(std::uint64_t n, std::int64_t position) {
  if (n < 16) {
    throw DomainError("LIL statistic needs n >= 16 (log log log n > 0)");
  }
  const double k = static_cast<double>(n);
  const double s = static_cast<double>(position);
  const double lk = std::log(k);
  return s * s / (2.0 * k * lk * std::log(std::log(lk)));
}

double lil_statistic(const Trajectory& traj) {
  return lil_statistic(traj.n, traj.position);
}

void write_trajectory_csv(std::ostream& out, const Trajectory& traj) {
  out << (traj.diagnostics ? "n,S,Y_scaled,M,N\n" : "n,S,Y_scaled\n");
  for (const auto& cp : traj.checkpoints) {
    out << cp.n << ',' << cp.position << ',' << format_double(cp.y_scaled);
    if (traj.diagnostics) {
      out << ',' << format_double(cp.m) << ',' << format_double(cp.n_mart);
    }
    out << '\n';
  }
}

}  // namespace aerw
