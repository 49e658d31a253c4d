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
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "aerw/kernel.hpp"
#include "aerw/rng.hpp"

namespace aerw {

// P(memory index = k) at time n+1: (beta+1) mu_k / (n mu_{n+1}), 1 <= k <= n.
double memory_pmf(const SequenceCache& cache, std::size_t n, std::size_t k);
double memory_pmf(std::size_t n, std::size_t k, double beta);

// P(memory index <= k) at time n+1: k mu_{k+1} / (n mu_{n+1}).
double memory_cdf(const SequenceCache& cache, std::size_t n, std::size_t k);
double memory_cdf(std::size_t n, std::size_t k, double beta);

// Smallest k in [1, n] with log_prefix[k] >= log_u + log_prefix[n]. Both
// searches return the same index; the guided one starts from the
// continuum approximation k ~ n u^{1/(beta+1)} and gallops from there.
std::size_t memory_index_bisect(const SequenceCache& cache, std::size_t n,
                                double log_u);
std::size_t memory_index_guided(const SequenceCache& cache, std::size_t n,
                                double log_u);

// One-bit-per-step record of X_1, X_2, ...
class PackedSigns {
 public:
  void reserve(std::size_t steps) { words_.reserve(steps / 64 + 1); }
  void clear() {
    words_.clear();
    size_ = 0;
  }
  std::size_t size() const { return size_; }

  void push_back(int sign) {
    if ((size_ & 63u) == 0) {
      words_.push_back(0);
    }
    if (sign > 0) {
      words_.back() |= std::uint64_t{1} << (size_ & 63u);
    }
    ++size_;
  }

  // X_k for 1 <= k <= size().
  int operator[](std::size_t k) const {
    const std::size_t i = k - 1;
    return ((words_[i >> 6] >> (i & 63u)) & 1u) ? 1 : -1;
  }

 private:
  std::vector<std::uint64_t> words_;
  std::size_t size_ = 0;
};

struct WalkState {
  std::uint64_t n = 0;
  std::int64_t position = 0;  // S_n
  double y_scaled = 0.0;      // Y_n / mu_n
  PackedSigns signs;
};

// Draws the memory index for step n+1 (n >= 1). Consumes one uniform.
std::size_t sample_memory(std::size_t n, RngStream& rng,
                          const SequenceCache& cache);
std::size_t sample_memory(const WalkState& state, RngStream& rng,
                          const SequenceCache& cache);

// Advances the walk by one step. The cache must cover state.n.
void step(WalkState& state, RngStream& rng, const ModelParams& params,
          const SequenceCache& cache);

// Sorted, duplicate-free list of times at which a trajectory is recorded.
class CheckpointSchedule {
 public:
  CheckpointSchedule() = default;

  // Validates 1 <= t <= n_max, then sorts and removes duplicates.
  static CheckpointSchedule from_times(std::vector<std::uint64_t> times,
                                       std::uint64_t n_max);
  // Powers of two and powers of ten up to n_max, plus n_max itself.
  static CheckpointSchedule geometric(std::uint64_t n_max);
  // stride, 2 stride, ..., plus n_max.
  static CheckpointSchedule every(std::uint64_t stride, std::uint64_t n_max);
  static CheckpointSchedule final_only(std::uint64_t n_max);

  std::span<const std::uint64_t> times() const { return times_; }
  bool empty() const { return times_.empty(); }

 private:
  std::vector<std::uint64_t> times_;
};

enum Functionals : unsigned {
  kNoFunctionals = 0,
  kQslDiffusive = 1u << 0,  // sum_{k>=1} S_k^2 / k^2
  kQslCritical = 1u << 1,   // sum_{k>=2} S_k^2 / (k log k)^2
  kLilMax = 1u << 2,        // running max of the LIL statistic, k >= 16
  kAllFunctionals = kQslDiffusive | kQslCritical | kLilMax,
};

struct RunOptions {
  bool diagnostics = false;  // record M_n and N_n at checkpoints
  unsigned functionals = kNoFunctionals;
};

struct Checkpoint {
  std::uint64_t n;
  std::int64_t position;
  double y_scaled;
  double m = 0.0;  // M_n = a_n mu_n Y~_n (diagnostics only)
  double n_mart = 0.0;  // N_n = S_n + c Y~_n (diagnostics only)

  friend bool operator==(const Checkpoint&, const Checkpoint&) = default;
};

struct PathFunctionals {
  double qsl_diffusive_sum = 0.0;
  double qsl_critical_sum = 0.0;
  double lil_max = 0.0;
  std::uint64_t lil_argmax = 0;

  friend bool operator==(const PathFunctionals&,
                         const PathFunctionals&) = default;
};

struct Trajectory {
  std::vector<Checkpoint> checkpoints;
  bool diagnostics = false;
  unsigned functionals = kNoFunctionals;
  PathFunctionals sums;
  std::uint64_t n = 0;
  std::int64_t position = 0;
  double y_scaled = 0.0;

  friend bool operator==(const Trajectory&, const Trajectory&) = default;
};

// Simulates steps 1..n_max. The cache must cover n_max; the overload taking
// a mutable cache extends it first. Throws SingularityError when
// diagnostics are requested on the singular line and DomainError when a_n
// is infinite (some gamma_k = 0) within the horizon.
Trajectory run_path(const ModelParams& params, std::uint64_t n_max,
                    const CheckpointSchedule& schedule,
                    const RunOptions& options, RngStream& rng,
                    const SequenceCache& cache);
Trajectory run_path(const ModelParams& params, std::uint64_t n_max,
                    const CheckpointSchedule& schedule,
                    const RunOptions& options, RngStream& rng,
                    SequenceCache& cache);

// Diffusive: (1/log n) sum S_k^2/k^2. Critical: (1/log log n) sum_{k>=2}
// S_k^2/(k log k)^2. Superdiffusive requests throw RegimeError.
double qsl_functional(const Trajectory& traj, Regime regime);

// S_n^2 / (2 n log n log log log n); requires n >= 16.
double lil_statistic(std::uint64_t n, std::int64_t position);
double lil_statistic(const Trajectory& traj);

// CSV with header n,S,Y_scaled[,M,N].
void write_trajectory_csv(std::ostream& out, const Trajectory& traj);

}  // namespace aerw
