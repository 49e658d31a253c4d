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

#include <array>
#include <cstdint>

namespace aerw {

// Philox4x32-10 block function (Salmon et al., SC'11).
using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

constexpr PhiloxCounter philox4x32(PhiloxCounter ctr, PhiloxKey key) {
  constexpr std::uint32_t kM0 = 0xD2511F53u;
  constexpr std::uint32_t kM1 = 0xCD9E8D57u;
  constexpr std::uint32_t kW0 = 0x9E3779B9u;
  constexpr std::uint32_t kW1 = 0xBB67AE85u;
  for (int round = 0; round < 10; ++round) {
    const std::uint64_t p0 = static_cast<std::uint64_t>(kM0) * ctr[0];
    const std::uint64_t p1 = static_cast<std::uint64_t>(kM1) * ctr[2];
    const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
    const auto lo0 = static_cast<std::uint32_t>(p0);
    const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
    const auto lo1 = static_cast<std::uint32_t>(p1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    key[0] += kW0;
    key[1] += kW1;
  }
  return ctr;
}

// Stream of random bits addressed by (master_seed, stream_id, position).
//
// Block i of stream s under seed m is philox4x32({i_lo, i_hi, s_lo, s_hi},
// {m_lo, m_hi}); each block yields two 64-bit words. The output is a pure
// function of those three integers, so paths can be generated in any order
// on any number of threads.
class RngStream {
 public:
  RngStream(std::uint64_t master_seed, std::uint64_t stream_id)
      : key_{static_cast<std::uint32_t>(master_seed),
             static_cast<std::uint32_t>(master_seed >> 32)},
        stream_id_(stream_id),
        master_seed_(master_seed) {}

  std::uint64_t master_seed() const { return master_seed_; }
  std::uint64_t stream_id() const { return stream_id_; }
  // Number of 64-bit words consumed so far.
  std::uint64_t position() const { return 2 * block_ - (buffered_ ? 1 : 0); }

  std::uint64_t next_u64() {
    if (buffered_) {
      buffered_ = false;
      return spare_;
    }
    const PhiloxCounter out = philox4x32(
        {static_cast<std::uint32_t>(block_),
         static_cast<std::uint32_t>(block_ >> 32),
         static_cast<std::uint32_t>(stream_id_),
         static_cast<std::uint32_t>(stream_id_ >> 32)},
        key_);
    ++block_;
    spare_ = (static_cast<std::uint64_t>(out[3]) << 32) | out[2];
    buffered_ = true;
    return (static_cast<std::uint64_t>(out[1]) << 32) | out[0];
  }

  // Uniform on [0, 1) with 53 random bits.
  double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // +1 with probability prob, -1 otherwise.
  int rademacher(double prob) { return uniform() < prob ? 1 : -1; }

 private:
  PhiloxKey key_;
  std::uint64_t stream_id_;
  std::uint64_t master_seed_;
  std::uint64_t block_ = 0;
  std::uint64_t spare_ = 0;
  bool buffered_ = false;
};

}  // namespace aerw
