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
#include <stdexcept>
#include <string>
#include <vector>

#include "aerw/kernel.hpp"
#include "aerw/simulate.hpp"

namespace aerw::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitDomain = 3;

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Everything a command needs. Text form is one key=value per line; the JSON
// form is a flat object with the same keys.
struct RunConfig {
  double p = 0.5;
  double q = 0.5;
  double beta = 0.0;
  std::string regime;  // empty: classify from p and beta
  std::uint64_t n = 1000;
  std::uint64_t paths = 1000;
  std::uint64_t seed = 1;
  std::uint64_t stream = 0;
  std::string checkpoints = "geometric";  // geometric | final | every:K | list:a,b,..
  std::string out = "-";
  std::string summary;
  std::string ledger;
  std::vector<std::string> campaigns;  // empty: every campaign
  unsigned threads = 0;                // 0: AERW_THREADS or hardware
  bool diagnostics = false;
  std::string preset;  // empty | quick | full

  ModelParams params() const;
  unsigned thread_count() const;
  CheckpointSchedule schedule() const;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);
std::string to_key_value(const RunConfig& config);
std::string to_json_text(const RunConfig& config);

CheckpointSchedule parse_checkpoints(const std::string& spec,
                                     std::uint64_t n_max);

// Campaign names accepted by verify, in execution order.
const std::vector<std::string>& campaign_names();

// Writes through a temporary file renamed into place; "-" or "" means the
// given stream. The temporary is removed if fill throws.
void write_output(const std::string& path, std::ostream& fallback,
                  const std::function<void(std::ostream&)>& fill);

// Full command line entry point; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err);

}  // namespace aerw::cli
