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

#include "aerw/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace aerw {

void parallel_for(std::size_t tasks, unsigned threads,
                  const std::function<void(std::size_t)>& body) {
  const std::size_t workers =
      std::min<std::size_t>(std::max(threads, 1u), tasks);
  if (workers <= 1) {
    for (std::size_t i = 0; i < tasks; ++i) {
      body(i);
    }
    return;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        while (!failed.load(std::memory_order_relaxed)) {
          const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
          if (i >= tasks) {
            return;
          }
          try {
            body(i);
          } catch (...) {
            std::lock_guard lock(error_mutex);
            if (!error) {
              error = std::current_exception();
            }
            failed = true;
          }
        }
      });
    }
  }
  if (error) {
    std::rethrow_exception(error);
  }
}

unsigned default_thread_count() {
  if (const char* env = std::getenv("AERW_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v >= 1) {
        return static_cast<unsigned>(v);
      }
    } catch (const std::exception&) {
      // fall through to hardware concurrency
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace aerw
