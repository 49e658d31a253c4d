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
#include <functional>

namespace aerw {

// Runs body(i) for i in [0, tasks) on up to `threads` workers. Tasks are
// handed out dynamically; the first exception thrown by any task is
// rethrown after all workers have joined.
void parallel_for(std::size_t tasks, unsigned threads,
                  const std::function<void(std::size_t)>& body);

// Thread count from AERW_THREADS, else hardware concurrency (at least 1).
unsigned default_thread_count();

}  // namespace aerw
