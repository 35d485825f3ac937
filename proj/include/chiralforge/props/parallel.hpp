// Copyright 2026 The ChiralForge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
// Deterministic task-parallel map: tasks are partitioned by index, workers
// produce per-task results into a preallocated slot array, and the caller
// reduces in index order.  Output is therefore identical for any job count.

#ifndef CHIRALFORGE_PROPS_PARALLEL_HPP
#define CHIRALFORGE_PROPS_PARALLEL_HPP

#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace chiralforge::props {

// Runs body(i) for i in [0, count) on up to `jobs` threads.  Exceptions are
// captured and the first one (by task index) is rethrown after all workers
// join, so a TruncationOverflow or ConfigError surfaces deterministically.
inline void parallel_for(std::size_t count, int jobs,
                         const std::function<void(std::size_t)>& body) {
  if (jobs < 1) jobs = 1;
  std::size_t workers =
      std::min<std::size_t>(static_cast<std::size_t>(jobs), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }

  std::vector<std::exception_ptr> errors(count);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  std::mutex next_mutex;
  std::size_t next = 0;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&]() {
      for (;;) {
        std::size_t i;
        {
          std::lock_guard<std::mutex> lock(next_mutex);
          if (next >= count) return;
          i = next++;
        }
        try {
          body(i);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  for (std::size_t i = 0; i < count; ++i) {
    if (errors[i]) std::rethrow_exception(errors[i]);
  }
}

}  // namespace chiralforge::props

#endif  // CHIRALFORGE_PROPS_PARALLEL_HPP
