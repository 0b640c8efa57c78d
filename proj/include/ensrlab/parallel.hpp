// Copyright 2026 The ensrlab Authors
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

#ifndef ENSRLAB_PARALLEL_HPP_
#define ENSRLAB_PARALLEL_HPP_

#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace ensrlab {

// Thread budget: explicit request, else ENSRLAB_THREADS, else hardware.
inline int resolve_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("ENSRLAB_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

// Runs fn(chunk_index, begin, end) over [0, total) split into contiguous
// chunks, one per worker. Each chunk is sequential, so a caller that merges
// per-chunk results in chunk order gets the same answer as a serial run.
inline void parallel_chunks(
    std::size_t total, int threads,
    const std::function<void(std::size_t, std::size_t, std::size_t)>& fn) {
  const int n = std::max(1, std::min<int>(resolve_threads(threads),
                                          static_cast<int>(total ? total : 1)));
  if (n == 1) {
    fn(0, 0, total);
    return;
  }
  std::vector<std::thread> workers;
  const std::size_t per = (total + n - 1) / n;
  for (int c = 0; c < n; ++c) {
    const std::size_t begin = per * static_cast<std::size_t>(c);
    const std::size_t end = std::min(total, begin + per);
    if (begin >= end) break;
    workers.emplace_back([&fn, c, begin, end] {
      fn(static_cast<std::size_t>(c), begin, end);
    });
  }
  for (auto& w : workers) w.join();
}

}  // namespace ensrlab

#endif  // ENSRLAB_PARALLEL_HPP_
