#pragma once

#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace minimax {

/// Worker cap: MINIMAX_SAMPLER_THREADS when set (>=1), else hardware
/// concurrency, else 1.
inline unsigned worker_count() {
  if (const char* env = std::getenv("MINIMAX_SAMPLER_THREADS")) {
    const long parsed = std::strtol(env, nullptr, 10);
    if (parsed >= 1) return static_cast<unsigned>(parsed);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? hw : 1;
}

/// Runs run_block(0..n_blocks-1), each exactly once, across up to
/// worker_count() threads. Blocks must write to disjoint state; any
/// cross-block reduction is the caller's job and should iterate blocks in
/// index order so results do not depend on scheduling.
inline void parallel_blocks(std::size_t n_blocks, const std::function<void(std::size_t)>& run_block) {
  const unsigned workers = std::min<std::size_t>(worker_count(), n_blocks);
  if (workers <= 1) {
    for (std::size_t b = 0; b < n_blocks; ++b) run_block(b);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      while (true) {
        const std::size_t b = next.fetch_add(1);
        if (b >= n_blocks) return;
        run_block(b);
      }
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace minimax
