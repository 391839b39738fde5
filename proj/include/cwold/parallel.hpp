// Deterministic block-parallel helper. Work is split into a FIXED number of
// blocks independent of the thread count; blocks write to disjoint slots and
// reductions run in block order, so results are identical for any --threads.
#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace cwold {

inline int resolve_threads(int requested) {
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (requested <= 0) return static_cast<int>(hw);
  return static_cast<int>(std::min<unsigned>(static_cast<unsigned>(requested), hw));
}

// fn(block) is called once for every block in [0, nblocks); blocks are
// distributed round-robin over `threads` workers.
template <class F>
void parallel_blocks(std::size_t nblocks, int threads, F&& fn) {
  threads = std::max(1, threads);
  if (threads == 1 || nblocks <= 1) {
    for (std::size_t b = 0; b < nblocks; ++b) fn(b);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(threads));
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&fn, nblocks, t, threads] {
      for (std::size_t b = static_cast<std::size_t>(t); b < nblocks;
           b += static_cast<std::size_t>(threads))
        fn(b);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace cwold
