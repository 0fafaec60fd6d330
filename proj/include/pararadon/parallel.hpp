#pragma once

#include <Eigen/Core>

#include <algorithm>
#include <thread>
#include <vector>

namespace pararadon {

using Index = Eigen::Index;

/// Worker count used by the data-parallel kernels. Defaults to the value of
/// PARARADON_THREADS, or 1 when unset.
int num_threads();
void set_num_threads(int n);

/// Runs body(begin, end) over contiguous blocks of [0, n). Each index is
/// visited exactly once; callers keep per-index work independent so results
/// do not depend on the worker count.
template <class Body>
void parallel_for(Index n, Body&& body) {
  const Index workers = std::min<Index>(num_threads(), n);
  if (workers <= 1) {
    body(Index{0}, n);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  const Index block = (n + workers - 1) / workers;
  for (Index w = 0; w < workers; ++w) {
    const Index begin = w * block;
    const Index end = std::min(n, begin + block);
    if (begin >= end) break;
    pool.emplace_back([&body, begin, end] { body(begin, end); });
  }
  for (auto& t : pool) t.join();
}

}  // namespace pararadon
