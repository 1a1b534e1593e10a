#pragma once

#include <Eigen/Core>

#include <atomic>
#include <functional>
#include <thread>
#include <vector>

namespace spoamp {

inline int resolve_threads(int requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

/// Runs fn(0..n_tasks-1) across at most `threads` workers. Tasks must be
/// independent; callers store results by task index so the outcome does not
/// depend on scheduling.
inline void parallel_for(Eigen::Index n_tasks,
                         const std::function<void(Eigen::Index)>& fn,
                         int threads = 0) {
  const int workers = std::min<Eigen::Index>(resolve_threads(threads), n_tasks);
  if (workers <= 1) {
    for (Eigen::Index i = 0; i < n_tasks; ++i) fn(i);
    return;
  }
  std::atomic<Eigen::Index> next{0};
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (Eigen::Index i = next.fetch_add(1); i < n_tasks; i = next.fetch_add(1))
        fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace spoamp
