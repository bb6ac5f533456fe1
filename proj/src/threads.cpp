#include "swlab/threads.hpp"

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace swlab {

int worker_thread_count() {
  static const int count = [] {
    const char* env = std::getenv("SWLAB_THREADS");
    int want = 1;
    if (env && *env) {
      try {
        want = std::stoi(env);
      } catch (const std::exception&) {
        want = 1;
      }
    }
    const int hw = static_cast<int>(std::thread::hardware_concurrency());
    const int cap = hw > 0 ? hw : 1;
    if (want < 1) want = 1;
    if (want > cap) want = cap;
    return want;
  }();
  return count;
}

void parallel_for(std::int64_t n, const std::function<void(std::int64_t)>& fn) {
  if (n <= 0) return;
  const int workers = worker_thread_count();
  if (workers == 1 || n == 1) {
    for (std::int64_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::int64_t> next{0};
  std::vector<std::thread> pool;
  std::atomic<bool> failed{false};
  auto run = [&] {
    for (;;) {
      const std::int64_t i = next.fetch_add(1);
      if (i >= n || failed.load()) return;
      try {
        fn(i);
      } catch (...) {
        failed.store(true);
        return;
      }
    }
  };
  const int spawn = static_cast<int>(std::min<std::int64_t>(workers, n));
  pool.reserve(spawn);
  for (int t = 0; t < spawn; ++t) pool.emplace_back(run);
  for (auto& th : pool) th.join();
  if (failed.load()) {
    throw std::runtime_error("parallel_for: a worker task threw");
  }
}

}  // namespace swlab
