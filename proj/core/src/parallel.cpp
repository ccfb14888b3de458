#include "ballproj/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <thread>
#include <vector>

namespace ballproj {

namespace {
std::atomic<unsigned> g_thread_count{1};
}

void set_thread_count(unsigned count) {
  g_thread_count.store(count == 0 ? 1 : count);
}

unsigned thread_count() { return g_thread_count.load(); }

void parallel_chunks(
    std::size_t count,
    const std::function<void(std::size_t, std::size_t)>& body) {
  const unsigned workers =
      static_cast<unsigned>(std::min<std::size_t>(thread_count(), count));
  if (workers <= 1 || count < 2) {
    body(0, count);
    return;
  }
  const std::size_t chunk = (count + workers - 1) / workers;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    const std::size_t begin = std::min(count, w * chunk);
    const std::size_t end = std::min(count, begin + chunk);
    if (begin == end) break;
    pool.emplace_back([&body, begin, end] { body(begin, end); });
  }
  for (auto& t : pool) t.join();
}

}  // namespace ballproj
