#include "qch/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <thread>
#include <vector>

namespace qch {

unsigned worker_count() {
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("QCH_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && v > 0) return std::min<unsigned>(static_cast<unsigned>(v), hw);
  }
  return hw;
}

void parallel_for_chunks(std::size_t n,
                         const std::function<void(std::size_t, std::size_t)>& body) {
  if (n == 0) return;
  const std::size_t workers = std::min<std::size_t>(worker_count(), n);
  if (workers <= 1) {
    body(0, n);
    return;
  }
  const std::size_t chunk = (n + workers - 1) / workers;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t b = w * chunk;
    const std::size_t e = std::min(n, b + chunk);
    if (b >= e) break;
    pool.emplace_back([&body, b, e] { body(b, e); });
  }
  for (auto& t : pool) t.join();
}

MaxResult parallel_max(std::size_t n, const std::function<double(std::size_t)>& f) {
  const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(worker_count(), n));
  std::vector<MaxResult> partial(workers);
  const std::size_t chunk = n == 0 ? 0 : (n + workers - 1) / workers;
  parallel_for_chunks(workers, [&](std::size_t wb, std::size_t we) {
    for (std::size_t w = wb; w < we; ++w) {
      MaxResult best;
      const std::size_t b = w * chunk;
      const std::size_t e = std::min(n, b + chunk);
      for (std::size_t i = b; i < e; ++i) {
        const double v = f(i);
        if (v > best.value) best = {v, i};
      }
      partial[w] = best;
    }
  });
  MaxResult best;
  for (const auto& p : partial) {
    if (p.value > best.value || (p.value == best.value && p.index < best.index)) best = p;
  }
  return best;
}

}  // namespace qch
