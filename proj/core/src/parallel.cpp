#include "quasispec/parallel.hpp"

#include <atomic>
#include <exception>
#include <thread>
#include <vector>

namespace quasispec {

namespace {
std::atomic<unsigned> g_limit{0};
thread_local bool inside_parallel = false;
}  // namespace

void set_thread_limit(unsigned n) { g_limit.store(n); }

unsigned thread_limit() {
  const unsigned n = g_limit.load();
  if (n != 0) return n;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw ? hw : 1;
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn) {
  if (count == 0) return;
  const std::size_t workers =
      inside_parallel ? 1 : std::min<std::size_t>(thread_limit(), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }

  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    // Contiguous blocks: worker w gets [lo, hi). Block layout depends only on
    // (count, workers); per-index work is independent, so any worker count
    // computes identical slot values.
    const std::size_t lo = count * w / workers;
    const std::size_t hi = count * (w + 1) / workers;
    pool.emplace_back([&, lo, hi, w] {
      inside_parallel = true;
      try {
        for (std::size_t i = lo; i < hi; ++i) fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
      inside_parallel = false;
    });
  }
  for (auto& t : pool) t.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);  // lowest block first: deterministic
}

}  // namespace quasispec
