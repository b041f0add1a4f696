#include <doctest.h>

#include <atomic>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "quasispec/parallel.hpp"

using namespace quasispec;

namespace {
// Restore the default cap even when a CHECK fails mid-test.
struct LimitGuard {
  ~LimitGuard() { set_thread_limit(0); }
};
}  // namespace

TEST_CASE("thread limit roundtrip") {
  LimitGuard guard;
  set_thread_limit(3);
  CHECK(thread_limit() == 3);
  set_thread_limit(0);
  CHECK(thread_limit() >= 1);  // hardware concurrency, at least one
}

TEST_CASE("per-slot fills are identical across thread counts") {
  LimitGuard guard;
  const std::size_t n = 1537;  // deliberately not a multiple of the worker count
  auto fill = [&](unsigned workers) {
    set_thread_limit(workers);
    std::vector<double> out(n);
    parallel_for(n, [&](std::size_t i) {
      out[i] = std::sin(0.001 * static_cast<double>(i)) + static_cast<double>(i);
    });
    return out;
  };
  const auto a = fill(1);
  const auto b = fill(8);
  CHECK(a == b);  // bitwise: same slot gets the same arithmetic regardless of split
}

TEST_CASE("every index runs exactly once") {
  LimitGuard guard;
  set_thread_limit(5);
  const std::size_t n = 997;
  std::vector<std::atomic<int>> hits(n);
  parallel_for(n, [&](std::size_t i) { hits[i].fetch_add(1); });
  for (std::size_t i = 0; i < n; ++i) CHECK(hits[i].load() == 1);
  parallel_for(0, [&](std::size_t) { FAIL("must not be called for count 0"); });
}

TEST_CASE("nested calls run inline and finish") {
  LimitGuard guard;
  set_thread_limit(4);
  std::vector<int> out(64, 0);
  parallel_for(8, [&](std::size_t i) {
    parallel_for(8, [&](std::size_t j) { out[8 * i + j] = static_cast<int>(i + j); });
  });
  for (std::size_t i = 0; i < 8; ++i)
    for (std::size_t j = 0; j < 8; ++j) CHECK(out[8 * i + j] == static_cast<int>(i + j));
}

TEST_CASE("the lowest-block exception is rethrown") {
  LimitGuard guard;
  set_thread_limit(4);
  auto boom = [&] {
    parallel_for(100, [&](std::size_t i) {
      if (i == 7) throw std::runtime_error("slot-7");
      if (i == 93) throw std::runtime_error("slot-93");
    });
  };
  CHECK_THROWS_WITH_AS(boom(), "slot-7", std::runtime_error);
  // the pool stays usable afterwards
  std::vector<int> out(10, 0);
  parallel_for(10, [&](std::size_t i) { out[i] = 1; });
  for (int v : out) CHECK(v == 1);
}
