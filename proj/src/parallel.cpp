#include "susy/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace susy::parallel {

namespace {

unsigned from_env() {
  unsigned n = 0;
  if (const char* v = std::getenv("SUSY_PAULI_THREADS")) {
    try {
      n = static_cast<unsigned>(std::stoul(v));
    } catch (...) {
      n = 0;
    }
  }
  if (n == 0) n = std::max(1u, std::thread::hardware_concurrency());
  return n;
}

std::atomic<unsigned>& width() {
  static std::atomic<unsigned> w{from_env()};
  return w;
}

}  // namespace

unsigned thread_count() { return width().load(); }

void set_thread_count(unsigned n) {
  width().store(n == 0 ? std::max(1u, std::thread::hardware_concurrency()) : n);
}

void for_rows(int rows, const std::function<void(int)>& body) {
  const unsigned workers = std::min<unsigned>(thread_count(), static_cast<unsigned>(std::max(rows, 1)));
  if (workers <= 1 || rows < 32) {
    for (int r = 0; r < rows; ++r) body(r);
    return;
  }
  std::exception_ptr failure;
  std::mutex failure_lock;
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    const int block = (rows + static_cast<int>(workers) - 1) / static_cast<int>(workers);
    for (unsigned w = 0; w < workers; ++w) {
      const int lo = static_cast<int>(w) * block;
      const int hi = std::min(rows, lo + block);
      if (lo >= hi) break;
      pool.emplace_back([lo, hi, &body, &failure, &failure_lock] {
        try {
          for (int r = lo; r < hi; ++r) body(r);
        } catch (...) {
          std::lock_guard lock(failure_lock);
          if (!failure) failure = std::current_exception();
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace susy::parallel
