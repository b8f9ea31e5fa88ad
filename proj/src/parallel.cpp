#include "slipball/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string_view>
#include <thread>
#include <vector>

namespace slipball {

namespace {

std::atomic<std::size_t> g_thread_cap{0};

std::size_t env_thread_cap() {
  const char* raw = std::getenv("SLIPBALL_THREADS");
  if (raw == nullptr) return 0;
  const std::string_view text(raw);
  std::size_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) return 0;
  return value;
}

}  // namespace

std::size_t worker_count() {
  if (const std::size_t cap = g_thread_cap.load(); cap > 0) return cap;
  if (const std::size_t cap = env_thread_cap(); cap > 0) return cap;
  return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

void set_thread_cap(std::size_t cap) { g_thread_cap.store(cap); }

void for_each_row(std::size_t rows, const std::function<void(std::size_t)>& fn) {
  const std::size_t workers = std::min(worker_count(), rows);
  if (workers <= 1) {
    for (std::size_t row = 0; row < rows; ++row) fn(row);
    return;
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (std::size_t row = next++; row < rows; row = next++) {
      try {
        fn(row);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = rows;
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t i = 0; i < workers; ++i) pool.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace slipball
