#pragma once

// Index-parallel grid evaluation. Results are written by index, so output
// is identical for any thread count.

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace deltachain::detail {

/// Worker count from DELTACHAIN_THREADS, else the hardware concurrency.
inline unsigned worker_count() {
  if (const char* env = std::getenv("DELTACHAIN_THREADS")) {
    try {
      const long n = std::stol(env);
      if (n >= 1) return static_cast<unsigned>(std::min(n, 256L));
    } catch (const std::exception&) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

template <class T, class Fn>
std::vector<T> parallel_map(const std::vector<double>& inputs, Fn fn) {
  std::vector<T> out(inputs.size());
  const std::size_t n = inputs.size();
  const unsigned workers = static_cast<unsigned>(
      std::min<std::size_t>(worker_count(), std::max<std::size_t>(1, n / 2048)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) out[i] = fn(inputs[i]);
    return out;
  }
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> threads;
  threads.reserve(workers);
  const std::size_t chunk = (n + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    const std::size_t begin = w * chunk;
    const std::size_t end = std::min(n, begin + chunk);
    threads.emplace_back([&, begin, end] {
      try {
        for (std::size_t i = begin; i < end; ++i) out[i] = fn(inputs[i]);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  if (failure) std::rethrow_exception(failure);
  return out;
}

}  // namespace deltachain::detail
