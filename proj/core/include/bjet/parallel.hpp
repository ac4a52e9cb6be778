#ifndef BJET_PARALLEL_HPP_
#define BJET_PARALLEL_HPP_

#include <atomic>
#include <complex>
#include <cstdlib>
#include <exception>
#include <functional>
#include <span>
#include <thread>
#include <vector>

namespace bjet {

// Thread count resolution: BERGMAN_JET_THREADS env var, else hardware
// concurrency. Results never depend on the thread count: work items write to
// index-addressed slots and reductions run in a fixed order.
inline int thread_count() {
  if (const char* env = std::getenv("BERGMAN_JET_THREADS")) {
    const int n = std::atoi(env);
    if (n >= 1) return n;
  }
  const unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

// Runs fn(i) for i in [0, n) across threads with contiguous static chunks.
// The first worker exception is rethrown on the calling thread.
inline void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
  const int threads = thread_count();
  if (threads <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  const std::size_t nt = std::min<std::size_t>(static_cast<std::size_t>(threads), n);
  std::vector<std::thread> pool;
  pool.reserve(nt);
  const std::size_t chunk = (n + nt - 1) / nt;
  std::exception_ptr error;
  std::atomic<bool> failed{false};
  for (std::size_t t = 0; t < nt; ++t) {
    const std::size_t lo = t * chunk;
    const std::size_t hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, &fn, &error, &failed] {
      try {
        for (std::size_t i = lo; i < hi; ++i) fn(i);
      } catch (...) {
        if (!failed.exchange(true)) error = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

// Pairwise (cascade) summation over a fixed indexing; deterministic and
// accurate independent of how the terms were produced.
template <typename T>
T pairwise_sum(std::span<const T> terms) {
  const std::size_t n = terms.size();
  if (n == 0) return T{};
  if (n == 1) return terms[0];
  if (n <= 8) {
    T acc = terms[0];
    for (std::size_t i = 1; i < n; ++i) acc += terms[i];
    return acc;
  }
  const std::size_t half = n / 2;
  return pairwise_sum(terms.first(half)) + pairwise_sum(terms.subspan(half));
}

template <typename T>
T pairwise_sum(const std::vector<T>& terms) {
  return pairwise_sum(std::span<const T>(terms));
}

}  // namespace bjet

#endif  // BJET_PARALLEL_HPP_
