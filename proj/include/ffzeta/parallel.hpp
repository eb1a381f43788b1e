#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace ffzeta {

// Deterministic block-parallel evaluation: items [0, n_items) are split into
// consecutive blocks of fixed width, fn(lo, hi) produces one partial result
// per block, and the vector of partials is returned in block order. The
// partition depends only on (n_items, width), never on the thread count, so
// any order-sensitive reduction built on top of it is reproducible across
// schedules.
template <class T, class BlockFn>
std::vector<T> run_blocks(long long n_items, long long width, int threads,
                          BlockFn fn) {
  long long nb = (width > 0 && n_items > 0) ? (n_items + width - 1) / width : 0;
  std::vector<T> out(static_cast<size_t>(nb));
  if (nb == 0) return out;

  int nt = std::max(1, threads);
  nt = static_cast<int>(std::min<long long>(nt, nb));
  std::atomic<long long> next{0};
  std::exception_ptr first_error;
  std::mutex error_mu;

  auto work = [&] {
    for (;;) {
      long long b = next.fetch_add(1);
      if (b >= nb) break;
      long long lo = b * width;
      long long hi = std::min(n_items, lo + width);
      try {
        out[static_cast<size_t>(b)] = fn(lo, hi);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!first_error) first_error = std::current_exception();
        next.store(nb);
        break;
      }
    }
  };

  if (nt == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(nt));
    for (int i = 0; i < nt; ++i) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (first_error) std::rethrow_exception(first_error);
  return out;
}

// Combines partials with a fixed pairwise tree in index order: adjacent
// entries pair up, the odd tail passes through. The tree shape depends only
// on the partial count, so floating-point results are schedule-independent.
template <class T, class Combine>
T tree_combine(std::vector<T> v, Combine combine, T empty_value) {
  if (v.empty()) return empty_value;
  while (v.size() > 1) {
    std::vector<T> up;
    up.reserve((v.size() + 1) / 2);
    for (size_t i = 0; i < v.size(); i += 2) {
      if (i + 1 < v.size())
        up.push_back(combine(v[i], v[i + 1]));
      else
        up.push_back(v[i]);
    }
    v.swap(up);
  }
  return v[0];
}

}  // namespace ffzeta
