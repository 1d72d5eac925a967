#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace fractal {

enum class Execution { sequential, parallel };

namespace detail {

/// Runs body(k) for k in [0, count), statically partitioned into contiguous
/// blocks. Callers only write to disjoint slots, so results never depend on
/// the thread count.
template <class Body>
void parallel_for(std::size_t count, Execution ex, Body&& body) {
  std::size_t threads = 1;
  if (ex == Execution::parallel && count >= 64) {
    threads = std::min<std::size_t>(std::max(1U, std::thread::hardware_concurrency()), count / 32);
  }
  if (threads <= 1) {
    for (std::size_t k = 0; k < count; ++k) body(k);
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(threads);
  const std::size_t block = (count + threads - 1) / threads;
  for (std::size_t t = 0; t < threads; ++t) {
    const std::size_t begin = t * block;
    const std::size_t end = std::min(count, begin + block);
    if (begin >= end) break;
    pool.emplace_back([begin, end, &body] {
      for (std::size_t k = begin; k < end; ++k) body(k);
    });
  }
}

/// Classic Kahan compensated summation.
class KahanSum {
 public:
  void add(double x) {
    const double y = x - c_;
    const double t = sum_ + y;
    c_ = (t - sum_) - y;
    sum_ = t;
  }
  double value() const { return sum_; }

 private:
  double sum_ = 0.0;
  double c_ = 0.0;
};

}  // namespace detail
}  // namespace fractal
