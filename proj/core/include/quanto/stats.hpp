#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <thread>
#include <vector>

namespace quanto {

/// Mean and sum of squared deviations, mergeable (Chan et al.).
struct RunningStats {
  std::size_t count = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) {
    ++count;
    const double delta = x - mean;
    mean += delta / static_cast<double>(count);
    m2 += delta * (x - mean);
  }

  void merge(const RunningStats& o) {
    if (o.count == 0) return;
    if (count == 0) {
      *this = o;
      return;
    }
    const double n = static_cast<double>(count + o.count);
    const double delta = o.mean - mean;
    mean += delta * static_cast<double>(o.count) / n;
    m2 += o.m2 + delta * delta * static_cast<double>(count) * static_cast<double>(o.count) / n;
    count += o.count;
  }

  double variance() const { return count > 1 ? m2 / static_cast<double>(count - 1) : 0.0; }
  double std_error() const {
    return count > 0 ? std::sqrt(variance() / static_cast<double>(count)) : 0.0;
  }
};

/// Units per work block. Fixed so the reduction tree never depends on the
/// thread count.
inline constexpr std::size_t kReductionBlock = 8192;

inline unsigned resolve_threads(unsigned requested) {
  if (requested != 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Evaluates fn(begin, end) -> Acc on fixed blocks of [0, units) and merges
/// the partial results in block order.
template <class Acc, class Fn>
Acc reduce_blocks(std::size_t units, unsigned threads, Fn&& fn) {
  const std::size_t blocks = (units + kReductionBlock - 1) / kReductionBlock;
  std::vector<Acc> partial(blocks);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t b = next.fetch_add(1); b < blocks; b = next.fetch_add(1)) {
      const std::size_t begin = b * kReductionBlock;
      partial[b] = fn(begin, std::min(units, begin + kReductionBlock));
    }
  };
  const unsigned n_threads =
      static_cast<unsigned>(std::min<std::size_t>(resolve_threads(threads), blocks));
  if (n_threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(n_threads);
    for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(worker);
  }
  Acc total{};
  for (const auto& p : partial) total.merge(p);
  return total;
}

}  // namespace quanto
