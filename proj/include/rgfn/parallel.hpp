#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

namespace rgfn {

/// Worker count from the RGFN_WORKERS environment variable, or 1.
unsigned default_workers();

/// Runs body(i, local) for i in [0, n) across `workers` threads, each with
/// its own accumulator copied from `init`, then folds the per-worker
/// accumulators with merge(total, local) in worker order. Results are
/// worker-count invariant whenever merge is exact (integer counts) or the
/// body only writes to slot i of a preallocated buffer.
template <class Acc, class Body, class Merge>
Acc parallel_reduce(std::uint64_t n, unsigned workers, const Acc& init, Body body,
                    Merge merge) {
  workers = std::max(1u, workers);
  if (workers == 1 || n < 2) {
    Acc acc = init;
    for (std::uint64_t i = 0; i < n; ++i) body(i, acc);
    return acc;
  }
  const auto w = static_cast<std::uint64_t>(std::min<std::uint64_t>(workers, n));
  std::vector<Acc> locals(w, init);
  std::vector<std::exception_ptr> errors(w);
  std::vector<std::thread> threads;
  threads.reserve(w);
  for (std::uint64_t t = 0; t < w; ++t) {
    const std::uint64_t lo = n * t / w;
    const std::uint64_t hi = n * (t + 1) / w;
    threads.emplace_back([&, t, lo, hi] {
      try {
        for (std::uint64_t i = lo; i < hi; ++i) body(i, locals[t]);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : threads) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  Acc total = init;
  for (auto& local : locals) merge(total, local);
  return total;
}

template <class Body>
void parallel_for(std::uint64_t n, unsigned workers, Body body) {
  struct Empty {};
  parallel_reduce(
      n, workers, Empty{}, [&](std::uint64_t i, Empty&) { body(i); },
      [](Empty&, Empty&) {});
}

}  // namespace rgfn
