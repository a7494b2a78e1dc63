#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "rgfn/excursion.hpp"
#include "rgfn/kernel.hpp"

namespace rgfn {

__extension__ using uint128 = unsigned __int128;

/// Moments of the return time among excursions that came back within `cap`.
struct ReturnTimeSummary {
  double mean = 0.0;
  double variance = 0.0;
  std::uint64_t max_observed = 0;
  double return_fraction = 0.0;
  std::uint64_t cap = 0;
  std::uint64_t excursions = 0;
  std::uint64_t returned = 0;
  /// histogram[k] = number of excursions with return time exactly k, for
  /// k = 0..cap (index 0 is always zero).
  std::vector<std::uint64_t> histogram;

  /// Standard error of the mean return time.
  double mean_stderr() const;
  /// Binomial standard error of return_fraction.
  double fraction_stderr() const;
};

/// Integer accumulator for return times; exact under any merge order.
struct ReturnTimeCounts {
  std::uint64_t returned = 0;
  std::uint64_t sum = 0;
  uint128 sum_sq = 0;
  std::uint64_t max_observed = 0;
  std::vector<std::uint64_t> histogram;

  void add(std::uint64_t sigma);
  void merge(const ReturnTimeCounts& other);
  ReturnTimeSummary summarize(std::uint64_t excursions, std::uint64_t cap) const;
};

/// Simulates excursions from s0 truncated at `cap` steps. Excursion i uses
/// substream (seed, i).
template <SteppableChain Chain>
ReturnTimeSummary return_time_stats(const Chain& chain, std::uint64_t excursions,
                                    std::uint64_t cap, std::uint64_t seed, unsigned workers = 1) {
  if (cap < 1) throw ValidationError("cap must be >= 1");
  ReturnTimeCounts init;
  init.histogram.assign(cap + 1, 0);
  const ReturnTimeCounts total = parallel_reduce(
      excursions, workers, init,
      [&](std::uint64_t i, ReturnTimeCounts& acc) {
        Rng rng = substream(seed, i);
        if (const auto ex = run_excursion(chain, rng, cap)) acc.add(ex->length);
      },
      [](ReturnTimeCounts& into, const ReturnTimeCounts& from) { into.merge(from); });
  return total.summarize(excursions, cap);
}

/// The escape-to-infinity chain on the non-negative integers:
/// P(n, n+1) = exp(-1/(n+1)^2), P(n, 0) = 1 - exp(-1/(n+1)^2).
///
/// Rows are generated on demand; only the per-row return probabilities up to
/// `truncation` are cached for fast stepping. Stepping from a state at or
/// beyond the truncation yields kEscapedState.
class CounterexampleKernel {
 public:
  explicit CounterexampleKernel(std::uint64_t truncation);

  std::uint64_t truncation() const noexcept { return truncation_; }
  std::size_t size() const noexcept { return static_cast<std::size_t>(truncation_); }

  static double advance_prob(std::uint64_t n);
  static double return_prob(std::uint64_t n);
  /// Nonzero entries of row n: {(0, P(n,0)), (n+1, P(n,n+1))}.
  static std::vector<KernelEntry> row(std::uint64_t n);

  StateIndex sample_next(StateIndex from, Rng& rng) const {
    if (from >= truncation_) return kEscapedState;
    return rng.uniform() < return_prob_[from] ? kInitialState : from + 1;
  }

 private:
  std::uint64_t truncation_;
  std::vector<double> return_prob_;
};

CounterexampleKernel build_counterexample_kernel(std::uint64_t truncation);

struct CounterexampleAnalytic {
  /// prob_return_at[n-1] = P(sigma_0 = n), n = 1..n_max.
  std::vector<double> prob_return_at;
  /// prob_return_by[n-1] = P(sigma_0 <= n) = 1 - exp(-sum_{j<=n} 1/j^2).
  std::vector<double> prob_return_by;
  /// 1 - exp(-pi^2 / 6).
  double limit = 0.0;
};

CounterexampleAnalytic counterexample_analytic(std::uint64_t n_max);

}  // namespace rgfn
