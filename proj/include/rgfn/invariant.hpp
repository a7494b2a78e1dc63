#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "rgfn/excursion.hpp"
#include "rgfn/kernel.hpp"

namespace rgfn {

enum class Normalization {
  LambdaS0One,       // value at s0 is 1
  FlowUnnormalized,  // arbitrary positive scale, e.g. a GFlowNet state flow
  EpsIntegralOne,    // sum of epsilon * value is 1
};

/// Nonnegative measure over a finite state space.
class FlowMeasure {
 public:
  FlowMeasure(std::vector<double> values, Normalization normalization);

  std::size_t size() const noexcept { return values_.size(); }
  double operator[](StateIndex s) const { return values_.at(s); }
  const std::vector<double>& values() const noexcept { return values_; }
  Normalization normalization() const noexcept { return normalization_; }

  FlowMeasure scaled(double factor, Normalization normalization) const;
  /// Rescaled so that the value at s0 is 1.
  FlowMeasure normalized_at_initial() const;

 private:
  std::vector<double> values_;
  Normalization normalization_;
};

/// Unique invariant measure with lambda(s0) = 1, from the reduced linear
/// system obtained by fixing coordinate 0. Dense LU up to
/// DiscreteKernel::kDenseLimit states, sparse LU above.
FlowMeasure solve_invariant_exact(const DiscreteKernel& kernel);

struct PowerOptions {
  double tol = 1e-10;
  std::size_t max_iters = 100000;
  std::uint64_t probe_excursions = 1000;
  std::uint64_t probe_seed = 0x5eed;
  std::uint64_t probe_cap = 1000000;
};

/// Period of the chain at s0, as the gcd of return times observed over
/// probe excursions. Always a multiple of the true period.
std::uint64_t detect_period(const DiscreteKernel& kernel, std::uint64_t probes,
                            std::uint64_t seed, std::uint64_t cap);

/// Power iteration from the uniform distribution with Cesaro averaging over
/// the detected period; renormalized to lambda(s0) = 1.
FlowMeasure solve_invariant_power(const DiscreteKernel& kernel, const PowerOptions& options = {});

struct OccupationEstimate {
  FlowMeasure lambda;
  std::vector<double> stderr_;
  std::uint64_t excursions = 0;
};

/// Monte Carlo average of per-excursion visit counts from s0. Excursion i
/// uses substream (seed, i). Throws StepCapExceeded (lowest offending
/// excursion index) if any excursion fails to return within `cap` steps.
template <SteppableChain Chain>
OccupationEstimate estimate_invariant_occupation(const Chain& chain, std::uint64_t excursions,
                                                 std::uint64_t seed, unsigned workers,
                                                 std::uint64_t cap = kDefaultStepCap);

OccupationEstimate estimate_invariant_occupation(const DiscreteKernel& kernel,
                                                 std::uint64_t excursions, std::uint64_t seed,
                                                 unsigned workers = 1,
                                                 std::uint64_t cap = kDefaultStepCap);

/// residual(s') = F(s') - sum_s F(s) P(s, s'). With exempt_initial the entry
/// for s0 is reported as 0 and excluded from max_abs.
std::vector<double> flow_matching_residual(const DiscreteKernel& kernel, const FlowMeasure& flow,
                                           bool exempt_initial);

double max_abs(const std::vector<double>& values);

// ---------------------------------------------------------------------------

template <SteppableChain Chain>
OccupationEstimate estimate_invariant_occupation(const Chain& chain, std::uint64_t excursions,
                                                 std::uint64_t seed, unsigned workers,
                                                 std::uint64_t cap) {
  if (excursions < 1) throw ValidationError("excursions must be >= 1");

  struct Acc {
    std::vector<std::uint64_t> sum;
    std::vector<std::uint64_t> sum_sq;
    std::vector<std::uint64_t> current;
    std::vector<StateIndex> touched;
    std::uint64_t first_capped = UINT64_MAX;
  };
  const std::size_t hint = chain_size_hint(chain);
  Acc init;
  init.sum.assign(hint, 0);
  init.sum_sq.assign(hint, 0);
  init.current.assign(hint, 0);

  Acc total = parallel_reduce(
      excursions, workers, init,
      [&](std::uint64_t i, Acc& acc) {
        Rng rng = substream(seed, i);
        auto visit = [&](StateIndex s) {
          if (s >= acc.current.size()) {
            acc.current.resize(s + 1, 0);
            acc.sum.resize(s + 1, 0);
            acc.sum_sq.resize(s + 1, 0);
          }
          if (acc.current[s]++ == 0) acc.touched.push_back(s);
        };
        const auto length = run_excursion(chain, rng, cap, visit);
        if (!length) {
          acc.first_capped = std::min(acc.first_capped, i);
        }
        for (StateIndex s : acc.touched) {
          const std::uint64_t c = acc.current[s];
          acc.sum[s] += c;
          acc.sum_sq[s] += c * c;
          acc.current[s] = 0;
        }
        acc.touched.clear();
      },
      [](Acc& into, Acc& from) {
        if (from.sum.size() > into.sum.size()) {
          into.sum.resize(from.sum.size(), 0);
          into.sum_sq.resize(from.sum.size(), 0);
        }
        for (std::size_t s = 0; s < from.sum.size(); ++s) {
          into.sum[s] += from.sum[s];
          into.sum_sq[s] += from.sum_sq[s];
        }
        into.first_capped = std::min(into.first_capped, from.first_capped);
      });

  if (total.first_capped != UINT64_MAX) throw StepCapExceeded(total.first_capped, cap);

  const double n = static_cast<double>(excursions);
  std::vector<double> mean(total.sum.size()), se(total.sum.size());
  for (std::size_t s = 0; s < total.sum.size(); ++s) {
    mean[s] = static_cast<double>(total.sum[s]) / n;
    const double second = static_cast<double>(total.sum_sq[s]) / n;
    const double var = excursions > 1 ? std::max(0.0, second - mean[s] * mean[s]) * n / (n - 1.0)
                                      : 0.0;
    se[s] = std::sqrt(var / n);
  }
  return OccupationEstimate{FlowMeasure(std::move(mean), Normalization::LambdaS0One),
                            std::move(se), excursions};
}

}  // namespace rgfn
